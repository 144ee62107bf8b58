use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates `p` as a prime usable as a characteristic.
pub fn check_prime(p: u32) -> Result<u32> {
    if is_prime(p as u64) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p as u64))
    }
}
