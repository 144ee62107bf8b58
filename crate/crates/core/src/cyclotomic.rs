//! The ring `O_p = Z[2cos(π/p)]`, written in the basis of quantum integers
//! `[m]_q = (q^m - q^-m)/(q - q^-1)` with `q = e^{iπ/p}` and
//! `1 ≤ m ≤ (p-1)/2` (a single basis element `[1]_q = 1` when `p ≤ 3`).
//!
//! Equality is always decided on coefficients. Real values are only ever
//! produced as rigorous rational intervals (see [`CycNum::numeric_eval`]),
//! which is what ordering comparisons use.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{check_prime, Error, Result};

/// Default working precision (bits) for interval comparisons.
pub const DEFAULT_PRECISION: u32 = 128;

/// Number of basis elements `[1]_q .. [len]_q` of `O_p`.
pub fn basis_len(p: u32) -> usize {
    (((p as usize).saturating_sub(1)) / 2).max(1)
}

/// Reduces `[k]_q` to `sign * [m]_q` with `m` a basis index, or `None` when
/// `[k]_q = 0`. Uses `[k+p] = -[k]`, `[p-m] = [m]`, `[-m] = -[m]`.
pub fn reduce_index(p: u32, k: i64) -> Option<(usize, i32)> {
    let p = p as i64;
    let mut r = k.rem_euclid(2 * p);
    let mut sign = 1;
    if r >= p {
        r -= p;
        sign = -1;
    }
    if r == 0 {
        return None;
    }
    let m = if r <= (p - 1) / 2 { r } else { p - r };
    Some((m as usize, sign))
}

/// An element of `O_p`; `coeffs[m-1]` is the coefficient of `[m]_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycNum {
    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::zero_unchecked(p))
    }

    pub(crate) fn zero_unchecked(p: u32) -> Self {
        CycNum { p, coeffs: vec![BigInt::zero(); basis_len(p)] }
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: u32, n: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = n.into();
        Ok(z)
    }

    /// Builds an element from basis coefficients; the length must be [`basis_len`].
    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        check_prime(p)?;
        if coeffs.len() != basis_len(p) {
            return Err(Error::InvalidArgument(format!(
                "O_{p} has rank {}, got {} coefficients",
                basis_len(p),
                coeffs.len()
            )));
        }
        Ok(CycNum { p, coeffs })
    }

    pub fn from_i64s(p: u32, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(p, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &BigInt {
        &self.coeffs[m - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every coefficient outside `[1]_q` vanishes.
    pub fn is_integer(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Parses the [`Display`](fmt::Display) form: a signed sum of terms `c`,
    /// `c*[k]` or `[k]`, where `[k]` is the quantum integer for any `k`.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        check_prime(p)?;
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty cyclotomic number".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            // a sign opens a new term unless it follows '[' (as in "[-3]")
            if i > 0 && (ch == '+' || ch == '-') && !compact[..i].ends_with('[') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let bad = |t: &str| Error::Parse(format!("bad term {t:?} in {s:?}"));
        let mut total = CycNum::zero(p)?;
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, index) = match body.split_once('[') {
                Some((c, rest)) => {
                    let k = rest.strip_suffix(']').ok_or_else(|| bad(term))?;
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let c = if c.is_empty() { BigInt::one() } else { c.parse::<BigInt>().map_err(|_| bad(term))? };
                    (c, k.parse::<i64>().map_err(|_| bad(term))?)
                }
                None => (body.parse::<BigInt>().map_err(|_| bad(term))?, 1),
            };
            let coef = if negative { -coef } else { coef };
            total += &qint(p, index)?.scale(&coef);
        }
        Ok(total)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, other: &CycNum) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    fn add_basis(&mut self, k: i64, c: &BigInt) {
        if let Some((m, s)) = reduce_index(self.p, k) {
            if s > 0 {
                self.coeffs[m - 1] += c;
            } else {
                self.coeffs[m - 1] -= c;
            }
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNum { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycNum { p: self.p, coeffs })
    }

    /// Ring product via `[a][b] = Σ_{k=|a-b|+1, step 2}^{a+b-1} [k]` and index reduction.
    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        let mut out = CycNum::zero_unchecked(self.p);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                let (x, y) = (i as i64 + 1, j as i64 + 1);
                let mut k = (x - y).abs() + 1;
                while k < x + y {
                    out.add_basis(k, &ab);
                    k += 2;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> CycNum {
        CycNum { p: self.p, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum { p: self.p, coeffs: CycNum::one(self.p).unwrap().coeffs };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `self` in the `[m]_q` basis (column `m` is `self·[m]_q`).
    fn mul_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = basis_len(self.p);
        let mut cols = Vec::with_capacity(n);
        for m in 1..=n {
            let basis = qint_unchecked(self.p, m as i64);
            cols.push((self * &basis).coeffs);
        }
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// Exact quotient `self / divisor`, failing if it does not lie in `O_p`.
    pub fn exact_div(&self, divisor: &CycNum) -> Result<CycNum> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = basis_len(self.p);
        let m = divisor.mul_matrix();
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    m[r].iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.push(BigRational::from_integer(self.coeffs[r].clone()));
                row
            })
            .collect();
        // multiplication by a nonzero element of a field is invertible
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    let pivot_row = aug[col].clone();
                    for (x, v) in aug[r].iter_mut().zip(&pivot_row).skip(col) {
                        *x -= v * &f;
                    }
                }
            }
        }
        let mut coeffs = Vec::with_capacity(n);
        for row in &aug {
            let v = &row[n];
            if !v.is_integer() {
                return Err(Error::NotDivisible);
            }
            coeffs.push(v.to_integer());
        }
        Ok(CycNum { p: self.p, coeffs })
    }

    /// Applies the Galois automorphism `q ↦ q^a` of `Q(e^{iπ/p})`, `gcd(a, 2p) = 1`.
    pub fn galois_conjugate(&self, a: i64) -> Result<CycNum> {
        if a.gcd(&(2 * self.p as i64)) != 1 {
            return Err(Error::InvalidArgument(format!(
                "{a} is not coprime to 2p = {}",
                2 * self.p
            )));
        }
        let mut out = CycNum::zero_unchecked(self.p);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = qint_at_power(self.p, i as i64 + 1, a)?;
            out = &out + &t.scale(c);
        }
        Ok(out)
    }

    /// Integer polynomial `P` with `P(2cos(π/p)) = self`, lowest degree first.
    fn as_polynomial(&self) -> Vec<BigInt> {
        // [m]_q = U_{m-1}(x/2) with u_{m+1} = x u_m - u_{m-1}, u_0 = 0, u_1 = 1
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        let mut prev: Vec<BigInt> = vec![];
        let mut cur: Vec<BigInt> = vec![BigInt::one()];
        for c in &self.coeffs {
            for (k, u) in cur.iter().enumerate() {
                out[k] += c * u;
            }
            let mut next = vec![BigInt::zero(); cur.len() + 1];
            for (k, u) in cur.iter().enumerate() {
                next[k + 1] += u;
            }
            for (k, u) in prev.iter().enumerate() {
                next[k] -= u;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }

    /// Rational interval enclosing the real value of `self`; width at most
    /// `2^(1-precision) · (1 + |self|)`.
    pub fn numeric_eval(&self, precision: u32) -> Interval {
        let precision = precision.max(32);
        let poly = self.as_polynomial();
        if self.p <= 3 || poly.iter().skip(1).all(Zero::is_zero) {
            let v = BigRational::from_integer(
                if self.p == 2 { self.coeffs[0].clone() } else { poly.iter().sum() },
            );
            return Interval { lo: v.clone(), hi: v };
        }
        // |P'(x)| ≤ B on [-2, 2]
        let mut bound = BigInt::zero();
        for (k, c) in poly.iter().enumerate().skip(1) {
            bound += c.abs() * BigInt::from(k) * (BigInt::one() << (k - 1));
        }
        let bits = precision + bound.bits() as u32 + 3;
        let (lo, hi) = two_cos_pi_over(self.p, bits);
        let two = BigRational::from_integer(2.into());
        let mid = (&lo + &hi) / &two;
        let radius = (&hi - &lo) / &two * BigRational::from_integer(bound);
        let centre = eval_poly(&poly, &mid);
        let scale = BigInt::one() << (precision + 2);
        let down = |x: BigRational| {
            BigRational::new((x * BigRational::from_integer(scale.clone())).floor().to_integer(), scale.clone())
        };
        let up = |x: BigRational| {
            BigRational::new((x * BigRational::from_integer(scale.clone())).ceil().to_integer(), scale.clone())
        };
        Interval { lo: down(&centre - &radius), hi: up(&centre + &radius) }
    }

    pub fn to_f64(&self) -> f64 {
        self.numeric_eval(64).midpoint()
    }

    /// Sign of the real value; exact for zero, otherwise by refining intervals.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut prec = DEFAULT_PRECISION;
        loop {
            let iv = self.numeric_eval(prec);
            if iv.lo.is_positive() {
                return Ordering::Greater;
            }
            if iv.hi.is_negative() {
                return Ordering::Less;
            }
            prec *= 2;
        }
    }

    /// Compares real values. Panics on mismatched `p`.
    pub fn cmp_real(&self, other: &CycNum) -> Ordering {
        (self - other).signum()
    }
}

fn eval_poly(poly: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in poly.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

type Bracket = (BigRational, BigRational);

/// Rational bracket `[lo, hi]` of width ≤ `2^-bits` around `2cos(π/p)`, `p ≥ 5`.
fn two_cos_pi_over(p: u32, bits: u32) -> Bracket {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Bracket>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(p, bits)) {
        return hit.clone();
    }
    // [p]_q as a polynomial in x; its largest root is 2cos(π/p)
    let mut prev = vec![BigInt::zero()];
    let mut cur = vec![BigInt::one()];
    for _ in 1..p {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (k, u) in cur.iter().enumerate() {
            next[k + 1] += u;
        }
        for (k, u) in prev.iter().enumerate() {
            next[k] -= u;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    let pf = p as f64;
    let guess = (2.0 * (std::f64::consts::PI / pf).cos() + 2.0 * (2.0 * std::f64::consts::PI / pf).cos()) / 2.0;
    let mut lo = BigRational::from_float(guess).expect("finite");
    let mut hi = BigRational::from_integer(2.into());
    assert!(eval_poly(&cur, &lo).is_negative() && eval_poly(&cur, &hi).is_positive());
    let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if eval_poly(&cur, &mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    cache.lock().unwrap().insert((p, bits), (lo.clone(), hi.clone()));
    (lo, hi)
}

fn qint_unchecked(p: u32, k: i64) -> CycNum {
    let mut z = CycNum::zero_unchecked(p);
    z.add_basis(k, &BigInt::one());
    z
}

/// The quantum integer `[k]_q` reduced to the basis of `O_p`.
pub fn qint(p: u32, k: i64) -> Result<CycNum> {
    check_prime(p)?;
    Ok(qint_unchecked(p, k))
}

/// `[k]_{q^a} = [ak]_q / [a]_q`; requires `[a]_q ≠ 0`, i.e. `p ∤ a`.
pub fn qint_at_power(p: u32, k: i64, a: i64) -> Result<CycNum> {
    check_prime(p)?;
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidArgument(format!("[{a}]_q vanishes for p = {p}")));
    }
    qint_unchecked(p, a * k).exact_div(&qint_unchecked(p, a))
}

/// Closed rational interval with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        match BigRational::from_float(x) {
            Some(x) => self.lo <= x && x <= self.hi,
            None => false,
        }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo_f64(), self.hi_f64())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("operands must share the same p")
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        assert_eq!(self.p, rhs.p, "operands must share the same p");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    /// `a1 + a2*[2] + ...`; the `[1]` term is printed as a bare integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if i == 0 { c.abs().to_string() } else { format!("{}*[{}]", c.abs(), i + 1) };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(p={}, {})", self.p, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    p: u32,
    coeffs: Vec<serde_json::Value>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        CycNumRepr { p: self.p, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycNumRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => {
                    n.as_i64().map(BigInt::from).ok_or_else(|| D::Error::custom("non-integral coefficient"))
                }
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(D::Error::custom),
                _ => Err(D::Error::custom("coefficient must be an integer")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycNum::from_coeffs(repr.p, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_f64(p: u32, k: i64) -> f64 {
        let t = std::f64::consts::PI / p as f64;
        (k as f64 * t).sin() / t.sin()
    }

    fn approx(x: &CycNum) -> f64 {
        x.numeric_eval(64).midpoint()
    }

    fn c(p: u32, v: &[i64]) -> CycNum {
        CycNum::from_i64s(p, v).unwrap()
    }

    #[test]
    fn parse_inverts_display() {
        for p in [2u32, 3, 5, 7, 11] {
            for coeffs in [vec![0i64], vec![1], vec![-3, 2, 0, 5], vec![0, -1, 4], vec![7, 0, 0, 0, -2]] {
                let n = basis_len(p);
                let mut c = coeffs.clone();
                c.resize(n.max(c.len()), 0);
                c.truncate(n);
                let x = CycNum::from_i64s(p, &c).unwrap();
                assert_eq!(CycNum::parse(p, &x.to_string()).unwrap(), x, "p={p} {x}");
            }
        }
        assert_eq!(CycNum::parse(7, "[4]").unwrap(), qint(7, 3).unwrap());
        assert_eq!(CycNum::parse(5, "2*[2] - 1").unwrap(), CycNum::from_i64s(5, &[-1, 2]).unwrap());
        assert!(CycNum::parse(5, "2*[x]").is_err());
        assert!(CycNum::parse(5, "").is_err());
    }

    #[test]
    fn qint_examples() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let two = qint(5, 2).unwrap();
        assert_eq!(two, c(5, &[0, 1]));
        assert!(two.numeric_eval(128).contains_f64(golden) || (approx(&two) - golden).abs() < 1e-15);
        assert!(qint(7, 7).unwrap().is_zero());
        assert_eq!(qint(5, 4).unwrap(), c(5, &[1, 0]));
        assert!(qint(4, 1).is_err());
    }

    #[test]
    fn index_reduction() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            assert!(qint(p, p as i64).unwrap().is_zero());
            assert!(qint(p, 0).unwrap().is_zero());
            for m in 1..p as i64 {
                let x = qint(p, m).unwrap();
                assert_eq!(qint(p, p as i64 + m).unwrap(), -&x);
                assert_eq!(qint(p, p as i64 - m).unwrap(), x);
                assert_eq!(qint(p, -m).unwrap(), -&x);
                assert!((approx(&x) - q_f64(p, m)).abs() < 1e-9, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn mul_examples() {
        let two = qint(7, 2).unwrap();
        assert_eq!(&two * &two, c(7, &[1, 0, 1]));
        let lhs = q_f64(7, 2).powi(2);
        assert!((lhs - (1.0 + q_f64(7, 3))).abs() < 1e-12);
        let four = qint(5, 4).unwrap();
        assert_eq!(&four * &four, c(5, &[1, 0]));
        let x = c(11, &[3, -2, 0, 7, 1]);
        assert_eq!(&CycNum::one(11).unwrap() * &x, x);
        assert!(two.checked_mul(&qint(5, 2).unwrap()).is_err());
    }

    #[test]
    fn division_examples() {
        // [4]/[2] at p = 7 is [2]_{q^2} = 2cos(2π/7) = [3] - [1]
        let q = qint(7, 4).unwrap().exact_div(&qint(7, 2).unwrap()).unwrap();
        assert_eq!(q, c(7, &[-1, 0, 1]));
        let oracle = (4.0 * std::f64::consts::PI / 7.0).sin() / (2.0 * std::f64::consts::PI / 7.0).sin();
        assert!((approx(&q) - oracle).abs() < 1e-12);
        let x = c(7, &[2, -1, 5]);
        assert_eq!(x.exact_div(&CycNum::one(7).unwrap()).unwrap(), x);
        assert_eq!(qint(7, 2).unwrap().exact_div(&qint(7, 2).unwrap()).unwrap(), CycNum::one(7).unwrap());
        assert_eq!(x.exact_div(&CycNum::zero(7).unwrap()), Err(Error::DivisionByZero));
        // 1/2 is not in O_5
        let two = CycNum::from_integer(5, 2).unwrap();
        assert_eq!(CycNum::one(5).unwrap().exact_div(&two), Err(Error::NotDivisible));
    }

    #[test]
    fn qint_at_power_examples() {
        // [2]_{q^2} at p = 5: sin(4π/5)/sin(2π/5) = 1/φ = [2] - [1]
        let v = qint_at_power(5, 2, 2).unwrap();
        assert_eq!(v, c(5, &[-1, 1]));
        let oracle = (4.0 * std::f64::consts::PI / 5.0).sin() / (2.0 * std::f64::consts::PI / 5.0).sin();
        assert!((approx(&v) - oracle).abs() < 1e-12);
        // [3]_{q^3} at p = 5: sin(9π/5)/sin(3π/5) = -1/φ
        let w = qint_at_power(5, 3, 3).unwrap();
        assert_eq!(w, c(5, &[1, -1]));
        let oracle = (9.0 * std::f64::consts::PI / 5.0).sin() / (3.0 * std::f64::consts::PI / 5.0).sin();
        assert!((approx(&w) - oracle).abs() < 1e-12);
        for p in [3u32, 5, 7, 11] {
            for a in 1..(2 * p as i64) {
                if a % p as i64 != 0 {
                    assert_eq!(qint_at_power(p, 1, a).unwrap(), CycNum::one(p).unwrap());
                }
            }
        }
        assert!(qint_at_power(5, 2, 5).is_err());
    }

    #[test]
    fn numeric_examples() {
        let iv = qint(5, 2).unwrap().numeric_eval(128);
        assert!(iv.contains_f64(1.618033988749895) || (iv.midpoint() - 1.6180339887).abs() < 1e-10);
        assert!(iv.lo < iv.hi);
        let z = CycNum::zero(7).unwrap().numeric_eval(128);
        assert!(z.lo.is_zero() && z.hi.is_zero());
        let iv = qint(7, 2).unwrap().numeric_eval(128);
        assert!((iv.midpoint() - 1.8019377358).abs() < 1e-10);
        // width bound 2^(1-prec)(1+|a|)
        let a = c(13, &[5, -3, 7, 0, 2, -9]);
        for prec in [32u32, 64, 128] {
            let iv = a.numeric_eval(prec);
            let bound = BigRational::new(BigInt::one(), BigInt::one() << (prec - 1))
                * BigRational::from_float(1.0 + approx(&a).abs() + 1.0).unwrap();
            assert!(iv.width() <= bound);
        }
    }

    #[test]
    fn text_and_json() {
        assert_eq!(CycNum::one(5).unwrap().to_string(), "1");
        assert_eq!(c(7, &[1, 0, -2]).to_string(), "1 - 2*[3]");
        assert_eq!(CycNum::zero(7).unwrap().to_string(), "0");
        let x = c(7, &[3, -1, 4]);
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"p":7,"coeffs":[3,-1,4]}"#);
        assert_eq!(serde_json::from_str::<CycNum>(&js).unwrap(), x);
        let huge = CycNum::from_integer(5, BigInt::one() << 100).unwrap();
        let back: CycNum = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }

    #[test]
    fn galois_twist_of_q_squared() {
        // g with g(q^2) = -q sends [k]_{q^2} to (-1)^{k-1}[k]_q
        for p in [3u32, 5, 7, 11, 13] {
            let half = (p as i64 + 1) / 2;
            let a = if half % 2 == 1 { half } else { half + p as i64 };
            for k in 1..p as i64 {
                let twisted = qint_at_power(p, k, 2).unwrap().galois_conjugate(a).unwrap();
                let expected = if k % 2 == 1 { qint(p, k).unwrap() } else { -qint(p, k).unwrap() };
                assert_eq!(twisted, expected, "p={p} k={k}");
            }
        }
    }

    fn arb_cyc(p: u32) -> impl Strategy<Value = CycNum> {
        prop::collection::vec(-20i64..20, basis_len(p)).prop_map(move |v| CycNum::from_i64s(p, &v).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
        prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]).prop_flat_map(|p| (arb_cyc(p), arb_cyc(p), arb_cyc(p)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn product_matches_sines(p in prop::sample::select(vec![5u32, 7, 11, 13]), a in 1i64..30, b in 1i64..30) {
            let prod = &qint(p, a).unwrap() * &qint(p, b).unwrap();
            let iv = prod.numeric_eval(128);
            let t = std::f64::consts::PI / p as f64;
            let oracle = (a as f64 * t).sin() * (b as f64 * t).sin() / t.sin().powi(2);
            prop_assert!((iv.midpoint() - oracle).abs() < 1e-9);
        }

        #[test]
        fn division_inverts_product((a, b, _) in arb_triple()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&a).unwrap(), b);
        }

        #[test]
        fn integrality_matches_numeric_value(p in prop::sample::select(vec![5u32, 7, 11, 13]),
                                            ks in prop::collection::vec((-4i64..5, 1i64..40), 1..6)) {
            let mut x = CycNum::zero(p).unwrap();
            for (c, k) in ks {
                x = &x + &qint(p, k).unwrap().scale(&BigInt::from(c));
            }
            let v = x.numeric_eval(128).midpoint();
            prop_assert_eq!(x.is_integer(), (v - v.round()).abs() < 1e-9);
        }

        #[test]
        fn nonnegative_combinations_are_nonnegative(p in prop::sample::select(vec![5u32, 7, 11, 13]),
                                                   v in prop::collection::vec(0i64..50, 6)) {
            let x = CycNum::from_i64s(p, &v[..basis_len(p)]).unwrap();
            prop_assert!(x.signum() != Ordering::Less);
        }
    }
}
