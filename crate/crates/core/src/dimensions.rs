//! Dimension invariants: length `ℓ`, growth dimension `gd`, symmetric-group
//! dimension `sd`, alternating dimension `ad`, the growth rate `δ` of tensor
//! powers in `Rep C_p`, and the p-adic dimension built from alternating powers.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{basis_len, qint, CycNum};
use crate::fusion::{cat_dim_mod_p, fpdim, tensor_power_length, VerObject};
use crate::modrep::gf::{Field, Matrix};
use crate::modrep::{alt_power_ver, alt_power_ver_by_summands, power_space, skew_image, CyclicRep, JordanType};
use crate::{check_prime, Error, Result};

/// The multiplicities `m_1, …, m_{p-1}` of the non-projective Jordan blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanContent {
    pub p: u32,
    pub m: Vec<u64>,
}

/// Digits `t_0, t_1, …` of a p-adic dimension, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicDim {
    pub p: u32,
    pub digits: Vec<u32>,
}

impl PadicDim {
    /// `Σ t_k p^k`.
    pub fn value(&self) -> BigInt {
        self.digits.iter().rev().fold(BigInt::zero(), |acc, &t| acc * self.p + t)
    }
}

/// `ℓ(X)`: the number of simple summands.
pub fn length(x: &VerObject) -> u64 {
    x.length()
}

/// `ad(X)`: the largest `n` with `A^n X ≠ 0`, or `None` for the zero object.
///
/// `A^n X` vanishes for `n > dim X^♯` because `a_n` factors through the
/// exterior power of the lift, so the scan runs downward from there.
pub fn ad(x: &VerObject, cap: usize) -> Result<Option<u64>> {
    if x.is_zero() {
        return Ok(None);
    }
    let top = ad_upper_bound(x) as usize;
    for n in (1..=top).rev() {
        if !alt_power_ver(x, n, cap)?.is_zero() {
            return Ok(Some(n as u64));
        }
    }
    Err(Error::Inconsistent("A^1 X vanished for a nonzero X".into()))
}

/// `ad(X)` through [`alt_power_ver_by_summands`], for objects whose lift is
/// too large for [`ad`].
pub fn ad_by_summands(x: &VerObject, cap: usize) -> Result<Option<u64>> {
    if x.is_zero() {
        return Ok(None);
    }
    for n in (1..=ad_upper_bound(x) as usize).rev() {
        if !alt_power_ver_by_summands(x, n, cap)?.is_zero() {
            return Ok(Some(n as u64));
        }
    }
    Err(Error::Inconsistent("A^1 X vanished for a nonzero X".into()))
}

/// The certified bound `ad(X) ≤ dim X^♯`.
pub fn ad_upper_bound(x: &VerObject) -> u64 {
    x.lift_dim()
}

/// `ad` in `Rep C_p`: the largest `n` with `A^n V ≠ 0`, `None` for `V = 0`.
pub fn ad_rep(v: &CyclicRep, cap: usize) -> Result<Option<u64>> {
    if v.dim() == 0 {
        return Ok(None);
    }
    for n in (1..=v.dim()).rev() {
        if skew_image(v, n, cap)?.dim() > 0 {
            return Ok(Some(n as u64));
        }
    }
    Err(Error::Inconsistent("A^1 V vanished for a nonzero V".into()))
}

/// `gd(X) = FPdim(X)`.
pub fn gd(x: &VerObject) -> CycNum {
    fpdim(x)
}

/// `ℓ(X^{⊗n})^{1/n}` for `n = 1..=n_max`, which converges to `gd(X)`.
pub fn gd_empirical(x: &VerObject, n_max: u32) -> Vec<f64> {
    (1..=n_max)
        .map(|n| {
            let len = tensor_power_length(x, n);
            let bits = len.bits();
            // scale down before converting so huge lengths stay finite
            let shift = bits.saturating_sub(900);
            let mantissa = (&len >> shift).to_f64().unwrap_or(f64::INFINITY);
            ((mantissa.ln() + shift as f64 * std::f64::consts::LN_2) / n as f64).exp()
        })
        .collect()
}

/// Whether `k S_n → End(V^{⊗n})` is injective, i.e. whether `sd(V) ≥ n`:
/// the `n!` permutation operators, flattened to vectors, must be independent.
pub fn sd_at_least(v: &CyclicRep, n: usize, cap: usize) -> Result<bool> {
    if n > 8 {
        return Err(Error::InvalidArgument("sd_at_least supports n ≤ 8".into()));
    }
    let d = v.dim();
    crate::modrep::check_cap((d as u128).saturating_pow(2 * n as u32), cap)?;
    if n == 0 {
        return Ok(true);
    }
    let space = power_space(&CyclicRep::trivial(v.p(), d)?, n, cap)?;
    let dim = d.pow(n as u32);
    let mut rows = Vec::new();
    crate::modrep::for_each_permutation(n, |perm, _| {
        let mut row = vec![0u8; dim * dim];
        for i in 0..dim {
            row[space.permute_index(perm, i) * dim + i] = 1;
        }
        rows.push(row);
    });
    let count = rows.len();
    let m = Matrix::from_rows(rows, dim * dim)?;
    Ok(m.rank(&Field::new(v.p())?) == count)
}

/// The multiplicities `m_k` of `J_k`, `k < p`.
pub fn delta_content(t: &JordanType) -> JordanContent {
    let p = t.p();
    JordanContent { p, m: t.blocks()[..p as usize - 1].to_vec() }
}

/// `δ(V) = Σ_{k<p} m_k [k]_q`: the growth rate of non-projective summands of `V^{⊗n}`.
pub fn delta(t: &JordanType) -> CycNum {
    let p = t.p();
    let mut d = CycNum::zero(p).expect("valid p");
    for (k, &m) in delta_content(t).m.iter().enumerate() {
        if m > 0 {
            d += &qint(p, k as i64 + 1).expect("valid p").scale(&BigInt::from(m));
        }
    }
    d
}

/// An odd `a` with `q^{2a} = -q`, i.e. `a ≡ (p+1)/2 mod p`.
pub fn q_squared_twist(p: u32) -> i64 {
    let half = (p as i64 + 1) / 2;
    if half % 2 == 1 {
        half
    } else {
        half + p as i64
    }
}

/// Recovers `m_1, …, m_{p-1}` from `d1 = Σ [k]_q m_k` and
/// `d2 = Σ [k]_{q^2} m_k`.
///
/// `d1` gives `m_k + m_{p-k}` (as `[k]_q = [p-k]_q`); the Galois twist
/// `q^2 ↦ -q` turns `d2` into `Σ (-1)^{k-1} [k]_q m_k`, which gives
/// `m_k - m_{p-k}` up to sign.
pub fn recover_jordan_content(p: u32, d1: &CycNum, d2: &CycNum) -> Result<JordanContent> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidArgument("content recovery needs p > 2".into()));
    }
    if d1.p() != p || d2.p() != p {
        return Err(Error::PrimeMismatch(p, if d1.p() != p { d1.p() } else { d2.p() }));
    }
    let twisted = d2.galois_conjugate(q_squared_twist(p))?;
    let mut m = vec![0u64; p as usize - 1];
    for k in 1..=basis_len(p) {
        let sum = d1.coeff(k).clone();
        let mut diff = twisted.coeff(k).clone();
        if k % 2 == 0 {
            diff = -diff;
        }
        let twice_a = &sum + &diff;
        let twice_b = &sum - &diff;
        let bad = |x: &BigInt| x.is_negative() || (x % 2u32) != BigInt::zero();
        if bad(&twice_a) || bad(&twice_b) {
            return Err(Error::Inconsistent(format!(
                "no non-negative integral content matches the coefficients of [{k}]_q"
            )));
        }
        let a = (twice_a / 2u32).to_u64().ok_or(Error::Overflow)?;
        let b = (twice_b / 2u32).to_u64().ok_or(Error::Overflow)?;
        m[k - 1] = a;
        m[p as usize - k - 1] = b;
    }
    Ok(JordanContent { p, m })
}

/// Extracts the digits of `Π_k (1 + z^{p^k})^{t_k}` from its coefficients
/// over `F_p` (lowest degree first).
pub fn padic_dimension(p: u32, series: &[u32]) -> Result<PadicDim> {
    let field = Field::new(p)?;
    let mut s: Vec<u8> = series.iter().map(|&c| (c % p) as u8).collect();
    trim(&mut s);
    if s.first() != Some(&1) {
        return Err(Error::InvalidArgument("the series must have constant term 1".into()));
    }
    let mut digits = Vec::new();
    while s != [1] {
        let mut found = None;
        let mut q = s.clone();
        for t in 0..p {
            if t > 0 {
                q = divide_by_one_plus_z(&field, &q).ok_or_else(malformed)?;
            }
            if q.iter().enumerate().all(|(i, &c)| c == 0 || i % p as usize == 0) {
                found = Some((t, q.iter().step_by(p as usize).copied().collect::<Vec<u8>>()));
                break;
            }
        }
        let (t, mut next) = found.ok_or_else(malformed)?;
        trim(&mut next);
        digits.push(t);
        s = next;
    }
    while digits.last() == Some(&0) {
        digits.pop();
    }
    Ok(PadicDim { p, digits })
}

fn malformed() -> Error {
    Error::Inconsistent("series is not a product of powers of 1 + z^(p^k)".into())
}

fn trim(s: &mut Vec<u8>) {
    while s.len() > 1 && s.last() == Some(&0) {
        s.pop();
    }
}

/// Exact division by `1 + z`, or `None` if it leaves a remainder.
fn divide_by_one_plus_z(field: &Field, s: &[u8]) -> Option<Vec<u8>> {
    if s.len() <= 1 {
        return if s.iter().all(|&c| c == 0) { Some(vec![0]) } else { None };
    }
    let mut q = vec![0u8; s.len() - 1];
    let mut carry = 0u8;
    for i in 0..q.len() {
        q[i] = field.sub(s[i], carry);
        carry = q[i];
    }
    (field.sub(s[s.len() - 1], carry) == 0).then_some(q)
}

/// `dim A^j X mod p` for `j = 0, …, dim X^♯` (all later terms vanish).
pub fn alternating_series(x: &VerObject, cap: usize) -> Result<Vec<u32>> {
    (0..=ad_upper_bound(x) as usize).map(|j| Ok(cat_dim_mod_p(&alt_power_ver(x, j, cap)?))).collect()
}

/// The p-adic dimension `Dim_a X` read off the alternating series.
pub fn padic_dimension_of(x: &VerObject, cap: usize) -> Result<PadicDim> {
    padic_dimension(x.p(), &alternating_series(x, cap)?)
}

/// `Π (1 + z^{p^k})^{t_k}` over `F_p`, built by repeated multiplication.
pub fn series_from_digits(p: u32, digits: &[u32]) -> Vec<u32> {
    let mut s = vec![1u32];
    for (k, &t) in digits.iter().enumerate() {
        let shift = (p as usize).pow(k as u32);
        for _ in 0..t {
            let mut next = vec![0u32; s.len() + shift];
            for (i, &c) in s.iter().enumerate() {
                next[i] = (next[i] + c) % p;
                next[i + shift] = (next[i + shift] + c) % p;
            }
            s = next;
        }
    }
    s
}
