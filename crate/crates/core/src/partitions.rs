//! Partition combinatorics for symmetric groups in characteristic `p`:
//! p-regularity, p-cores, residues and conormal boxes, the staircase cores
//! `ρ_k`, James' divisibility condition and the envelope built from it.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::{check_prime, Error, Result};

/// A weakly decreasing sequence of positive integers. Serialized as a JSON array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Accepts "3,2,1", "(3,2,1)", "[3,2,1]", or "" / "()" / "∅" for the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if body.is_empty() || body == "∅" {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `row` (1-based); zero past the last row.
    pub fn row(&self, row: usize) -> u32 {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Componentwise containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn addable_boxes(&self, p: u32) -> Vec<BoxPos> {
        (1..=self.len() + 1)
            .filter(|&r| r == 1 || self.row(r - 1) > self.row(r))
            .map(|r| BoxPos::new(r, self.row(r) as usize + 1, p))
            .collect()
    }

    pub fn removable_boxes(&self, p: u32) -> Vec<BoxPos> {
        (1..=self.len())
            .filter(|&r| self.row(r) > self.row(r + 1))
            .map(|r| BoxPos::new(r, self.row(r) as usize, p))
            .collect()
    }

    /// Adds a box at the end of row `row`, which must be addable.
    pub fn add_box(&self, row: usize) -> Result<Partition> {
        if row == 0 || row > self.len() + 1 || (row > 1 && self.row(row - 1) == self.row(row)) {
            return Err(Error::InvalidArgument(format!("no addable box in row {row} of {self}")));
        }
        let mut parts = self.parts.clone();
        if row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Ok(Partition { parts })
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                go(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// First-column hook lengths `λ_i + len - i`, decreasing.
    fn beta_numbers(&self) -> Vec<u64> {
        let l = self.len() as u64;
        self.parts.iter().enumerate().map(|(i, &x)| x as u64 + l - 1 - i as u64).collect()
    }

    fn from_beta_numbers(mut beta: Vec<u64>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let l = beta.len() as u64;
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| (b + 1 + i as u64 - l) as u32)
            .filter(|&x| x > 0)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A box of a Young diagram, 1-based, with residue `(col - row) mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxPos {
    pub row: usize,
    pub col: usize,
    pub residue: u32,
}

impl BoxPos {
    pub fn new(row: usize, col: usize, p: u32) -> Self {
        let residue = (col as i64 - row as i64).rem_euclid(p as i64) as u32;
        BoxPos { row, col, residue }
    }
}

/// No part is repeated `p` or more times.
pub fn is_p_regular(lambda: &Partition, p: u32) -> bool {
    let parts = lambda.parts();
    let p = p as usize;
    p == 0 || parts.len() < p || parts.windows(p).all(|w| w[0] != w[p - 1])
}

fn require_regular(lambda: &Partition, p: u32) -> Result<()> {
    if is_p_regular(lambda, p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{lambda} is not {p}-regular")))
    }
}

/// Every partition obtained from `λ` by removing one rim `p`-hook.
pub fn rim_hook_removals(lambda: &Partition, p: u32) -> Vec<Partition> {
    let beta = lambda.beta_numbers();
    let p = p as u64;
    (0..beta.len())
        .filter(|&i| beta[i] >= p && !beta.contains(&(beta[i] - p)))
        .map(|i| {
            let mut b = beta.clone();
            b[i] -= p;
            Partition::from_beta_numbers(b)
        })
        .collect()
}

/// The `p`-core: slide every bead of the `p`-abacus to the top of its runner.
pub fn p_core(lambda: &Partition, p: u32) -> Partition {
    let p = p as u64;
    let mut beads = vec![0u64; p as usize];
    for b in lambda.beta_numbers() {
        beads[(b % p) as usize] += 1;
    }
    let beta = beads
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| (0..c).map(move |k| r as u64 + k * p))
        .collect();
    Partition::from_beta_numbers(beta)
}

/// `ρ_k = (k^{p-1}, (k-1)^{p-1}, …, 1^{p-1})`.
pub fn rho(p: u32, k: u32) -> Partition {
    let parts = (1..=k).rev().flat_map(|x| std::iter::repeat_n(x, p as usize - 1)).collect();
    Partition { parts }
}

/// Conormal boxes of residue `r`: read the addable (`+`) and removable (`-`)
/// boxes of residue `r` by increasing column, cancel adjacent `-+` pairs until
/// none remain, and keep the addable boxes whose `+` survives.
///
/// This is Kleshchev's convention for p-regular labels. Cancelling `+-`
/// instead gives the convention for p-restricted labels, under which the
/// greedy chain of [`greedy_to_rho`] is not conormal. Adding a conormal box
/// need not keep the partition p-regular (both boxes of residue 1 on `(1)` at
/// `p = 2` are conormal); adding the cogood box does.
pub fn conormal_boxes(lambda: &Partition, p: u32, r: u32) -> Result<Vec<BoxPos>> {
    check_prime(p)?;
    require_regular(lambda, p)?;
    let mut word: Vec<(BoxPos, bool)> = lambda
        .addable_boxes(p)
        .into_iter()
        .map(|b| (b, true))
        .chain(lambda.removable_boxes(p).into_iter().map(|b| (b, false)))
        .filter(|(b, _)| b.residue == r % p)
        .collect();
    word.sort_by_key(|(b, _)| b.col);
    // a stack reduction performs every cancellation in one pass
    let mut stack: Vec<(BoxPos, bool)> = Vec::new();
    for entry in word {
        if entry.1 && matches!(stack.last(), Some((_, false))) {
            stack.pop();
        } else {
            stack.push(entry);
        }
    }
    Ok(stack.into_iter().filter(|(_, add)| *add).map(|(b, _)| b).collect())
}

/// The right-most conormal box of residue `r`.
pub fn cogood_box(lambda: &Partition, p: u32, r: u32) -> Result<Option<BoxPos>> {
    Ok(conormal_boxes(lambda, p, r)?.into_iter().max_by_key(|b| b.col))
}

/// Grows `λ` to `ρ_{λ_1}` by repeatedly adding the left-most addable box that
/// keeps the partition p-regular. Returns the partitions after each step.
///
/// Addable boxes sit in distinct columns, so "left-most" needs no tie-break.
/// Every added box is checked to be conormal for its residue; a failure, or a
/// chain that overshoots `|ρ_{λ_1}|`, is reported as [`Error::Inconsistent`].
pub fn greedy_to_rho(lambda: &Partition, p: u32) -> Result<Vec<Partition>> {
    check_prime(p)?;
    require_regular(lambda, p)?;
    if lambda.is_empty() {
        return Err(Error::InvalidArgument("greedy_to_rho needs a non-empty partition".into()));
    }
    let target = rho(p, lambda.row(1));
    let guard = target.size() + 1;
    let mut cur = lambda.clone();
    let mut chain = Vec::new();
    while cur != target {
        if chain.len() as u64 >= guard {
            return Err(Error::Inconsistent(format!("greedy chain from {lambda} does not reach {target}")));
        }
        let mut candidates = cur.addable_boxes(p);
        candidates.sort_by_key(|b| b.col);
        let (b, next) = candidates
            .into_iter()
            .find_map(|b| {
                let next = cur.add_box(b.row).ok()?;
                is_p_regular(&next, p).then_some((b, next))
            })
            .ok_or_else(|| Error::Inconsistent(format!("no p-regular addition to {cur}")))?;
        if !conormal_boxes(&cur, p, b.residue)?.contains(&b) {
            return Err(Error::Inconsistent(format!("box ({},{}) added to {cur} is not conormal", b.row, b.col)));
        }
        chain.push(next.clone());
        cur = next;
    }
    Ok(chain)
}

/// Minimal `ℓ` with `a < p^ℓ`.
pub fn ell_p(p: u32, a: u64) -> u32 {
    let mut l = 0;
    let mut pow: u128 = 1;
    while pow <= a as u128 {
        pow *= p as u128;
        l += 1;
    }
    l
}

/// `p^{ℓ_p(μ_{i+1})}` divides `μ_i + 1` for every consecutive pair.
pub fn james_condition(mu: &Partition, p: u32) -> bool {
    mu.parts().windows(2).all(|w| {
        let modulus = (p as u128).checked_pow(ell_p(p, w[1] as u64));
        modulus.is_some_and(|m| (w[0] as u128 + 1).is_multiple_of(m))
    })
}

/// `μ_l = λ_1` and `μ_i = p^{ℓ_p(μ_{i+1})} - 1` upwards, where `l = len(λ)`.
pub fn james_envelope(lambda: &Partition, p: u32) -> Result<Partition> {
    check_prime(p)?;
    if lambda.is_empty() {
        return Err(Error::InvalidArgument("james_envelope needs a non-empty partition".into()));
    }
    let mut parts = vec![lambda.row(1); lambda.len()];
    for i in (0..parts.len() - 1).rev() {
        let next = (p as u64)
            .checked_pow(ell_p(p, parts[i + 1] as u64))
            .map(|m| m - 1)
            .and_then(|m| u32::try_from(m).ok())
            .ok_or(Error::Overflow)?;
        parts[i] = next;
    }
    Partition::new(parts)
}

/// `n (p-1) (p^{ℓ_p(n)} - 1)`.
pub fn sasha_bound(p: u32, n: u64) -> Result<u128> {
    let pow = (p as u128).checked_pow(ell_p(p, n)).ok_or(Error::Overflow)?;
    (n as u128)
        .checked_mul(p as u128 - 1)
        .and_then(|x| x.checked_mul(pow - 1))
        .ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn part(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn regularity() {
        assert!(is_p_regular(&part("3,2"), 2));
        assert!(!is_p_regular(&part("2,2"), 2));
        assert!(!is_p_regular(&part("4,4,4,1"), 3));
        assert!(is_p_regular(&part("4,4,1"), 3));
        assert!(is_p_regular(&Partition::empty(), 2));
    }

    #[test]
    fn validation_and_parsing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(part("(3,2,1)").to_string(), "(3,2,1)");
        assert_eq!(part("()"), Partition::empty());
        let json = serde_json::to_string(&part("3,1")).unwrap();
        assert_eq!(json, "[3,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn cores() {
        for p in [2, 3, 5, 7] {
            assert_eq!(p_core(&Partition::new(vec![p]).unwrap(), p), Partition::empty());
        }
        assert_eq!(p_core(&part("2,1"), 3), Partition::empty());
        assert_eq!(p_core(&part("2,1"), 2), part("2,1"));
        assert_eq!(p_core(&part("3,1,1"), 2), part("1"));
        for p in [2, 3, 5] {
            for k in 0..=4 {
                let r = rho(p, k);
                assert!(rim_hook_removals(&r, p).is_empty(), "p={p} k={k}");
                assert_eq!(p_core(&r, p), r);
                assert!(is_p_regular(&r, p));
            }
        }
    }

    #[test]
    fn staircases() {
        assert_eq!(rho(3, 2), part("2,2,1,1"));
        assert_eq!(rho(5, 0), Partition::empty());
        assert_eq!(rho(2, 3), part("3,2,1"));
        for p in [2u32, 3, 5, 7] {
            for k in 0..6u32 {
                assert_eq!(rho(p, k).size(), (k * (k + 1) * (p - 1) / 2) as u64);
            }
        }
    }

    #[test]
    fn core_is_independent_of_removal_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3, 5] {
            for n in 0..=10 {
                for lambda in Partition::all_of_size(n) {
                    let core = p_core(&lambda, p);
                    assert_eq!(p_core(&core, p), core);
                    for _ in 0..3 {
                        let mut cur = lambda.clone();
                        loop {
                            let options = rim_hook_removals(&cur, p);
                            match options.choose(&mut rng) {
                                Some(next) => cur = next.clone(),
                                None => break,
                            }
                        }
                        assert_eq!(cur, core, "p={p} λ={lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn conormal_examples() {
        assert_eq!(conormal_boxes(&Partition::empty(), 3, 0).unwrap(), vec![BoxPos::new(1, 1, 3)]);
        assert!(conormal_boxes(&Partition::empty(), 3, 1).unwrap().is_empty());
        let both = conormal_boxes(&part("1"), 2, 1).unwrap();
        assert_eq!(both, vec![BoxPos::new(2, 1, 2), BoxPos::new(1, 2, 2)]);
        assert!(!is_p_regular(&part("1").add_box(2).unwrap(), 2));
        assert_eq!(cogood_box(&part("1"), 2, 1).unwrap(), Some(BoxPos::new(1, 2, 2)));
        // the removable box (1,2) sits to the right of the addable (3,1) and does not cancel it
        assert_eq!(conormal_boxes(&part("2,1"), 3, 1).unwrap(), vec![BoxPos::new(3, 1, 3)]);
        assert!(conormal_boxes(&part("2,2"), 2, 0).is_err());
    }

    #[test]
    fn cogood_additions_stay_regular() {
        for p in [2, 3, 5] {
            for n in 0..=10 {
                for lambda in Partition::all_of_size(n).into_iter().filter(|l| is_p_regular(l, p)) {
                    for r in 0..p {
                        if let Some(b) = cogood_box(&lambda, p, r).unwrap() {
                            assert!(is_p_regular(&lambda.add_box(b.row).unwrap(), p), "p={p} λ={lambda} box {b:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_examples() {
        assert!(greedy_to_rho(&part("1"), 2).unwrap().is_empty());
        assert_eq!(greedy_to_rho(&part("2"), 2).unwrap(), vec![part("2,1")]);
        assert_eq!(
            greedy_to_rho(&part("2,1"), 3).unwrap(),
            vec![part("2,1,1"), part("2,2,1"), part("2,2,1,1")]
        );
        assert!(greedy_to_rho(&part("2,2"), 2).is_err());
        assert!(greedy_to_rho(&Partition::empty(), 2).is_err());
    }

    #[test]
    fn greedy_reaches_rho() {
        for p in [2, 3, 5] {
            for n in 1..=10 {
                for lambda in Partition::all_of_size(n).into_iter().filter(|l| is_p_regular(l, p)) {
                    let chain = greedy_to_rho(&lambda, p).unwrap();
                    let end = chain.last().unwrap_or(&lambda);
                    assert_eq!(*end, rho(p, lambda.row(1)));
                    assert!(chain.iter().all(|c| is_p_regular(c, p)));
                }
            }
        }
    }

    #[test]
    fn james_examples() {
        assert!(james_condition(&part("3,3"), 2));
        assert!(james_condition(&part("3,2"), 2));
        assert!(!james_condition(&part("2,2"), 2));
        assert!(james_condition(&part("7"), 5));
        assert_eq!(james_envelope(&part("3,2"), 2).unwrap(), part("3,3"));
        assert_eq!(james_envelope(&part("1"), 3).unwrap(), part("1"));
        assert_eq!(james_envelope(&part("2,2,2"), 3).unwrap(), part("2,2,2"));
        assert_eq!(james_envelope(&part("2,1,1"), 2).unwrap(), part("3,3,2"));
    }

    #[test]
    fn bounds() {
        assert_eq!(ell_p(2, 3), 2);
        assert_eq!(ell_p(2, 4), 3);
        assert_eq!(ell_p(7, 0), 0);
        assert_eq!(ell_p(5, 1), 1);
        assert_eq!(sasha_bound(2, 3).unwrap(), 9);
        assert_eq!(sasha_bound(3, 1).unwrap(), 4);
    }

    proptest! {
        #[test]
        fn envelope_contains_and_satisfies(parts in prop::collection::vec(1u32..8, 1..6), p in prop::sample::select(vec![2u32, 3, 5])) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lambda = Partition::new(parts).unwrap();
            let mu = james_envelope(&lambda, p).unwrap();
            prop_assert!(mu.contains(&lambda));
            prop_assert_eq!(mu.len(), lambda.len());
            prop_assert!(james_condition(&mu, p));
        }

        #[test]
        fn sasha_bound_dominates(n in 1u64..10_000, p in prop::sample::select(vec![2u32, 3, 5, 7, 11])) {
            prop_assert!(sasha_bound(p, n).unwrap() >= n as u128);
        }

        #[test]
        fn ell_is_minimal(a in 0u64..1_000_000, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
            let l = ell_p(p, a);
            prop_assert!((a as u128) < (p as u128).pow(l));
            prop_assert!(l == 0 || (a as u128) >= (p as u128).pow(l - 1));
        }
    }
}
