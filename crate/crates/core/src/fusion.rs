//! `Ver_p` as a based fusion ring on the simples `L_1, …, L_{p-1}`.
//!
//! Objects are multiplicity vectors. The fusion rule is the truncated
//! Clebsch–Gordan rule; [`crate::modrep`] supplies the brute-force check
//! through Jordan blocks of `C_p`-modules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::{check_prime, Error, Result};

/// Number of simple objects of `Ver_p` (`Ver_2 = Vec` has one).
pub fn rank(p: u32) -> usize {
    (p as usize - 1).max(1)
}

/// An object of `Ver_p`; `mult[i]` is the multiplicity of `L_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VerObject {
    p: u32,
    mult: Vec<u64>,
}

#[derive(Deserialize)]
struct VerObjectRepr {
    p: u32,
    mult: Vec<u64>,
}

impl<'de> Deserialize<'de> for VerObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = VerObjectRepr::deserialize(d)?;
        VerObject::new(r.p, r.mult).map_err(serde::de::Error::custom)
    }
}

impl VerObject {
    pub fn new(p: u32, mult: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if mult.len() != rank(p) {
            return Err(Error::InvalidArgument(format!(
                "Ver_{p} has {} simples, got {} multiplicities",
                rank(p),
                mult.len()
            )));
        }
        Ok(VerObject { p, mult })
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(p, vec![0; rank(p)])
    }

    /// The simple object `L_i`, `1 ≤ i ≤ p-1`.
    pub fn simple(p: u32, i: usize) -> Result<Self> {
        let mut x = Self::zero(p)?;
        if i == 0 || i > rank(p) {
            return Err(Error::IndexOutOfRange { index: i, max: rank(p) });
        }
        x.mult[i - 1] = 1;
        Ok(x)
    }

    pub fn unit(p: u32) -> Result<Self> {
        Self::simple(p, 1)
    }

    /// Parses shorthand such as `"L2 + 2*L3"`; `"0"` is the zero object.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let mut x = Self::zero(p)?;
        for (coef, idx) in parse_terms(s, 'L')? {
            if idx == 0 || idx > rank(p) {
                return Err(Error::IndexOutOfRange { index: idx, max: rank(p) });
            }
            x.mult[idx - 1] = x.mult[idx - 1].checked_add(coef).ok_or(Error::Overflow)?;
        }
        Ok(x)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    /// Multiplicity of `L_i`.
    pub fn multiplicity(&self, i: usize) -> u64 {
        self.mult.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Length `ℓ(X)`: the total number of simple summands.
    pub fn length(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// Every simple is self-dual.
    pub fn dual(&self) -> VerObject {
        self.clone()
    }

    /// Indices `i` with `L_i` occurring in `self`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mult.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i + 1)
    }

    /// Dimension of the lift without projective summands: `Σ i·mult_i`.
    pub fn lift_dim(&self) -> u64 {
        self.mult.iter().enumerate().map(|(i, &m)| (i as u64 + 1) * m).sum()
    }

    fn check_same(&self, other: &VerObject) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn direct_sum(&self, other: &VerObject) -> Result<VerObject> {
        self.check_same(other)?;
        let mult = self
            .mult
            .iter()
            .zip(&other.mult)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(VerObject { p: self.p, mult })
    }

    pub fn scale(&self, n: u64) -> Result<VerObject> {
        let mult = self.mult.iter().map(|a| a.checked_mul(n).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(VerObject { p: self.p, mult })
    }
}

impl fmt::Display for VerObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.mult, 'L')
    }
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, mult: &[u64], letter: char) -> fmt::Result {
    let mut first = true;
    for (i, &m) in mult.iter().enumerate() {
        if m == 0 {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        if m == 1 {
            write!(f, "{letter}{}", i + 1)?;
        } else {
            write!(f, "{m}*{letter}{}", i + 1)?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Parses `"a*Xk + Xm + ..."` into `(a, k)` pairs.
pub(crate) fn parse_terms(s: &str, letter: char) -> Result<Vec<(u64, usize)>> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for term in s.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (coef, sym) = match term.split_once('*') {
            Some((c, rest)) => (
                c.parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?,
                rest.to_string(),
            ),
            None => (1, term.clone()),
        };
        let idx = sym
            .strip_prefix(letter)
            .or_else(|| sym.strip_prefix(letter.to_ascii_lowercase()))
            .ok_or_else(|| Error::Parse(format!("expected {letter}<index> in {term:?}")))?
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad index in {term:?}")))?;
        out.push((coef, idx));
    }
    Ok(out)
}

/// Indices `k` with `L_k ⊂ L_i ⊗ L_j`, all with multiplicity one.
fn fusion_indices(p: u32, i: usize, j: usize) -> impl Iterator<Item = usize> {
    let p = p as usize;
    let lo = i.abs_diff(j) + 1;
    let hi = if p == 2 { 1 } else { (i + j - 1).min(2 * p - 1 - i - j) };
    (lo..=hi).step_by(2)
}

/// `L_i ⊗ L_j` by the truncated Clebsch–Gordan rule.
pub fn fuse_simples(p: u32, i: usize, j: usize) -> Result<VerObject> {
    let mut out = VerObject::zero(p)?;
    for idx in [i, j] {
        if idx == 0 || idx > rank(p) {
            return Err(Error::IndexOutOfRange { index: idx, max: rank(p) });
        }
    }
    for k in fusion_indices(p, i, j) {
        out.mult[k - 1] += 1;
    }
    Ok(out)
}

/// Bilinear extension of [`fuse_simples`].
pub fn fuse(x: &VerObject, y: &VerObject) -> Result<VerObject> {
    x.check_same(y)?;
    let mut out = vec![0u64; x.mult.len()];
    for i in x.support() {
        for j in y.support() {
            let m = x.mult[i - 1].checked_mul(y.mult[j - 1]).ok_or(Error::Overflow)?;
            for k in fusion_indices(x.p, i, j) {
                out[k - 1] = out[k - 1].checked_add(m).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(VerObject { p: x.p, mult: out })
}

/// Frobenius–Perron dimension `Σ mult_r [r]_q`.
pub fn fpdim(x: &VerObject) -> CycNum {
    let mut d = CycNum::zero_unchecked(x.p);
    for r in x.support() {
        let q = crate::cyclotomic::qint(x.p, r as i64).expect("p checked at construction");
        d += &q.scale(&BigInt::from(x.mult[r - 1]));
    }
    d
}

/// Categorical dimension in `F_p`: `Σ i·mult_i mod p`.
pub fn cat_dim_mod_p(x: &VerObject) -> u32 {
    let p = x.p as u64;
    x.mult.iter().enumerate().fold(0u64, |acc, (i, &m)| (acc + (i as u64 + 1) % p * (m % p)) % p) as u32
}

/// An object of `Ver_p ⊠ Ver_p`; `mult[a][b]` is the multiplicity of `L_{a+1} ⊠ L_{b+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerPair {
    pub p: u32,
    pub mult: Vec<Vec<u64>>,
}

impl VerPair {
    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(VerPair { p, mult: vec![vec![0; rank(p)]; rank(p)] })
    }

    pub fn add_term(&mut self, a: usize, b: usize, m: u64) {
        self.mult[a - 1][b - 1] += m;
    }

    /// Componentwise fusion `(A ⊠ B) ⊗ (C ⊠ D) = (A ⊗ C) ⊠ (B ⊗ D)`.
    pub fn fuse(&self, other: &VerPair) -> Result<VerPair> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let p = self.p;
        let n = rank(p);
        let mut out = VerPair::zero(p)?;
        for a in 1..=n {
            for b in 1..=n {
                let m1 = self.mult[a - 1][b - 1];
                if m1 == 0 {
                    continue;
                }
                for c in 1..=n {
                    for d in 1..=n {
                        let m2 = other.mult[c - 1][d - 1];
                        if m2 == 0 {
                            continue;
                        }
                        let m = m1.checked_mul(m2).ok_or(Error::Overflow)?;
                        for k in fusion_indices(p, a, c) {
                            for l in fusion_indices(p, b, d) {
                                out.mult[k - 1][l - 1] =
                                    out.mult[k - 1][l - 1].checked_add(m).ok_or(Error::Overflow)?;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Indices `b` such that some `L_a ⊠ L_b` occurs.
    pub fn second_support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for row in &self.mult {
            for (b, &m) in row.iter().enumerate() {
                if m > 0 {
                    s.insert(b + 1);
                }
            }
        }
        s
    }
}

/// The Frobenius functor on simples: `L_i ↦ 1 ⊠ L_i` for odd `i`,
/// `L_i ↦ L_{p-1} ⊠ L_{p-i}` for even `i`; extended additively.
pub fn frobenius(x: &VerObject) -> VerPair {
    let p = x.p;
    let mut out = VerPair::zero(p).expect("p checked at construction");
    for i in x.support() {
        let m = x.mult[i - 1];
        if p == 2 || i % 2 == 1 {
            out.add_term(1, i, m);
        } else {
            out.add_term(p as usize - 1, p as usize - i, m);
        }
    }
    out
}

/// Fuses the two legs of [`frobenius`] back inside `Ver_p`.
pub fn frobenius_collapse(x: &VerObject) -> VerObject {
    let pair = frobenius(x);
    let n = rank(x.p);
    let mut out = VerObject::zero(x.p).expect("p checked");
    for a in 1..=n {
        for b in 1..=n {
            let m = pair.mult[a - 1][b - 1];
            if m > 0 {
                let t = fuse_simples(x.p, a, b).expect("in range").scale(m).expect("small");
                out = out.direct_sum(&t).expect("same p");
            }
        }
    }
    out
}

/// Label of the trivial character of `Z/2(p-1)`.
pub const TRIVIAL_CHARACTER: u32 = 0;

/// Label of the image `S̄` of the sign module: the order-two character `p - 1`.
/// It is even, so `R(S̄) = 1`, which is what `Fr = (id ⊠ R) ∘ Fr^{en}` forces
/// on even `i`.
pub fn sign_character(p: u32) -> u32 {
    if p == 2 {
        0
    } else {
        p - 1
    }
}

fn character_modulus(p: u32) -> u32 {
    2 * (p - 1).max(1)
}

/// An object of `Ver_p^{en} = Ver_p^+ ⊠ Rep(Z/2(p-1), z)`, keyed by
/// `(j, a)` with `j` odd and `a` a character label mod `2(p-1)`.
/// Serialized with `mult` as a list of `[j, a, multiplicity]` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnhancedObject {
    pub p: u32,
    #[serde(with = "triples")]
    pub mult: BTreeMap<(usize, u32), u64>,
}

// JSON object keys must be strings, so the `(j, a)`-keyed map goes out as triples.
mod triples {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, u32), u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(&(j, a), &k)| (j, a, k)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, u32), u64>, D::Error> {
        let mut out = BTreeMap::new();
        for (j, a, k) in Vec::<(usize, u32, u64)>::deserialize(d)? {
            *out.entry((j, a)).or_insert(0) += k;
        }
        Ok(out)
    }
}

impl EnhancedObject {
    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(EnhancedObject { p, mult: BTreeMap::new() })
    }

    pub fn simple(p: u32, j: usize, a: u32) -> Result<Self> {
        let mut e = Self::zero(p)?;
        e.add(j, a, 1)?;
        Ok(e)
    }

    pub fn add(&mut self, j: usize, a: u32, m: u64) -> Result<()> {
        if j == 0 || j > rank(self.p) || (self.p > 2 && j.is_multiple_of(2)) {
            return Err(Error::InvalidArgument(format!("L_{j} is not a simple of Ver_{}^+", self.p)));
        }
        if m > 0 {
            *self.mult.entry((j, a % character_modulus(self.p))).or_insert(0) += m;
        }
        Ok(())
    }
}

/// The restriction `R: Ver_p^{en} → Ver_p`: identity on `Ver_p^+`, and the
/// forgetful functor to `sVec` on characters (odd characters become `L_{p-1}`).
pub fn restrict_r(e: &EnhancedObject) -> VerObject {
    let p = e.p;
    let mut out = VerObject::zero(p).expect("p checked");
    for (&(j, a), &m) in &e.mult {
        let img = if a % 2 == 0 || p == 2 {
            VerObject::simple(p, j).expect("valid")
        } else {
            fuse_simples(p, j, p as usize - 1).expect("valid")
        };
        out = out.direct_sum(&img.scale(m).expect("small")).expect("same p");
    }
    out
}

/// Value of the enhanced Frobenius functor: for every first-leg simple `L_a`,
/// the `Ver_p^{en}` object paired with it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnhancedPair {
    pub p: u32,
    pub components: BTreeMap<usize, EnhancedObject>,
}

impl EnhancedPair {
    /// `(id ⊠ R)` applied componentwise.
    pub fn restrict(&self) -> VerPair {
        let mut out = VerPair::zero(self.p).expect("p checked");
        for (&a, e) in &self.components {
            let r = restrict_r(e);
            for b in r.support() {
                out.add_term(a, b, r.multiplicity(b));
            }
        }
        out
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (u64, String)>) -> fmt::Result {
    let mut first = true;
    for (m, t) in terms.filter(|&(m, _)| m > 0) {
        if !first {
            write!(f, " + ")?;
        }
        if m == 1 {
            write!(f, "{t}")?;
        } else {
            write!(f, "{m}*({t})")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for VerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.mult.iter().enumerate().flat_map(|(a, row)| {
            row.iter().enumerate().map(move |(b, &m)| (m, format!("L{} ⊠ L{}", a + 1, b + 1)))
        });
        write_sum(f, terms)
    }
}

/// Characters print as `χa`; `χ0` is the unit.
impl fmt::Display for EnhancedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.mult.iter().map(|(&(j, a), &m)| (m, format!("L{j} ⊠ χ{a}"))))
    }
}

impl fmt::Display for EnhancedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.components.iter().map(|(a, e)| (1, format!("L{a} ⊠ ({e})"))))
    }
}

/// `Fr^{en}(L_i) = 1 ⊠ L_i` for odd `i`, `L_{p-1} ⊠ (L_{p-i} ⊠ S̄)` for even `i`.
pub fn frobenius_enhanced(x: &VerObject) -> EnhancedPair {
    let p = x.p;
    let mut components: BTreeMap<usize, EnhancedObject> = BTreeMap::new();
    for i in x.support() {
        let m = x.mult[i - 1];
        let (first, j, a) = if p == 2 || i % 2 == 1 {
            (1, i, TRIVIAL_CHARACTER)
        } else {
            (p as usize - 1, p as usize - i, sign_character(p))
        };
        components
            .entry(first)
            .or_insert_with(|| EnhancedObject::zero(p).expect("p checked"))
            .add(j, a, m)
            .expect("odd index");
    }
    EnhancedPair { p, components }
}

/// The four tensor subcategories of `Ver_p` (fewer coincide for `p ≤ 3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FrobeniusType {
    Vec,
    #[serde(rename = "sVec")]
    SVec,
    VerPlus,
    VerP,
}

impl FrobeniusType {
    /// Least tensor subcategory containing both.
    pub fn join(self, other: FrobeniusType) -> FrobeniusType {
        use FrobeniusType::*;
        match (self, other) {
            (Vec, t) | (t, Vec) => t,
            (a, b) if a == b => a,
            _ => VerP,
        }
    }

    fn classify(p: u32, simples: &BTreeSet<usize>) -> FrobeniusType {
        let top = p as usize - 1;
        if simples.iter().all(|&i| i == 1) {
            FrobeniusType::Vec
        } else if simples.iter().all(|&i| i == 1 || i == top) {
            FrobeniusType::SVec
        } else if simples.iter().all(|&i| i % 2 == 1) {
            FrobeniusType::VerPlus
        } else {
            FrobeniusType::VerP
        }
    }
}

impl fmt::Display for FrobeniusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FrobeniusType::Vec => "Vec",
            FrobeniusType::SVec => "sVec",
            FrobeniusType::VerPlus => "VerPlus",
            FrobeniusType::VerP => "VerP",
        };
        f.write_str(s)
    }
}

/// Simples of the tensor subcategory generated by the given simples.
pub fn fusion_closure(p: u32, generators: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut closure: BTreeSet<usize> = BTreeSet::from([1]);
    closure.extend(generators.iter().copied());
    loop {
        let mut next = closure.clone();
        for &i in &closure {
            for &j in &closure {
                next.extend(fusion_indices(p, i, j));
            }
        }
        if next == closure {
            return closure;
        }
        closure = next;
    }
}

/// Minimal tensor subcategory receiving the second leg of `Fr(X)`.
pub fn frobenius_type(x: &VerObject) -> FrobeniusType {
    if x.p == 2 {
        return FrobeniusType::Vec;
    }
    let gens = frobenius(x).second_support();
    FrobeniusType::classify(x.p, &fusion_closure(x.p, &gens))
}

/// Whether `fpdim(X)` is an integer; equivalently `X ∈ ⟨L_1, L_{p-1}⟩`.
pub fn is_integral(x: &VerObject) -> bool {
    fpdim(x).is_integer()
}

/// Directed weighted graph: `L_i → L_j` with weight `[L_i ⊗ X : L_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayGraph {
    pub p: u32,
    pub vertices: Vec<usize>,
    /// `(source, target, weight)` with positive weights, sorted.
    pub edges: Vec<(usize, usize, u64)>,
}

impl McKayGraph {
    /// Adjacency list keyed by source vertex.
    pub fn adjacency(&self) -> BTreeMap<usize, Vec<(usize, u64)>> {
        let mut adj: BTreeMap<usize, Vec<(usize, u64)>> = self.vertices.iter().map(|&v| (v, vec![])).collect();
        for &(s, t, w) in &self.edges {
            adj.entry(s).or_default().push((t, w));
        }
        adj
    }

    /// True when the graph is the Dynkin path `A_n` on its vertices:
    /// symmetric, weight one, no loops, connected, all degrees ≤ 2, `n - 1` edges.
    pub fn is_path(&self) -> bool {
        let n = self.vertices.len();
        let undirected: BTreeSet<(usize, usize)> =
            self.edges.iter().map(|&(s, t, _)| (s.min(t), s.max(t))).collect();
        let symmetric = self.edges.iter().all(|&(s, t, w)| self.edges.contains(&(t, s, w)));
        let simple = self.edges.iter().all(|&(s, t, w)| s != t && w == 1);
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(s, t) in &undirected {
            *degree.entry(s).or_default() += 1;
            *degree.entry(t).or_default() += 1;
        }
        let connected = {
            let adj = self.adjacency();
            let mut seen = BTreeSet::new();
            let mut stack = vec![self.vertices[0]];
            while let Some(v) = stack.pop() {
                if seen.insert(v) {
                    stack.extend(adj[&v].iter().map(|&(t, _)| t));
                }
            }
            seen.len() == n
        };
        symmetric && simple && connected && undirected.len() + 1 == n && degree.values().all(|&d| d <= 2)
    }
}

/// The McKay graph of tensoring with `X` on the simples of `⟨X⟩`.
pub fn mckay_graph(x: &VerObject) -> Result<McKayGraph> {
    if x.is_zero() {
        return Err(Error::ZeroObject);
    }
    let p = x.p;
    let mut vertices: BTreeSet<usize> = BTreeSet::from([1]);
    loop {
        let mut next = vertices.clone();
        for &v in &vertices {
            next.extend(fuse(&VerObject::simple(p, v)?, x)?.support());
        }
        if next == vertices {
            break;
        }
        vertices = next;
    }
    let mut edges = Vec::new();
    for &v in &vertices {
        let img = fuse(&VerObject::simple(p, v)?, x)?;
        for t in img.support() {
            edges.push((v, t, img.multiplicity(t)));
        }
    }
    Ok(McKayGraph { p, vertices: vertices.into_iter().collect(), edges })
}

/// `ℓ(X^{⊗n})`, by iterated fusion with big-integer multiplicities.
pub fn tensor_power_length(x: &VerObject, n: u32) -> BigUint {
    let p = x.p;
    let r = rank(p);
    let mut cur = vec![BigUint::zero(); r];
    cur[0] = BigUint::from(1u32);
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); r];
        for (i, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in x.support() {
                let m = c * BigUint::from(x.mult[j - 1]);
                for k in fusion_indices(p, i + 1, j) {
                    next[k - 1] += &m;
                }
            }
        }
        cur = next;
    }
    cur.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::qint;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn obj(p: u32, s: &str) -> VerObject {
        VerObject::parse(p, s).unwrap()
    }

    #[test]
    fn fusion_examples() {
        assert_eq!(fuse_simples(5, 2, 2).unwrap(), obj(5, "L1+L3"));
        for p in [2u32, 3, 5, 7] {
            for j in 1..p as usize {
                assert_eq!(fuse_simples(p, 1, j).unwrap(), VerObject::simple(p, j).unwrap());
            }
        }
        assert_eq!(fuse_simples(5, 4, 4).unwrap(), obj(5, "L1"));
        assert_eq!(fuse(&obj(5, "2*L2"), &obj(5, "L1")).unwrap(), obj(5, "2*L2"));
        assert_eq!(fuse(&obj(5, "L2"), &obj(5, "L4")).unwrap(), obj(5, "L3"));
        assert_eq!(fuse(&obj(3, "L2"), &obj(3, "L2")).unwrap(), obj(3, "L1"));
        assert!(fuse_simples(5, 0, 1).is_err());
        assert!(fuse_simples(5, 5, 1).is_err());
        assert!(fuse(&obj(5, "L1"), &obj(7, "L1")).is_err());
    }

    #[test]
    fn fusion_ring_axioms_exhaustive() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let n = rank(p);
            let s: Vec<VerObject> = (1..=n).map(|i| VerObject::simple(p, i).unwrap()).collect();
            for a in &s {
                assert_eq!(&fuse(a, &s[0]).unwrap(), a);
                for b in &s {
                    let ab = fuse(a, b).unwrap();
                    assert_eq!(ab, fuse(b, a).unwrap());
                    assert!(ab.mult().iter().all(|&m| m <= 1));
                    for c in &s {
                        assert_eq!(fuse(&ab, c).unwrap(), fuse(a, &fuse(b, c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn fpdim_examples() {
        assert_eq!(fpdim(&obj(5, "L2")), qint(5, 2).unwrap());
        assert_eq!(fpdim(&obj(7, "L1")), CycNum::one(7).unwrap());
        assert_eq!(fpdim(&obj(5, "L4")), CycNum::one(5).unwrap());
        assert_eq!(fpdim(&VerObject::zero(5).unwrap()), CycNum::zero(5).unwrap());
    }

    #[test]
    fn dim_mod_p_examples() {
        assert_eq!(cat_dim_mod_p(&obj(5, "L4")), 4);
        assert_eq!(cat_dim_mod_p(&fuse(&obj(5, "L2"), &obj(5, "L2")).unwrap()), 4);
        assert_eq!(cat_dim_mod_p(&VerObject::zero(5).unwrap()), 0);
    }

    #[test]
    fn frobenius_examples() {
        let mut expect = VerPair::zero(5).unwrap();
        expect.add_term(4, 3, 1);
        assert_eq!(frobenius(&obj(5, "L2")), expect);
        let mut unit = VerPair::zero(7).unwrap();
        unit.add_term(1, 1, 1);
        assert_eq!(frobenius(&obj(7, "L1")), unit);
        let mut three = VerPair::zero(5).unwrap();
        three.add_term(1, 3, 1);
        assert_eq!(frobenius(&obj(5, "L3")), three);
        let mut two = VerPair::zero(2).unwrap();
        two.add_term(1, 1, 1);
        assert_eq!(frobenius(&obj(2, "L1")), two);
    }

    #[test]
    fn collapse_is_identity() {
        assert_eq!(frobenius_collapse(&obj(5, "L2")), obj(5, "L2"));
        assert_eq!(frobenius_collapse(&obj(5, "L1")), obj(5, "L1"));
        assert_eq!(frobenius_collapse(&obj(7, "L6")), obj(7, "L6"));
        for p in [2u32, 3, 5, 7, 11] {
            for i in 1..=rank(p) {
                let x = VerObject::simple(p, i).unwrap();
                assert_eq!(frobenius_collapse(&x), x);
            }
        }
    }

    #[test]
    fn enhanced_examples() {
        let en = frobenius_enhanced(&obj(5, "L3"));
        assert_eq!(en.components.len(), 1);
        assert_eq!(en.components[&1], EnhancedObject::simple(5, 3, TRIVIAL_CHARACTER).unwrap());
        let en = frobenius_enhanced(&obj(5, "L2"));
        assert_eq!(en.components[&4], EnhancedObject::simple(5, 3, sign_character(5)).unwrap());
        let en = frobenius_enhanced(&obj(7, "L1"));
        assert_eq!(en.components[&1], EnhancedObject::simple(7, 1, TRIVIAL_CHARACTER).unwrap());

        assert_eq!(restrict_r(&EnhancedObject::simple(5, 3, 0).unwrap()), obj(5, "L3"));
        assert_eq!(restrict_r(&EnhancedObject::simple(5, 3, sign_character(5)).unwrap()), obj(5, "L3"));
        assert_eq!(restrict_r(&EnhancedObject::simple(5, 3, 1).unwrap()), obj(5, "L2"));
        for p in [2u32, 3, 5, 7, 11] {
            for i in 1..=rank(p) {
                let x = VerObject::simple(p, i).unwrap();
                assert_eq!(frobenius_enhanced(&x).restrict(), frobenius(&x), "p={p} i={i}");
            }
        }
        assert!(EnhancedObject::simple(5, 2, 0).is_err());
    }

    #[test]
    fn enhanced_pair_json_round_trip() {
        let en = frobenius_enhanced(&obj(7, "L2+2*L3"));
        let json = serde_json::to_string(&en).unwrap();
        assert_eq!(json, r#"{"p":7,"components":{"1":{"p":7,"mult":[[3,0,2]]},"6":{"p":7,"mult":[[5,6,1]]}}}"#);
        assert_eq!(serde_json::from_str::<EnhancedPair>(&json).unwrap(), en);
        assert_eq!(en.to_string(), "L1 ⊠ (2*(L3 ⊠ χ0)) + L6 ⊠ (L5 ⊠ χ6)");
        assert_eq!(frobenius(&obj(7, "L2+2*L3")).to_string(), "2*(L1 ⊠ L3) + L6 ⊠ L5");
    }

    #[test]
    fn frobenius_type_examples() {
        assert_eq!(frobenius_type(&obj(5, "L1")), FrobeniusType::Vec);
        assert_eq!(frobenius_type(&obj(5, "L1+L2+L3+L4")), FrobeniusType::VerPlus);
        // Fr(L_2) = L_2 ⊠ L_1 at p = 3, so the second leg stays in Vec
        assert_eq!(frobenius_type(&obj(3, "L2")), FrobeniusType::Vec);
        assert_eq!(frobenius_type(&obj(2, "L1")), FrobeniusType::Vec);
        assert_eq!(FrobeniusType::SVec.join(FrobeniusType::VerPlus), FrobeniusType::VerP);
        assert_eq!(FrobeniusType::Vec.join(FrobeniusType::SVec), FrobeniusType::SVec);
    }

    #[test]
    fn integrality_examples() {
        assert!(is_integral(&obj(5, "L1+L4")));
        assert!(!is_integral(&obj(5, "L2")));
        assert!(is_integral(&obj(3, "3*L1+2*L2")));
        for p in [5u32, 7, 11] {
            for i in 1..p as usize {
                let x = VerObject::simple(p, i).unwrap();
                assert_eq!(is_integral(&x), i == 1 || i == p as usize - 1);
            }
        }
    }

    #[test]
    fn mckay_examples() {
        let g = mckay_graph(&obj(5, "L2")).unwrap();
        assert_eq!(g.vertices, vec![1, 2, 3, 4]);
        assert!(g.is_path());
        let g = mckay_graph(&obj(7, "L2")).unwrap();
        assert_eq!(g.vertices, (1..=6).collect::<Vec<_>>());
        assert!(g.is_path());
        let g = mckay_graph(&obj(5, "L1")).unwrap();
        assert_eq!(g.vertices, vec![1]);
        assert_eq!(g.edges, vec![(1, 1, 1)]);
        assert!(!mckay_graph(&obj(5, "L3")).unwrap().is_path());
        assert_eq!(mckay_graph(&VerObject::zero(5).unwrap()), Err(Error::ZeroObject));
    }

    #[test]
    fn tensor_power_length_examples() {
        assert_eq!(tensor_power_length(&obj(5, "L3"), 0), BigUint::from(1u32));
        assert_eq!(tensor_power_length(&obj(5, "L2"), 2), BigUint::from(2u32));
        // d_n(L_2) at p = 5 follows the Fibonacci numbers
        let d: Vec<u64> = (0..10).map(|n| tensor_power_length(&obj(5, "L2"), n).try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
    }

    #[test]
    fn parse_and_json() {
        assert_eq!(obj(7, "L2 + 2*L3").mult(), &[0, 1, 2, 0, 0, 0]);
        assert_eq!(obj(7, "L2+2*L3").to_string(), "L2 + 2*L3");
        assert!(VerObject::parse(5, "L5").is_err());
        assert!(VerObject::parse(5, "J2").is_err());
        let x = obj(5, "L1+L3");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"p":5,"mult":[1,0,1,0]}"#);
        assert_eq!(serde_json::from_str::<VerObject>(&js).unwrap(), x);
        assert!(serde_json::from_str::<VerObject>(r#"{"p":5,"mult":[1]}"#).is_err());
    }

    fn arb_obj(p: u32) -> impl Strategy<Value = VerObject> {
        prop::collection::vec(0u64..4, rank(p)).prop_map(move |m| VerObject::new(p, m).unwrap())
    }

    fn arb_pair() -> impl Strategy<Value = (VerObject, VerObject)> {
        prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]).prop_flat_map(|p| (arb_obj(p), arb_obj(p)))
    }

    proptest! {
        #[test]
        fn fpdim_is_ring_homomorphism((x, y) in arb_pair()) {
            prop_assert_eq!(fpdim(&fuse(&x, &y).unwrap()), &fpdim(&x) * &fpdim(&y));
            prop_assert_eq!(fpdim(&x.direct_sum(&y).unwrap()), &fpdim(&x) + &fpdim(&y));
        }

        #[test]
        fn dim_mod_p_is_ring_homomorphism((x, y) in arb_pair()) {
            let p = x.p();
            prop_assert_eq!(cat_dim_mod_p(&fuse(&x, &y).unwrap()), cat_dim_mod_p(&x) * cat_dim_mod_p(&y) % p);
            prop_assert_eq!(cat_dim_mod_p(&x.direct_sum(&y).unwrap()), (cat_dim_mod_p(&x) + cat_dim_mod_p(&y)) % p);
        }

        #[test]
        fn frobenius_is_monoidal_and_collapses((x, y) in arb_pair()) {
            prop_assert_eq!(frobenius(&fuse(&x, &y).unwrap()), frobenius(&x).fuse(&frobenius(&y)).unwrap());
            prop_assert_eq!(frobenius_collapse(&x), x.clone());
            prop_assert_eq!(frobenius_enhanced(&x).restrict(), frobenius(&x));
        }

        #[test]
        fn frobenius_type_join((x, y) in arb_pair()) {
            prop_assert_eq!(frobenius_type(&x.direct_sum(&y).unwrap()), frobenius_type(&x).join(frobenius_type(&y)));
        }

        #[test]
        fn fpdim_dominates_quantum_dimension((x, _) in arb_pair()) {
            let lower = qint(x.p(), cat_dim_mod_p(&x) as i64).unwrap();
            prop_assert!(fpdim(&x).cmp_real(&lower) != Ordering::Less);
        }

        #[test]
        fn lengths_are_supermultiplicative((x, _) in arb_pair(), n in 1u32..8, a in 0u32..8) {
            let a = a.min(n);
            let whole = tensor_power_length(&x, n);
            prop_assert!(whole >= tensor_power_length(&x, a) * tensor_power_length(&x, n - a));
        }
    }
}
