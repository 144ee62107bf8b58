//! Representations of `C_p` over `GF(p)`, the brute-force oracle layer.
//!
//! A module is a nilpotent matrix `N` with `N^p = 0`; the generator acts as
//! `1 + N`. Jordan types come from rank sequences, semisimplification drops
//! projective blocks `J_p`, and morphisms are pushed into `Ver_p` through the
//! trace pairing on `Hom(J_i, V) × Hom(V, J_i)`.

pub mod gf;
mod powers;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::fusion::{parse_terms, write_terms, VerObject};
use crate::{check_prime, Error, Result};
use gf::{Field, Matrix, SparseMatrix};

pub(crate) use powers::for_each_permutation;
pub use powers::{
    alt_power_ver, alt_power_ver_by_summands, fr_plus, gamma_power, lambda_power, power_space, skew_image, skew_symmetrizer,
    sym_power, wedge_power, PowerSpace,
};

/// Multiplicities of the Jordan blocks `J_1, …, J_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JordanType {
    p: u32,
    blocks: Vec<u64>,
}

#[derive(Deserialize)]
struct JordanTypeRepr {
    p: u32,
    blocks: Vec<u64>,
}

impl<'de> Deserialize<'de> for JordanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = JordanTypeRepr::deserialize(d)?;
        JordanType::new(r.p, r.blocks).map_err(serde::de::Error::custom)
    }
}

impl JordanType {
    pub fn new(p: u32, blocks: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if blocks.len() != p as usize {
            return Err(Error::InvalidArgument(format!(
                "a Jordan type at p = {p} has {p} block sizes, got {}",
                blocks.len()
            )));
        }
        Ok(JordanType { p, blocks })
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(p, vec![0; p as usize])
    }

    /// A single block `J_size`.
    pub fn block(p: u32, size: usize) -> Result<Self> {
        let mut t = Self::zero(p)?;
        if size == 0 || size > p as usize {
            return Err(Error::IndexOutOfRange { index: size, max: p as usize });
        }
        t.blocks[size - 1] = 1;
        Ok(t)
    }

    /// Parses shorthand such as `"J2 + 3*J5"`; `"0"` is the zero module.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let mut t = Self::zero(p)?;
        for (coef, size) in parse_terms(s, 'J')? {
            if size == 0 || size > p as usize {
                return Err(Error::IndexOutOfRange { index: size, max: p as usize });
            }
            t.blocks[size - 1] = t.blocks[size - 1].checked_add(coef).ok_or(Error::Overflow)?;
        }
        Ok(t)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Multiplicity of `J_size`.
    pub fn multiplicity(&self, size: usize) -> u64 {
        self.blocks.get(size.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.blocks.iter().enumerate().map(|(i, &m)| (i as u64 + 1) * m).sum()
    }

    pub fn direct_sum(&self, other: &JordanType) -> Result<JordanType> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        Ok(JordanType { p: self.p, blocks })
    }

    /// Number of non-projective blocks.
    pub fn non_projective_count(&self) -> u64 {
        self.blocks[..self.p as usize - 1].iter().sum()
    }

    /// The stable type: the `J_p` multiplicity erased.
    pub fn stable(&self) -> JordanType {
        let mut t = self.clone();
        t.blocks[self.p as usize - 1] = 0;
        t
    }

    /// `J_i ↦ L_i` for `i < p`, `J_p ↦ 0`.
    pub fn semisimplify(&self) -> VerObject {
        let p = self.p;
        let mult = if p == 2 { vec![self.blocks[0]] } else { self.blocks[..p as usize - 1].to_vec() };
        VerObject::new(p, mult).expect("lengths agree")
    }

    /// Type of the lift `X^♯`: `mult_i` copies of `J_i`, no projectives.
    pub fn lift_of(x: &VerObject) -> JordanType {
        let mut blocks = vec![0; x.p() as usize];
        blocks[..x.mult().len()].copy_from_slice(x.mult());
        JordanType { p: x.p(), blocks }
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.blocks, 'J')
    }
}

/// A `C_p`-module given by the nilpotent part `N` of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRep {
    p: u32,
    nil: SparseMatrix,
}

impl CyclicRep {
    /// Validates `N^p = 0`.
    pub fn new(p: u32, nilpotent: &Matrix) -> Result<Self> {
        Field::new(p)?;
        if !nilpotent.is_square() {
            return Err(Error::InvalidArgument("the nilpotent must be square".into()));
        }
        Self::from_sparse(p, SparseMatrix::from_dense(nilpotent))
    }

    pub fn from_sparse(p: u32, nil: SparseMatrix) -> Result<Self> {
        let rep = CyclicRep { p, nil };
        let field = rep.field();
        for j in 0..rep.dim() {
            let mut v = vec![0u8; rep.dim()];
            v[j] = 1;
            for _ in 0..p {
                v = rep.nil.apply(&field, &v);
            }
            if v.iter().any(|&x| x != 0) {
                return Err(Error::NotNilpotent);
            }
        }
        Ok(rep)
    }

    pub(crate) fn from_sparse_unchecked(p: u32, nil: SparseMatrix) -> Self {
        CyclicRep { p, nil }
    }

    /// `k^m` with trivial action.
    pub fn trivial(p: u32, m: usize) -> Result<Self> {
        Field::new(p)?;
        Ok(CyclicRep { p, nil: SparseMatrix::zeros(m) })
    }

    /// Standard realization: blocks in ascending size, `N e_k = e_{k-1}` inside each block.
    pub fn from_jordan_type(t: &JordanType) -> Result<Self> {
        Field::new(t.p)?;
        let mut cols = Vec::new();
        for (i, &m) in t.blocks.iter().enumerate() {
            for _ in 0..m {
                let base = cols.len();
                cols.push(Vec::new());
                for k in 1..=i {
                    cols.push(vec![(base + k - 1, 1u8)]);
                }
            }
        }
        Ok(CyclicRep { p: t.p, nil: SparseMatrix::from_columns(cols.len(), cols) })
    }

    /// The lift `X^♯` without projective summands.
    pub fn lift(x: &VerObject) -> Result<Self> {
        Self::from_jordan_type(&JordanType::lift_of(x))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.nil.dim()
    }

    pub fn field(&self) -> Field {
        Field::new(self.p).expect("validated at construction")
    }

    pub fn nilpotent(&self) -> &SparseMatrix {
        &self.nil
    }

    /// The action `g = 1 + N` as a dense matrix.
    pub fn generator(&self) -> Matrix {
        let mut g = self.nil.to_dense();
        let field = self.field();
        for i in 0..self.dim() {
            g.set(i, i, field.add(g.get(i, i), 1));
        }
        g
    }

    pub fn direct_sum(&self, other: &CyclicRep) -> Result<CyclicRep> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let off = self.dim();
        let mut cols: Vec<Vec<(usize, u8)>> = (0..off).map(|j| self.nil.column(j).to_vec()).collect();
        cols.extend((0..other.dim()).map(|j| other.nil.column(j).iter().map(|&(i, a)| (i + off, a)).collect()));
        Ok(CyclicRep { p: self.p, nil: SparseMatrix::from_columns(cols.len(), cols) })
    }

    /// Conjugates by a uniformly random invertible matrix: same module, dense realization.
    pub fn random_conjugate<R: Rng + ?Sized>(&self, rng: &mut R) -> CyclicRep {
        let field = self.field();
        let n = self.dim();
        let (g, inv) = loop {
            let mut g = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    g.set(i, j, rng.gen_range(0..self.p) as u8);
                }
            }
            if let Some(inv) = g.inverse(&field) {
                break (g, inv);
            }
        };
        let conj = g.mul(&field, &self.nil.to_dense()).mul(&field, &inv);
        CyclicRep { p: self.p, nil: SparseMatrix::from_dense(&conj) }
    }
}

#[derive(Serialize, Deserialize)]
struct CyclicRepRepr {
    p: u32,
    nilpotent: Vec<Vec<i64>>,
}

impl Serialize for CyclicRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.nil.to_dense().to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
        CyclicRepRepr { p: self.p, nilpotent: rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclicRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclicRepRepr::deserialize(d)?;
        let field = Field::new(r.p).map_err(serde::de::Error::custom)?;
        if r.nilpotent.iter().flatten().any(|&x| x < 0 || x >= r.p as i64) {
            return Err(serde::de::Error::custom("entries must lie in 0..p"));
        }
        let m = Matrix::from_i64_rows(&field, &r.nilpotent).map_err(serde::de::Error::custom)?;
        if m.rows() != m.cols() && !r.nilpotent.is_empty() {
            return Err(serde::de::Error::custom("the nilpotent must be square"));
        }
        CyclicRep::new(r.p, &m).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_cap(dim: u128, cap: usize) -> Result<usize> {
    if dim > cap as u128 {
        Err(Error::CapExceeded { dim: dim.min(usize::MAX as u128) as usize, cap })
    } else {
        Ok(dim as usize)
    }
}

/// `V ⊗ W` with `N_⊗ = N⊗1 + 1⊗N + N⊗N`, basis `e_a ⊗ e_b ↦ a·dim W + b`.
pub fn tensor(v: &CyclicRep, w: &CyclicRep, cap: usize) -> Result<CyclicRep> {
    if v.p != w.p {
        return Err(Error::PrimeMismatch(v.p, w.p));
    }
    let (dv, dw) = (v.dim(), w.dim());
    let dim = check_cap(dv as u128 * dw as u128, cap)?;
    let field = v.field();
    let mut cols = Vec::with_capacity(dim);
    let mut acc: Vec<u8> = vec![0; dim];
    for a in 0..dv {
        for b in 0..dw {
            let mut touched = Vec::new();
            let mut bump = |i: usize, x: u8, touched: &mut Vec<usize>| {
                if acc[i] == 0 {
                    touched.push(i);
                }
                acc[i] = field.add(acc[i], x);
            };
            for &(i, x) in v.nil.column(a) {
                bump(i * dw + b, x, &mut touched);
                for &(k, y) in w.nil.column(b) {
                    bump(i * dw + k, field.mul(x, y), &mut touched);
                }
            }
            for &(k, y) in w.nil.column(b) {
                bump(a * dw + k, y, &mut touched);
            }
            touched.sort_unstable();
            touched.dedup();
            let col: Vec<(usize, u8)> =
                touched.iter().filter(|&&i| acc[i] != 0).map(|&i| (i, acc[i])).collect();
            for &i in &touched {
                acc[i] = 0;
            }
            cols.push(col);
        }
    }
    Ok(CyclicRep::from_sparse_unchecked(v.p, SparseMatrix::from_columns(dim, cols)))
}

/// `V^{⊗n}` (the unit for `n = 0`).
pub fn tensor_power(v: &CyclicRep, n: u32, cap: usize) -> Result<CyclicRep> {
    check_cap((v.dim() as u128).saturating_pow(n), cap)?;
    let mut out = CyclicRep::trivial(v.p, 1)?;
    for _ in 0..n {
        out = tensor(&out, v, cap)?;
    }
    Ok(out)
}

/// Ranks of `A^0, A^1, …, A^p` for a dense nilpotent block.
fn rank_sequence(field: &Field, a: &Matrix) -> Vec<usize> {
    let p = field.p() as usize;
    let mut ranks = vec![a.rows()];
    let mut power = a.clone();
    for _ in 1..=p {
        let r = power.rank(field);
        ranks.push(r);
        if r == 0 {
            break;
        }
        power = power.mul(field, a);
    }
    ranks.resize(p + 2, 0);
    ranks
}

fn add_type_from_ranks(blocks: &mut [u64], ranks: &[usize]) {
    for s in 1..=blocks.len() {
        let m = ranks[s - 1] as i64 - 2 * ranks[s] as i64 + ranks[s + 1] as i64;
        debug_assert!(m >= 0);
        blocks[s - 1] += m as u64;
    }
}

/// Jordan type from rank sequences, computed blockwise on the connected
/// components of `N`.
pub fn jordan_type_of(v: &CyclicRep) -> JordanType {
    let field = v.field();
    let mut blocks = vec![0u64; v.p as usize];
    for comp in v.nil.components() {
        if comp.len() == 1 {
            blocks[0] += 1;
            continue;
        }
        let ranks = rank_sequence(&field, &v.nil.block(&comp));
        add_type_from_ranks(&mut blocks, &ranks);
    }
    JordanType { p: v.p, blocks }
}

/// Erases `J_p` blocks and relabels `J_i` as `L_i`.
pub fn semisimplify(t: &JordanType) -> VerObject {
    t.semisimplify()
}

pub fn semisimplify_rep(v: &CyclicRep) -> VerObject {
    jordan_type_of(v).semisimplify()
}

/// Number of non-projective indecomposable summands of `V^{⊗n}`.
pub fn delta_n(v: &CyclicRep, n: u32, cap: usize) -> Result<u64> {
    Ok(jordan_type_of(&tensor_power(v, n, cap)?).non_projective_count())
}

pub fn stable_jordan_type(v: &CyclicRep) -> JordanType {
    jordan_type_of(v).stable()
}

/// Jordan type of a nilpotent `α` acting on the space of a matrix
/// representation `m`; `α` must satisfy `α^p = 0` and commute with `m`.
pub fn jordan_type_at(p: u32, m: &Matrix, alpha: &Matrix) -> Result<JordanType> {
    let field = Field::new(p)?;
    if !alpha.is_square() || !m.is_square() || m.rows() != alpha.rows() {
        return Err(Error::InvalidArgument("matrix and nilpotent must be square of equal size".into()));
    }
    if !alpha.pow(&field, p).is_zero() {
        return Err(Error::NotNilpotent);
    }
    if alpha.mul(&field, m) != m.mul(&field, alpha) {
        return Err(Error::NotEquivariant);
    }
    Ok(jordan_type_of(&CyclicRep::from_sparse_unchecked(p, SparseMatrix::from_dense(alpha))))
}

/// A `C_p`-equivariant endomorphism of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoClass {
    base: CyclicRep,
    matrix: Matrix,
}

impl EndoClass {
    /// Checks `f N = N f`, i.e. commutation with `1 + N`.
    pub fn new(base: CyclicRep, matrix: Matrix) -> Result<Self> {
        let field = base.field();
        if matrix.rows() != base.dim() || !matrix.is_square() {
            return Err(Error::InvalidArgument("endomorphism has the wrong size".into()));
        }
        let n = base.nil.to_dense();
        if matrix.mul(&field, &n) != n.mul(&field, &matrix) {
            return Err(Error::NotEquivariant);
        }
        Ok(EndoClass { base, matrix })
    }

    pub fn identity(base: CyclicRep) -> Self {
        let d = base.dim();
        EndoClass { base, matrix: Matrix::identity(d) }
    }

    pub fn zero(base: CyclicRep) -> Self {
        let d = base.dim();
        EndoClass { base, matrix: Matrix::zeros(d, d) }
    }

    pub fn base(&self) -> &CyclicRep {
        &self.base
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, other: &EndoClass) -> Result<EndoClass> {
        if self.base != other.base {
            return Err(Error::InvalidArgument("endomorphisms of different modules".into()));
        }
        let field = self.base.field();
        Ok(EndoClass { base: self.base.clone(), matrix: self.matrix.mul(&field, &other.matrix) })
    }
}

/// Bases of `ker N^i` (vectors `v`, giving `ι_v: J_i → V`, `x^k ↦ N^k v`) and of
/// the left kernel of `N^i` (functionals `φ`, giving `π_φ: V → J_i`), for
/// `i = 1 .. p-1`. Computed blockwise on the components of `N`.
pub(crate) struct HomBases {
    pub into: Vec<Vec<Vec<u8>>>,
    pub out_of: Vec<Vec<Vec<u8>>>,
}

pub(crate) fn hom_bases(v: &CyclicRep, only: &[usize]) -> HomBases {
    let field = v.field();
    let p = v.p as usize;
    let dim = v.dim();
    let mut into = vec![Vec::new(); p];
    let mut out_of = vec![Vec::new(); p];
    for comp in v.nil.components() {
        let a = v.nil.block(&comp);
        let mut power = Matrix::identity(comp.len());
        for i in 1..p {
            power = power.mul(&field, &a);
            if !only.contains(&i) {
                continue;
            }
            let embed = |x: Vec<u8>| {
                let mut full = vec![0u8; dim];
                for (k, &c) in comp.iter().enumerate() {
                    full[c] = x[k];
                }
                full
            };
            into[i].extend(power.kernel(&field).into_iter().map(embed));
            out_of[i].extend(power.transpose().kernel(&field).into_iter().map(embed));
        }
    }
    HomBases { into, out_of }
}

/// Image of `f` in `Ver_p`: the multiplicity of `L_i` is the rank of the
/// pairing `(φ, v) ↦ tr(π_φ ∘ f ∘ ι_v) = i·φ(f N^{i-1} v)`.
pub fn image_in_semisimplification(f: &EndoClass) -> VerObject {
    let v = &f.base;
    let field = v.field();
    let p = v.p as usize;
    let mut mult = vec![0u64; (p - 1).max(1)];
    let present: Vec<usize> = (1..p).filter(|&i| jordan_type_of(v).multiplicity(i) > 0).collect();
    let homs = hom_bases(v, &present);
    for &i in &present {
        let cols: Vec<Vec<u8>> = homs.into[i]
            .iter()
            .map(|k| {
                let mut w = k.clone();
                for _ in 1..i {
                    w = v.nil.apply(&field, &w);
                }
                f.matrix.mul_vec(&field, &w)
            })
            .collect();
        let mut pairing = Matrix::zeros(homs.out_of[i].len(), cols.len());
        for (a, phi) in homs.out_of[i].iter().enumerate() {
            for (b, c) in cols.iter().enumerate() {
                pairing.set(a, b, field.dot(phi, c));
            }
        }
        mult[i - 1] = pairing.rank(&field) as u64;
    }
    VerObject::new(v.p, mult).expect("lengths agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::fuse;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAP: usize = crate::DEFAULT_CAP;

    fn jt(p: u32, s: &str) -> JordanType {
        JordanType::parse(p, s).unwrap()
    }

    fn rep(p: u32, s: &str) -> CyclicRep {
        CyclicRep::from_jordan_type(&jt(p, s)).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(jordan_type_of(&tensor(&rep(2, "J2"), &rep(2, "J2"), CAP).unwrap()), jt(2, "2*J2"));
        assert_eq!(jordan_type_of(&tensor(&rep(3, "J2"), &rep(3, "J2"), CAP).unwrap()), jt(3, "J1+J3"));
        let v = rep(5, "J2+J3");
        assert_eq!(tensor(&rep(5, "J1"), &v, CAP).unwrap(), v);
        assert_eq!(
            tensor(&rep(5, "J4"), &rep(5, "J4"), 10),
            Err(Error::CapExceeded { dim: 16, cap: 10 })
        );
        assert!(tensor(&rep(5, "J1"), &rep(3, "J1"), CAP).is_err());
        // J_3 ⊗ J_3 at p = 5 is J_1 ⊕ J_3 ⊕ J_5
        assert_eq!(jordan_type_of(&tensor(&rep(5, "J3"), &rep(5, "J3"), CAP).unwrap()), jt(5, "J1+J3+J5"));
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(jordan_type_of(&CyclicRep::trivial(5, 4).unwrap()), jt(5, "4*J1"));
        assert_eq!(jordan_type_of(&rep(7, "J7")), jt(7, "J7"));
        // (2,2) over GF(3), written as a companion-style matrix with N e1 = e2, N e3 = e4
        let f = Field::new(3).unwrap();
        let m = Matrix::from_i64_rows(
            &f,
            &[vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0]],
        )
        .unwrap();
        let v = CyclicRep::new(3, &m).unwrap();
        assert_eq!(jordan_type_of(&v), jt(3, "2*J2"));
        let bad = Matrix::from_i64_rows(&f, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(CyclicRep::new(3, &bad), Err(Error::NotNilpotent));
    }

    #[test]
    fn jordan_type_at_examples() {
        let f = Field::new(5).unwrap();
        let n = rep(5, "J5").nilpotent().to_dense();
        let id = Matrix::identity(5);
        assert_eq!(jordan_type_at(5, &id, &Matrix::zeros(5, 5)).unwrap(), jt(5, "5*J1"));
        assert_eq!(jordan_type_at(5, &id, &n).unwrap(), jt(5, "J5"));
        assert_eq!(jordan_type_at(5, &id, &n.mul(&f, &n)).unwrap(), jt(5, "J2+J3"));
        assert_eq!(jordan_type_at(5, &id, &id), Err(Error::NotNilpotent));
        let diag = Matrix::from_i64_rows(&f, &[vec![1, 0], vec![0, 2]]).unwrap();
        let nil = Matrix::from_i64_rows(&f, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(jordan_type_at(5, &diag, &nil), Err(Error::NotEquivariant));
    }

    #[test]
    fn semisimplify_examples() {
        assert_eq!(semisimplify(&jt(5, "J1+J3+2*J5")), VerObject::parse(5, "L1+L3").unwrap());
        assert!(semisimplify(&jt(2, "J2")).is_zero());
        assert_eq!(semisimplify(&jt(2, "3*J1+J2")), VerObject::parse(2, "3*L1").unwrap());
    }

    #[test]
    fn delta_n_examples() {
        assert_eq!(delta_n(&rep(3, "J2"), 2, CAP).unwrap(), 1);
        for p in [2u32, 3, 5] {
            for n in 1..4 {
                assert_eq!(delta_n(&rep(p, &format!("J{p}")), n, CAP).unwrap(), 0);
            }
        }
        assert_eq!(delta_n(&rep(5, "J2"), 0, CAP).unwrap(), 1);
        assert_eq!(stable_jordan_type(&rep(3, "J1+J3")), jt(3, "J1"));
    }

    #[test]
    fn image_of_identity_and_zero() {
        for s in ["J1+J2+J3", "2*J2+J5", "J4+J5", "J1"] {
            let v = rep(5, s);
            assert_eq!(image_in_semisimplification(&EndoClass::identity(v.clone())), semisimplify_rep(&v));
            assert!(image_in_semisimplification(&EndoClass::zero(v)).is_zero());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = rep(3, "J1+2*J2+J3").random_conjugate(&mut rng);
        assert_eq!(image_in_semisimplification(&EndoClass::identity(v.clone())), VerObject::parse(3, "L1+2*L2").unwrap());
    }

    #[test]
    fn image_of_block_projections() {
        // the projection onto one J_2 summand of 2·J_2 has image L_2
        let v = rep(5, "2*J2");
        let mut m = Matrix::zeros(4, 4);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        let e = EndoClass::new(v.clone(), m).unwrap();
        assert_eq!(image_in_semisimplification(&e), VerObject::parse(5, "L2").unwrap());
        // N itself is negligible on J_2 ⊕ J_2
        let n = EndoClass::new(v.clone(), v.nilpotent().to_dense()).unwrap();
        assert!(image_in_semisimplification(&n).is_zero());
        let mut bad = Matrix::zeros(4, 4);
        bad.set(0, 1, 1);
        bad.set(1, 1, 1);
        assert_eq!(EndoClass::new(v, bad), Err(Error::NotEquivariant));
    }

    #[test]
    fn json_round_trip() {
        let t = jt(5, "J2+2*J5");
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"p":5,"blocks":[0,1,0,0,2]}"#);
        assert_eq!(serde_json::from_str::<JordanType>(&s).unwrap(), t);
        let v = rep(3, "J2");
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"p":3,"nilpotent":[[0,1],[0,0]]}"#);
        assert_eq!(serde_json::from_str::<CyclicRep>(&s).unwrap(), v);
        assert!(serde_json::from_str::<CyclicRep>(r#"{"p":3,"nilpotent":[[1,0],[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<CyclicRep>(r#"{"p":3,"nilpotent":[[0,5],[0,0]]}"#).is_err());
        assert_eq!(jt(7, "J2 + 2*J3").to_string(), "J2 + 2*J3");
    }

    fn arb_type(p: u32, max_dim: u64) -> impl Strategy<Value = JordanType> {
        prop::collection::vec(0u64..3, p as usize).prop_filter_map("dimension bound", move |b| {
            let t = JordanType::new(p, b).unwrap();
            (t.dim() <= max_dim).then_some(t)
        })
    }

    fn arb_type_pair(max_dim: u64) -> impl Strategy<Value = (JordanType, JordanType, u64)> {
        prop::sample::select(vec![2u32, 3, 5, 7])
            .prop_flat_map(move |p| (arb_type(p, max_dim), arb_type(p, max_dim), any::<u64>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip_through_realizations(t in prop::sample::select(vec![2u32, 3, 5, 7]).prop_flat_map(|p| arb_type(p, 30)), seed in any::<u64>()) {
            let v = CyclicRep::from_jordan_type(&t).unwrap();
            prop_assert_eq!(jordan_type_of(&v), t.clone());
            if t.dim() <= 12 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                prop_assert_eq!(jordan_type_of(&v.random_conjugate(&mut rng)), t);
            }
        }

        #[test]
        fn tensor_depends_only_on_types((s, t, seed) in arb_type_pair(8)) {
            let (v, w) = (CyclicRep::from_jordan_type(&s).unwrap(), CyclicRep::from_jordan_type(&t).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vw = jordan_type_of(&tensor(&v, &w, CAP).unwrap());
            prop_assert_eq!(vw.dim(), s.dim() * t.dim());
            prop_assert_eq!(&vw, &jordan_type_of(&tensor(&w, &v, CAP).unwrap()));
            let (v2, w2) = (v.random_conjugate(&mut rng), w.random_conjugate(&mut rng));
            prop_assert_eq!(&vw, &jordan_type_of(&tensor(&v2, &w2, CAP).unwrap()));
            prop_assert_eq!(vw.semisimplify(), fuse(&s.semisimplify(), &t.semisimplify()).unwrap());
        }

        #[test]
        fn semisimplify_is_additive((s, t, _) in arb_type_pair(20)) {
            let v = CyclicRep::from_jordan_type(&s).unwrap().direct_sum(&CyclicRep::from_jordan_type(&t).unwrap()).unwrap();
            prop_assert_eq!(semisimplify_rep(&v), s.semisimplify().direct_sum(&t.semisimplify()).unwrap());
        }

        #[test]
        fn image_rank_invariant_under_invertibles((s, _, seed) in arb_type_pair(8)) {
            // conjugating the identity by an automorphism of V keeps the image
            let v = CyclicRep::from_jordan_type(&s).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = v.field();
            let n = v.nilpotent().to_dense();
            // 1 + N + c N^2 is an invertible endomorphism commuting with N
            let c = rand::Rng::gen_range(&mut rng, 0..v.p()) as u8;
            let mut u = Matrix::identity(v.dim()).add(&field, &n);
            let mut n2 = n.mul(&field, &n);
            n2.scale(&field, c);
            u = u.add(&field, &n2);
            let e = EndoClass::new(v.clone(), u).unwrap();
            prop_assert_eq!(image_in_semisimplification(&e), semisimplify_rep(&v));
        }
    }
}
