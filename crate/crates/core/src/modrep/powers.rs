//! Tensor powers with their `S_n`-action, and the functors built from it:
//! divided, symmetric and exterior powers, skew-symmetrizer images, the
//! Frobenius functors `Fr_+^{(j)}`, and alternating powers inside `Ver_p`.
//!
//! Multi-indices `(i_1, …, i_n)` are encoded in base `d = dim V` with `i_1`
//! most significant, which matches iterated [`tensor`] from the left.

use std::collections::HashMap;

use super::gf::{Field, Matrix, SparseMatrix, Subspace};
use super::{check_cap, hom_bases, jordan_type_of, tensor_power, CyclicRep, EndoClass};
use crate::fusion::VerObject;
use crate::{Error, Result};

fn decode(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for k in (0..n).rev() {
        digits[k] = idx % d;
        idx /= d;
    }
    digits
}

fn encode(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Calls `f(perm, sign)` for every permutation of `0..n` (Heap's algorithm);
/// `sign` is `true` for odd permutations.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], bool)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    f(&perm, odd);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            perm.swap(j, i);
            odd = !odd;
            f(&perm, odd);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `V^{⊗n}` together with the permutation action of `S_n`.
#[derive(Clone, Debug)]
pub struct PowerSpace {
    base: CyclicRep,
    n: usize,
    rep: CyclicRep,
}

/// Realizes `V^{⊗n}`; requires `dim(V)^n ≤ cap`.
pub fn power_space(v: &CyclicRep, n: usize, cap: usize) -> Result<PowerSpace> {
    let rep = tensor_power(v, n as u32, cap)?;
    Ok(PowerSpace { base: v.clone(), n, rep })
}

impl PowerSpace {
    pub fn rep(&self) -> &CyclicRep {
        &self.rep
    }

    pub fn base(&self) -> &CyclicRep {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of `s·e_I`, where `s` moves the tensor factor in position `k` to position `perm[k]`.
    pub fn permute_index(&self, perm: &[usize], idx: usize) -> usize {
        let d = self.base.dim();
        let digits = decode(idx, d, self.n);
        let mut out = vec![0; self.n];
        for (k, &t) in perm.iter().enumerate() {
            out[t] = digits[k];
        }
        encode(&out, d)
    }

    pub fn permutation_matrix(&self, perm: &[usize]) -> Result<Matrix> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if perm.len() != self.n || sorted.iter().enumerate().any(|(k, &x)| k != x) {
            return Err(Error::InvalidArgument(format!("not a permutation of 0..{}", self.n)));
        }
        let dim = self.rep.dim();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            m.set(self.permute_index(perm, j), j, 1);
        }
        Ok(m)
    }

    /// The adjacent transposition swapping factors `i` and `i + 1` (0-based).
    pub fn transposition(&self, i: usize) -> Result<Matrix> {
        if i + 1 >= self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n.saturating_sub(2) });
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm.swap(i, i + 1);
        self.permutation_matrix(&perm)
    }
}

/// Classes of multi-indices under adjacent transpositions, with the relation
/// `e_{sI} ~ ε e_I`. A class is killed when the relation forces `e_I = -e_I`
/// (only possible for odd `p`).
struct SignedClasses {
    /// For each index: its class and its sign relative to the class representative.
    of: Vec<Option<(usize, u8)>>,
    reps: Vec<usize>,
    members: Vec<Vec<usize>>,
}

fn signed_classes(field: &Field, d: usize, n: usize, eps: u8) -> SignedClasses {
    let total = d.pow(n as u32);
    let mut tentative: Vec<Option<(usize, u8)>> = vec![None; total];
    let mut killed = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..total {
        if tentative[start].is_some() {
            continue;
        }
        let cls = members.len();
        let mut dead = false;
        let mut list = vec![start];
        tentative[start] = Some((cls, 1));
        let mut head = 0;
        while head < list.len() {
            let idx = list[head];
            head += 1;
            let sign = tentative[idx].expect("visited").1;
            let digits = decode(idx, d, n);
            for k in 0..n.saturating_sub(1) {
                let mut sw = digits.clone();
                sw.swap(k, k + 1);
                let j = encode(&sw, d);
                let want = field.mul(eps, sign);
                match tentative[j] {
                    None => {
                        tentative[j] = Some((cls, want));
                        list.push(j);
                    }
                    Some((_, s)) if s != want => dead = true,
                    _ => {}
                }
            }
        }
        killed.push(dead);
        members.push(list);
    }
    let mut renumber = vec![None; members.len()];
    let mut reps = Vec::new();
    let mut kept = Vec::new();
    for (c, list) in members.into_iter().enumerate() {
        if !killed[c] {
            renumber[c] = Some(reps.len());
            reps.push(list[0]);
            kept.push(list);
        }
    }
    let of = tentative
        .into_iter()
        .map(|t| t.and_then(|(c, s)| renumber[c].map(|r| (r, s))))
        .collect();
    SignedClasses { of, reps, members: kept }
}

/// `g^{⊗n} v` for dense `v`, by one mode product per tensor factor.
fn apply_tensor_power(field: &Field, g: &Matrix, d: usize, n: usize, v: &[u8]) -> Vec<u8> {
    let mut cur = v.to_vec();
    let mut x = vec![0u8; d];
    for k in 0..n {
        let stride = d.pow((n - 1 - k) as u32);
        let outer = d.pow(k as u32);
        for o in 0..outer {
            for u in 0..stride {
                let base = o * d * stride + u;
                for (j, xj) in x.iter_mut().enumerate() {
                    *xj = cur[base + j * stride];
                }
                for i in 0..d {
                    cur[base + i * stride] = field.dot(g.row(i), &x);
                }
            }
        }
    }
    cur
}

/// `g^{⊗n} e_I` as a sparse vector.
fn tensor_power_column(field: &Field, g_cols: &[Vec<(usize, u8)>], d: usize, digits: &[usize]) -> Vec<(usize, u8)> {
    let mut acc = vec![(0usize, 1u8)];
    for &j in digits {
        let mut next = Vec::with_capacity(acc.len() * g_cols[j].len());
        for &(idx, a) in &acc {
            for &(i, b) in &g_cols[j] {
                next.push((idx * d + i, field.mul(a, b)));
            }
        }
        acc = next;
    }
    acc
}

fn generator_columns(v: &CyclicRep) -> Vec<Vec<(usize, u8)>> {
    let field = v.field();
    (0..v.dim())
        .map(|j| {
            let mut col: Vec<(usize, u8)> = v.nilpotent().column(j).to_vec();
            match col.iter_mut().find(|(i, _)| *i == j) {
                Some(e) => e.1 = field.add(e.1, 1),
                None => col.push((j, 1)),
            }
            col.retain(|&(_, a)| a != 0);
            col
        })
        .collect()
}

/// Restricts an action to a stable subspace, in its echelon basis.
fn restrict_action(field: &Field, sub: &Subspace, act: impl Fn(&[u8]) -> Vec<u8>) -> Result<SparseMatrix> {
    let dim = sub.dim();
    let mut cols = Vec::with_capacity(dim);
    for r in 0..dim {
        let image = act(sub.basis().row(r));
        let c = sub
            .coords(field, &image)
            .ok_or_else(|| Error::Inconsistent("subspace is not stable under the action".into()))?;
        cols.push(c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect());
    }
    Ok(SparseMatrix::from_columns(dim, cols))
}

fn sign_value(field: &Field, alternating: bool) -> u8 {
    if alternating {
        field.neg(1)
    } else {
        1
    }
}

/// Joint eigenspace `{v : s v = sgn(s)^ε v}` with its induced action; `Γ^n` or `Λ^n`.
fn invariants(v: &CyclicRep, n: usize, alternating: bool, cap: usize) -> Result<CyclicRep> {
    let d = v.dim();
    let total = check_cap((d as u128).saturating_pow(n as u32), cap)?;
    let field = v.field();
    let classes = signed_classes(&field, d, n, sign_value(&field, alternating));
    let basis: Vec<Vec<u8>> = classes
        .members
        .iter()
        .map(|list| {
            let mut b = vec![0u8; total];
            for &i in list {
                b[i] = classes.of[i].expect("kept").1;
            }
            b
        })
        .collect();
    let g = v.generator();
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut w = apply_tensor_power(&field, &g, d, n, b);
        field.axpy(&mut w, field.neg(1), b);
        // coordinates are read at representatives (sign 1), then checked
        let coords: Vec<u8> = classes.reps.iter().map(|&r| w[r]).collect();
        let mut check = w.clone();
        for (c, &x) in coords.iter().enumerate() {
            field.axpy(&mut check, field.neg(x), &basis[c]);
        }
        if check.iter().any(|&x| x != 0) {
            return Err(Error::Inconsistent("invariant subspace is not stable".into()));
        }
        cols.push(coords.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect());
    }
    Ok(CyclicRep::from_sparse_unchecked(v.p(), SparseMatrix::from_columns(basis.len(), cols)))
}

/// Quotient of `V^{⊗n}` by the span of `s e_I - sgn(s)^ε e_I`; `S^n` or `∧^n`.
fn coinvariants(v: &CyclicRep, n: usize, alternating: bool, cap: usize) -> Result<(CyclicRep, SignedClasses)> {
    let d = v.dim();
    check_cap((d as u128).saturating_pow(n as u32), cap)?;
    let field = v.field();
    let classes = signed_classes(&field, d, n, sign_value(&field, alternating));
    let g_cols = generator_columns(v);
    let dim = classes.reps.len();
    let mut cols = Vec::with_capacity(dim);
    for (c, &r) in classes.reps.iter().enumerate() {
        let mut acc = vec![0u8; dim];
        for (idx, a) in tensor_power_column(&field, &g_cols, d, &decode(r, d, n)) {
            if let Some((k, s)) = classes.of[idx] {
                acc[k] = field.add(acc[k], field.mul(a, s));
            }
        }
        acc[c] = field.sub(acc[c], 1);
        cols.push(acc.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect());
    }
    let rep = CyclicRep::from_sparse_unchecked(v.p(), SparseMatrix::from_columns(dim, cols));
    Ok((rep, classes))
}

/// `Γ^n V`: the `S_n`-invariants of `V^{⊗n}`.
pub fn gamma_power(v: &CyclicRep, n: usize, cap: usize) -> Result<CyclicRep> {
    invariants(v, n, false, cap)
}

/// `Λ^n V`: the sign-isotypic part of `V^{⊗n}`.
pub fn lambda_power(v: &CyclicRep, n: usize, cap: usize) -> Result<CyclicRep> {
    invariants(v, n, true, cap)
}

/// `S^n V`: the `S_n`-coinvariants of `V^{⊗n}`.
pub fn sym_power(v: &CyclicRep, n: usize, cap: usize) -> Result<CyclicRep> {
    Ok(coinvariants(v, n, false, cap)?.0)
}

/// `∧^n V`: the sign-coinvariants of `V^{⊗n}`.
pub fn wedge_power(v: &CyclicRep, n: usize, cap: usize) -> Result<CyclicRep> {
    Ok(coinvariants(v, n, true, cap)?.0)
}

/// `a_n e_I = Σ_s sgn(s) e_{sI}` as a sparse vector. Zero when `I` repeats an
/// index: the transposition swapping two equal entries pairs the terms off.
fn skew_column(space_d: usize, n: usize, digits: &[usize], field: &Field) -> Vec<(usize, u8)> {
    let mut sorted = digits.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut buf = vec![0; n];
    for_each_permutation(n, |perm, odd| {
        for (k, &t) in perm.iter().enumerate() {
            buf[t] = digits[k];
        }
        out.push((encode(&buf, space_d), sign_value(field, odd)));
    });
    out
}

/// `A^n V`: the image of the skew-symmetrizer `a_n` on `V^{⊗n}`.
pub fn skew_image(v: &CyclicRep, n: usize, cap: usize) -> Result<CyclicRep> {
    let d = v.dim();
    let total = check_cap((d as u128).saturating_pow(n as u32), cap)?;
    if n == 0 {
        return CyclicRep::trivial(v.p(), 1);
    }
    let field = v.field();
    let columns: Vec<Vec<u8>> = (0..total)
        .filter_map(|j| {
            let col = skew_column(d, n, &decode(j, d, n), &field);
            (!col.is_empty()).then(|| {
                let mut dense = vec![0u8; total];
                for (i, a) in col {
                    dense[i] = field.add(dense[i], a);
                }
                dense
            })
        })
        .collect();
    let image = Subspace::span(&field, total, &columns);
    let g = v.generator();
    let nil = restrict_action(&field, &image, |u| {
        let mut w = apply_tensor_power(&field, &g, d, n, u);
        field.axpy(&mut w, field.neg(1), u);
        w
    })?;
    Ok(CyclicRep::from_sparse_unchecked(v.p(), nil))
}

/// The skew-symmetrizer `a_n` as an endomorphism of `V^{⊗n}` (dense; small spaces only).
pub fn skew_symmetrizer(space: &PowerSpace) -> Result<EndoClass> {
    let rep = space.rep().clone();
    let d = space.base().dim();
    let field = rep.field();
    let dim = rep.dim();
    let mut m = Matrix::zeros(dim, dim);
    for j in 0..dim {
        let digits = decode(j, d, space.n());
        let mut buf = vec![0; space.n()];
        for_each_permutation(space.n(), |perm, odd| {
            for (k, &t) in perm.iter().enumerate() {
                buf[t] = digits[k];
            }
            let i = encode(&buf, d);
            m.set(i, j, field.add(m.get(i, j), sign_value(&field, odd)));
        });
    }
    EndoClass::new(rep, m)
}

/// `Fr_+^{(j)} V`: the image of `Γ^{p^j} V → V^{⊗p^j} → S^{p^j} V`.
pub fn fr_plus(v: &CyclicRep, j: u32, cap: usize) -> Result<CyclicRep> {
    let p = v.p();
    let m = (p as usize).checked_pow(j).ok_or(Error::Overflow)?;
    let d = v.dim();
    check_cap((d as u128).saturating_pow(m as u32), cap)?;
    let field = v.field();
    let (sym, quotient) = coinvariants(v, m, false, cap)?;
    let gamma = signed_classes(&field, d, m, 1);
    let images: Vec<Vec<u8>> = gamma
        .members
        .iter()
        .map(|list| {
            let mut w = vec![0u8; sym.dim()];
            for &i in list {
                let s = gamma.of[i].expect("kept").1;
                if let Some((k, t)) = quotient.of[i] {
                    w[k] = field.add(w[k], field.mul(s, t));
                }
            }
            w
        })
        .collect();
    let image = Subspace::span(&field, sym.dim(), &images);
    let nil = restrict_action(&field, &image, |u| sym.nilpotent().apply(&field, u))?;
    Ok(CyclicRep::from_sparse_unchecked(p, nil))
}

/// `A^n X` computed inside `Ver_p`: the image of `a_n` on `(X^♯)^{⊗n}` under
/// semisimplification.
///
/// `a_n` factors as `ι ∘ q` through the exterior power `E` (with `q` the
/// quotient map and `ι` antisymmetrization), so the pairing matrix for `L_i`
/// is `(φ ∘ ι) · N_E^{i-1} · q(v)` over `v ∈ ker N^i`, `φ` in the left kernel.
/// Only the `L_i` occurring in `Ē` can occur in the image.
pub fn alt_power_ver(x: &VerObject, n: usize, cap: usize) -> Result<VerObject> {
    let p = x.p();
    let lift = CyclicRep::lift(x)?;
    let d = lift.dim();
    if n == 0 {
        return VerObject::unit(p);
    }
    if n > d {
        return VerObject::zero(p);
    }
    check_cap((d as u128).saturating_pow(n as u32), cap)?;
    let field = lift.field();

    let combos = combinations(d, n);
    let position: HashMap<usize, usize> = combos.iter().enumerate().map(|(k, c)| (encode(c, d), k)).collect();
    let quotient = |idx: usize| -> Option<(usize, u8)> {
        let mut digits = decode(idx, d, n);
        let mut odd = false;
        for i in 1..digits.len() {
            let mut k = i;
            while k > 0 && digits[k - 1] > digits[k] {
                digits.swap(k - 1, k);
                odd = !odd;
                k -= 1;
            }
        }
        if digits.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((position[&encode(&digits, d)], sign_value(&field, odd)))
    };

    let g_cols = generator_columns(&lift);
    let e_dim = combos.len();
    let mut e_cols = Vec::with_capacity(e_dim);
    for (c, combo) in combos.iter().enumerate() {
        let mut acc = vec![0u8; e_dim];
        for (idx, a) in tensor_power_column(&field, &g_cols, d, combo) {
            if let Some((k, s)) = quotient(idx) {
                acc[k] = field.add(acc[k], field.mul(a, s));
            }
        }
        acc[c] = field.sub(acc[c], 1);
        e_cols.push(acc.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect());
    }
    let ext = CyclicRep::from_sparse_unchecked(p, SparseMatrix::from_columns(e_dim, e_cols));
    let ext_type = jordan_type_of(&ext);
    let present: Vec<usize> = (1..p as usize).filter(|&i| ext_type.multiplicity(i) > 0).collect();
    let mut mult = vec![0u64; crate::fusion::rank(p)];
    if present.is_empty() {
        return VerObject::new(p, mult);
    }

    let t = tensor_power(&lift, n as u32, cap)?;
    let homs = hom_bases(&t, &present);
    let skew: Vec<Vec<(usize, u8)>> = combos.iter().map(|c| skew_column(d, n, c, &field)).collect();
    for &i in &present {
        let cols: Vec<Vec<u8>> = homs.into[i]
            .iter()
            .map(|k| {
                let mut y = vec![0u8; e_dim];
                for (idx, &a) in k.iter().enumerate() {
                    if a != 0 {
                        if let Some((c, s)) = quotient(idx) {
                            y[c] = field.add(y[c], field.mul(a, s));
                        }
                    }
                }
                for _ in 1..i {
                    y = ext.nilpotent().apply(&field, &y);
                }
                y
            })
            .collect();
        let rows: Vec<Vec<u8>> = homs.out_of[i]
            .iter()
            .map(|phi| {
                skew.iter()
                    .map(|col| col.iter().fold(0u8, |acc, &(idx, s)| field.add(acc, field.mul(phi[idx], s))))
                    .collect()
            })
            .collect();
        let mut pairing = Matrix::zeros(rows.len(), cols.len());
        for (a, r) in rows.iter().enumerate() {
            for (b, c) in cols.iter().enumerate() {
                pairing.set(a, b, field.dot(r, c));
            }
        }
        mult[i - 1] = pairing.rank(&field) as u64;
    }
    VerObject::new(p, mult)
}

/// `A^n X` assembled from the simple summands of `X` through
/// `A^n(Y ⊕ Z) = ⊕_k A^k Y ⊗ A^{n-k} Z`, with each `A^k L_i` computed by
/// [`alt_power_ver`]. Only spaces of dimension at most `i^k` are built, which
/// reaches objects whose direct computation is far beyond the cap.
pub fn alt_power_ver_by_summands(x: &VerObject, n: usize, cap: usize) -> Result<VerObject> {
    let p = x.p();
    // coefficients of Σ_k A^k(X) z^k, truncated at degree n
    let mut poly = vec![VerObject::unit(p)?];
    for i in x.support() {
        let factor: Vec<VerObject> = (0..=i.min(n))
            .map(|k| alt_power_ver(&VerObject::simple(p, i)?, k, cap))
            .collect::<Result<_>>()?;
        for _ in 0..x.multiplicity(i) {
            let mut next = vec![VerObject::zero(p)?; (poly.len() + factor.len() - 1).min(n + 1)];
            for (a, pa) in poly.iter().enumerate() {
                for (b, fb) in factor.iter().enumerate() {
                    if a + b <= n && !pa.is_zero() && !fb.is_zero() {
                        next[a + b] = next[a + b].direct_sum(&crate::fusion::fuse(pa, fb)?)?;
                    }
                }
            }
            poly = next;
        }
    }
    Ok(poly.get(n).cloned().unwrap_or(VerObject::zero(p)?))
}

/// Strictly increasing `n`-tuples from `0..d`, in lexicographic order.
fn combinations(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    if n > d {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < d - n + i) else { break };
        cur[i] += 1;
        for k in i + 1..n {
            cur[k] = cur[k - 1] + 1;
        }
    }
    out
}
