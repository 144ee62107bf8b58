//! Dense and sparse linear algebra over `GF(p)` for `p < 256`.
//!
//! Entries are stored as `u8` residues. Elimination works on dense rows with a
//! multiplication-table row operation; for `p = 2` rows are packed into `u64`
//! words and reduced with XOR.

use crate::{check_prime, Error, Result};

/// Arithmetic tables for `GF(p)`.
#[derive(Clone, Debug)]
pub struct Field {
    p: u8,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(p: u32) -> Result<Field> {
        check_prime(p)?;
        if p > 251 {
            return Err(Error::InvalidArgument(format!("modular computations need p < 256, got {p}")));
        }
        let mut mul = vec![0u8; (p * p) as usize];
        let mut inv = vec![0u8; p as usize];
        for a in 0..p {
            for b in 0..p {
                let c = (a * b % p) as u8;
                mul[(a * p + b) as usize] = c;
                if c == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        Ok(Field { p: p as u8, mul, inv })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        if s >= self.p as u16 {
            (s - self.p as u16) as u8
        } else {
            s as u8
        }
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.p as usize + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn from_i64(&self, a: i64) -> u8 {
        a.rem_euclid(self.p as i64) as u8
    }

    fn mul_row(&self, c: u8) -> &[u8] {
        let s = c as usize * self.p as usize;
        &self.mul[s..s + self.p as usize]
    }

    /// `dst += c * src`, entrywise.
    pub fn axpy(&self, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        let m = self.mul_row(c);
        let p = self.p as u16;
        for (d, &s) in dst.iter_mut().zip(src) {
            let v = *d as u16 + m[s as usize] as u16;
            *d = if v >= p { (v - p) as u8 } else { v as u8 };
        }
    }

    pub fn scale(&self, v: &mut [u8], c: u8) {
        let m = self.mul_row(c);
        for x in v.iter_mut() {
            *x = m[*x as usize];
        }
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for (&x, &y) in a.iter().zip(b) {
            acc += x as u64 * y as u64;
            if acc >= 1 << 60 {
                acc %= p;
            }
        }
        (acc % p) as u8
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u8>>, cols: usize) -> Result<Matrix> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::InvalidArgument("ragged matrix".into()));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    /// Parses integer rows, reducing every entry mod `p`.
    pub fn from_i64_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let (row_out, row_a) = (i * other.cols, i * self.cols);
            for k in 0..self.cols {
                let a = self.data[row_a + k];
                if a != 0 {
                    field.axpy(&mut out.data[row_out..row_out + other.cols], a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, v: &[u8]) -> Vec<u8> {
        (0..self.rows).map(|i| field.dot(self.row(i), v)).collect()
    }

    pub fn add(&self, field: &Field, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        field.axpy(&mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        field.axpy(&mut out.data, field.neg(1), &other.data);
        out
    }

    pub fn scale(&mut self, field: &Field, c: u8) {
        field.scale(&mut self.data, c);
    }

    pub fn pow(&self, field: &Field, e: u32) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(field, self);
        }
        out
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut m = self.clone();
        rref(field, &mut m).len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = rref(field, &mut m);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = rref(field, &mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }
}

/// Reduces `m` in place to reduced row echelon form (pivots equal to 1,
/// zero rows last) and returns the pivot columns.
pub fn rref(field: &Field, m: &mut Matrix) -> Vec<usize> {
    if field.p() == 2 {
        let mut bits = BitMatrix::from_matrix(m);
        let pivots = bits.rref();
        *m = bits.to_matrix();
        return pivots;
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else { continue };
        if pr != r {
            for k in 0..cols {
                m.data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(m.get(r, c));
        field.scale(m.row_mut(r), inv);
        let pivot_row = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i != r {
                let f = m.get(i, c);
                if f != 0 {
                    let neg = field.neg(f);
                    field.axpy(&mut m.row_mut(i)[c..], neg, &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Packed `GF(2)` matrix used as the fast path of [`rref`].
struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn from_matrix(m: &Matrix) -> BitMatrix {
        let words = m.cols.div_ceil(64).max(1);
        let mut data = vec![0u64; m.rows * words];
        for i in 0..m.rows {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x & 1 == 1 {
                    data[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        BitMatrix { rows: m.rows, cols: m.cols, words, data }
    }

    fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1 {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }

    fn bit(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn rref(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.bit(i, c)) else { continue };
            if pr != r {
                for k in 0..w {
                    self.data.swap(pr * w + k, r * w + k);
                }
            }
            let start = c / 64;
            for i in 0..self.rows {
                if i != r && self.bit(i, c) {
                    for k in start..w {
                        let v = self.data[r * w + k];
                        self.data[i * w + k] ^= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// A subspace of `GF(p)^n`, held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the given vectors.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<u8>]) -> Subspace {
        let mut m = Matrix::zeros(vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            m.row_mut(i).copy_from_slice(v);
        }
        let pivots = rref(field, &mut m);
        m.rows = pivots.len();
        m.data.truncate(pivots.len() * ambient);
        Subspace { ambient, basis: m, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Eliminates the pivot coordinates of `v`; zero iff `v` lies in the subspace.
    pub fn reduce(&self, field: &Field, v: &mut [u8]) {
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = v[c];
            if f != 0 {
                field.axpy(v, field.neg(f), self.basis.row(r));
            }
        }
    }

    pub fn contains(&self, field: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, field: &Field, v: &[u8]) -> Option<Vec<u8>> {
        let c: Vec<u8> = self.pivots.iter().map(|&j| v[j]).collect();
        let mut w = v.to_vec();
        for (r, &x) in c.iter().enumerate() {
            field.axpy(&mut w, field.neg(x), self.basis.row(r));
        }
        w.iter().all(|&x| x == 0).then_some(c)
    }
}

/// Square sparse matrix stored by columns: `cols[j]` lists `(i, a_ij)` with `a_ij ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    cols: Vec<Vec<(usize, u8)>>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> SparseMatrix {
        SparseMatrix { n, cols: vec![Vec::new(); n] }
    }

    pub fn from_columns(n: usize, cols: Vec<Vec<(usize, u8)>>) -> SparseMatrix {
        debug_assert_eq!(cols.len(), n);
        SparseMatrix { n, cols }
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let n = m.rows();
        let mut cols = vec![Vec::new(); n];
        for i in 0..n {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x != 0 {
                    cols[j].push((i, x));
                }
            }
        }
        SparseMatrix { n, cols }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[(usize, u8)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `A v`.
    pub fn apply(&self, field: &Field, v: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.n];
        for (j, &x) in v.iter().enumerate() {
            if x != 0 {
                for &(i, a) in &self.cols[j] {
                    out[i] = field.add(out[i], field.mul(a, x));
                }
            }
        }
        out
    }

    /// `φ A` for a row vector `φ`.
    pub fn apply_left(&self, field: &Field, phi: &[u8]) -> Vec<u8> {
        self.cols
            .iter()
            .map(|col| col.iter().fold(0u8, |acc, &(i, a)| field.add(acc, field.mul(phi[i], a))))
            .collect()
    }

    /// Connected components of the coordinate graph with an edge `i - j`
    /// whenever `a_ij ≠ 0`. The matrix is block diagonal along them.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, _) in col {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// Dense restriction to a set of coordinates closed under the matrix.
    pub fn block(&self, idx: &[usize]) -> Matrix {
        let pos: std::collections::HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for &(i, a) in &self.cols[j] {
                m.set(pos[&i], k, a);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_tables() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.neg(2), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert!(Field::new(4).is_err());
        assert!(Field::new(257).is_err());
    }

    #[test]
    fn rank_and_kernel() {
        let f = Field::new(3).unwrap();
        let m = Matrix::from_i64_rows(&f, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]).unwrap();
        // rows 1 and 2 are proportional mod 3
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&f, &k[0]).iter().all(|&x| x == 0));
        let f2 = Field::new(2).unwrap();
        let m2 = Matrix::from_i64_rows(&f2, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(m2.rank(&f2), 2);
    }

    #[test]
    fn subspace_coords() {
        let f = Field::new(5).unwrap();
        let s = Subspace::span(&f, 3, &[vec![1, 2, 3], vec![0, 1, 2]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&f, &[3, 1, 4]));
        assert!(!s.contains(&f, &[0, 1, 0]));
        let c = s.coords(&f, &[1, 2, 3]).unwrap();
        let mut back = vec![0u8; 3];
        for (r, &x) in c.iter().enumerate() {
            f.axpy(&mut back, x, s.basis().row(r));
        }
        assert_eq!(back, vec![1, 2, 3]);
    }

    fn arb_matrix() -> impl Strategy<Value = (u32, Matrix)> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..9, 1usize..9).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0u8..p as u8, r * c)
                .prop_map(move |data| (p, Matrix::from_rows(data.chunks(c).map(<[u8]>::to_vec).collect(), c).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((p, m) in arb_matrix()) {
            let f = Field::new(p).unwrap();
            let k = m.kernel(&f);
            prop_assert_eq!(m.rank(&f) + k.len(), m.cols());
            prop_assert_eq!(m.rank(&f), m.transpose().rank(&f));
            for v in &k {
                prop_assert!(m.mul_vec(&f, v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn inverse_is_two_sided((p, m) in arb_matrix()) {
            let f = Field::new(p).unwrap();
            if let Some(inv) = m.inverse(&f) {
                prop_assert_eq!(m.mul(&f, &inv), Matrix::identity(m.rows()));
                prop_assert_eq!(inv.mul(&f, &m), Matrix::identity(m.rows()));
            } else {
                prop_assert!(!m.is_square() || m.rank(&f) < m.rows());
            }
        }

        #[test]
        fn bit_path_matches_generic((_, m) in arb_matrix()) {
            // compare the packed GF(2) elimination against a slow rank by minors
            let f = Field::new(2).unwrap();
            let m2 = Matrix::from_rows(m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x & 1).collect()).collect(), m.cols()).unwrap();
            let mut echelon = m2.clone();
            let piv = rref(&f, &mut echelon);
            for (r, &c) in piv.iter().enumerate() {
                prop_assert_eq!(echelon.get(r, c), 1);
                for i in 0..echelon.rows() {
                    if i != r { prop_assert_eq!(echelon.get(i, c), 0); }
                }
            }
            let s = Subspace::span(&f, m2.cols(), &m2.to_rows());
            for row in m2.to_rows() {
                prop_assert!(s.contains(&f, &row));
            }
            prop_assert_eq!(s.dim(), piv.len());
        }

        #[test]
        fn sparse_round_trip((p, m) in arb_matrix()) {
            let f = Field::new(p).unwrap();
            if m.is_square() {
                let s = SparseMatrix::from_dense(&m);
                prop_assert_eq!(s.to_dense(), m.clone());
                let v: Vec<u8> = (0..m.cols()).map(|i| (i % p as usize) as u8).collect();
                prop_assert_eq!(s.apply(&f, &v), m.mul_vec(&f, &v));
                prop_assert_eq!(s.apply_left(&f, &v), m.transpose().mul_vec(&f, &v));
            }
        }
    }
}
