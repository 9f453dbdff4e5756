//! Dense matrices and subspaces over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::{to_string, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut r = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = r.get(i, j) + a * b;
                        r.set(i, j, v);
                    }
                }
            }
        }
        r
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "vector length");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Rows stacked below `self`.
    pub fn stack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols, "matrix shapes");
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix { rows: self.rows + below.rows, cols: self.cols, data }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = Q::one() / m.get(r, c);
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        if let Some(r) = self.rank_mod_prime() {
            if r == self.rows.min(self.cols) {
                return r;
            }
        }
        self.rref().1.len()
    }

    /// Rank of the reduction modulo `2^61 - 1`, or `None` if some
    /// denominator is divisible by it. It never exceeds the rational rank,
    /// so a maximal value is exact.
    pub fn rank_mod_prime(&self) -> Option<usize> {
        const P: u64 = (1 << 61) - 1;
        let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
        let powm = |mut a: u64, mut e: u64| {
            let mut r = 1;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulm(r, a);
                }
                a = mulm(a, a);
                e >>= 1;
            }
            r
        };
        let big = BigInt::from(P);
        let red = |x: &BigInt| -> u64 { x.mod_floor(&big).to_u64().expect("reduced") };
        let mut m = Vec::with_capacity(self.data.len());
        for x in &self.data {
            let d = red(x.denom());
            if d == 0 {
                return None;
            }
            m.push(mulm(red(x.numer()), powm(d, P - 2)));
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = powm(m[r * cols + c], P - 2);
            for i in r + 1..rows {
                let f = mulm(m[i * cols + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = mulm(f, m[r * cols + j]);
                    m[i * cols + j] = (m[i * cols + j] + P - v) % P;
                }
            }
            r += 1;
        }
        Some(r)
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, &self.columns())
    }

    /// `{x : self x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs: Vec<Vec<Q>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        Subspace::span(self.cols, &vecs)
    }
}

/// A subspace of `Q^n` stored by the reduced echelon basis of its span, so
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace { ambient, basis: Vec::new(), pivots: Vec::new() };
        }
        let m = Matrix::from_columns(ambient, vectors).transpose();
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(ambient, &Matrix::identity(ambient).columns())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    /// The basis as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![Q::zero(); self.ambient];
        for (b, x) in self.basis.iter().zip(&c) {
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += bi * x;
            }
        }
        (w == v).then_some(c)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `{w in self : a w = 0}`.
    pub fn restricted_kernel(&self, a: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        let b = self.basis_matrix();
        let k = a.mul(&b).kernel();
        let vecs: Vec<Vec<Q>> = k.basis.iter().map(|c| b.apply(c)).collect();
        Subspace::span(self.ambient, &vecs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // w = B x = C y  ⇔  [B | -C] (x, y) = 0
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::span(self.ambient, &[]);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let k = Matrix::from_columns(self.ambient, &cols).kernel();
        let b = self.basis_matrix();
        let vecs: Vec<Vec<Q>> = k.basis.iter().map(|c| b.apply(&c[..self.dim()])).collect();
        Subspace::span(self.ambient, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols: Vec<Vec<Q>> = (0..rows[0].len()).map(|j| rows.iter().map(|r| qi(r[j])).collect()).collect();
        Matrix::from_columns(rows.len(), &cols)
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        assert!(a.apply(&k.basis()[0]).iter().all(|x| x.is_zero()));
        assert!(Matrix::identity(3).is_identity());
    }

    #[test]
    fn subspaces() {
        let s = Subspace::span(3, &[vec![qi(1), qi(1), qi(0)], vec![qi(2), qi(2), qi(0)]]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[q(1, 2), q(1, 2), qi(0)]));
        assert!(!s.contains(&[qi(1), qi(0), qi(0)]));
        let t = Subspace::span(3, &[vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]]);
        assert_eq!(t.intersection(&s), s);
        assert_eq!(s.coordinates(&[qi(3), qi(3), qi(0)]), Some(vec![qi(3)]));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12)) {
            let rows: Vec<&[i64]> = entries.chunks(4).collect();
            let a = m(&rows);
            prop_assert_eq!(a.rank() + a.kernel().dim(), 4);
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(a.column_space().dim(), a.rank());
            prop_assert_eq!(a.rank_mod_prime(), Some(a.rref().1.len()));
        }
    }
}
