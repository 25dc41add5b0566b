//! Dense matrices over Q.
//!
//! Everything the library knows about subspaces goes through row reduction
//! here. The instances are tiny (a few dozen rows and columns), so plain
//! Gauss-Jordan elimination on `BigRational` entries is all that is needed.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`rref_and_rank`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut data = Vec::new();
        let mut n = 0;
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
            n += 1;
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| super::q(x)).collect()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rref(&self) -> Rref {
        rref_and_rank(self)
    }

    pub fn rank(&self) -> usize {
        rref_and_rank(self).rank
    }

    /// Nonzero rows of the reduced row-echelon form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let r = rref_and_rank(self);
        Matrix::from_rows(self.cols, (0..r.rank).map(|i| r.matrix.row(i).to_vec()))
    }

    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }

    pub fn row_space_contains(&self, v: &[Rational]) -> bool {
        let mut m = self.clone();
        let before = m.rank();
        m.push_row(v.to_vec());
        m.rank() == before
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form, pivot columns and rank.
pub fn rref_and_rank(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = &a[(i, j)] - &factor * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: pivots.len(), pivots }
}

/// Basis of the right null space. Each vector has first nonzero entry 1.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let Rref { matrix: a, pivots, .. } = rref_and_rank(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -a[(row, free)].clone();
        }
        normalize_leading(&mut v);
        basis.push(v);
    }
    basis
}

/// Scales `v` so its first nonzero entry is 1. Leaves the zero vector alone.
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x /= &lead;
            }
        }
    }
}

/// Intersection of two row spaces (inside the same ambient space), as an RREF basis.
pub fn intersect_row_spaces(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols, b.cols);
    let cols = a.cols;
    let a = a.row_space_basis();
    let b = b.row_space_basis();
    if a.rows == 0 || b.rows == 0 {
        return Matrix::zeros(0, cols);
    }
    // x·A = y·B  <=>  [A; -B]^T (x, y) = 0
    let mut stacked = a.clone();
    for i in 0..b.rows {
        stacked.push_row(b.row(i).iter().map(|v| -v.clone()).collect());
    }
    let relations = kernel_basis(&stacked.transpose());
    let vecs = relations.into_iter().map(|rel| {
        let mut v = vec![Rational::zero(); cols];
        for (i, coeff) in rel.iter().take(a.rows).enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for j in 0..cols {
                v[j] += coeff * &a[(i, j)];
            }
        }
        v
    });
    Matrix::from_rows(cols, vecs).row_space_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn identity_is_reduced() {
        let r = rref_and_rank(&Matrix::identity(2));
        assert_eq!(r.matrix, Matrix::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());
    }

    #[test]
    fn proportional_rows() {
        let r = rref_and_rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn antidiagonal_kernel() {
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(kernel_basis(&m).len(), 3);
        let m = Matrix::zeros(2, 0);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn intersection() {
        let a = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = Matrix::from_i64(&[&[0, 1, 1], &[1, 1, 0]]);
        let i = intersect_row_spaces(&a, &b);
        assert_eq!(i, Matrix::from_i64(&[&[1, 1, 0]]));
    }
}
