//! Dense exact matrices over the rational or Gaussian-rational field.
//!
//! Matrices act on column vectors; `m.apply(v)` computes `m * v`. Row
//! reduction uses Bareiss-style fraction-free elimination: rows are scaled to
//! integral entries first, so every intermediate value is a minor of an
//! integer matrix divided by an earlier pivot, which bounds coefficient swell
//! while staying exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{ExactScalar, GaussScalar, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    entries: Vec<K>,
}

/// Output of row reduction: the reduced row-echelon form together with the
/// pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<K> {
    pub matrix: Matrix<K>,
    pub pivots: Vec<usize>,
}

impl<K> Echelon<K> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<K: Scalar> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Build from row vectors; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<K>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix construction from rows",
            });
        }
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(Matrix {
            rows: nrows,
            cols,
            entries,
        })
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

    pub fn at(&self, r: usize, c: usize) -> &K {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn map<L: Scalar>(&self, mut f: impl FnMut(&K) -> L) -> Matrix<L> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    pub fn conjugate(&self) -> Self {
        self.map(|x| x.conjugate())
    }

    pub fn is_real_matrix(&self) -> bool {
        self.entries.iter().all(|x| x.is_real())
    }

    pub fn scale(&self, s: &K) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix addition",
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-K::one())))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix multiplication",
            });
        }
        let mut out: Matrix<K> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    *out.at_mut(r, c) = cur + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[K]) -> Result<Vec<K>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `self^k` for a square matrix; `self^0` is the identity.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                context: "matrix power",
            });
        }
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vertical stack",
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Concatenate `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "horizontal stack",
            });
        }
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..other.cols {
                *out.at_mut(r, self.cols + c) = other.at(r, c).clone();
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.at(r, cols[c]).clone())
    }

    /// Reduced row-echelon form with pivot bookkeeping.
    ///
    /// Forward phase: per-row denominator clearing followed by one-step
    /// Bareiss elimination (the division by the previous pivot is exact on
    /// integral rows). Backward phase: ordinary field arithmetic on the small
    /// echelon remainder to normalize pivots to 1 and clear above them. The
    /// result is the unique RREF of the row space.
    pub fn echelon(&self) -> Echelon<K> {
        let mut m = self.row_vectors();
        for row in m.iter_mut() {
            let f = K::denominator_clearing_factor(row);
            if !f.is_one() {
                for x in row.iter_mut() {
                    *x = x.clone() * f.clone();
                }
            }
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prev = K::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = m[r][c].clone() * m[i][j].clone() - m[i][c].clone() * m[r][j].clone();
                    m[i][j] = num / prev.clone();
                }
                m[i][c] = K::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        // Back substitution over the field.
        for idx in (0..pivots.len()).rev() {
            let c = pivots[idx];
            let p = m[idx][c].clone();
            for j in c..cols {
                m[idx][j] = m[idx][j].clone() / p.clone();
            }
            for i in 0..idx {
                let f = m[i][c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[idx][j].clone();
                }
            }
        }
        debug_assert!(m
            .iter()
            .skip(pivots.len())
            .all(|row| row.iter().all(|x| x.is_zero())));
        let matrix = Matrix {
            rows,
            cols,
            entries: m.into_iter().flatten().collect(),
        };
        Echelon { matrix, pivots }
    }

    /// The unique reduced row-echelon form; the row space is preserved.
    pub fn rref(&self) -> Matrix<K> {
        self.echelon().matrix
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Exact determinant of a square matrix via fraction-free elimination.
    pub fn determinant(&self) -> Result<K> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                context: "determinant",
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(K::one());
        }
        let mut m = self.row_vectors();
        // Row scaling multiplies the determinant; divide back out at the end.
        let mut scaling = K::one();
        for row in m.iter_mut() {
            let f = K::denominator_clearing_factor(row);
            if !f.is_one() {
                for x in row.iter_mut() {
                    *x = x.clone() * f.clone();
                }
                scaling = scaling * f;
            }
        }
        let mut prev = K::one();
        let mut negate = false;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Ok(K::zero());
            };
            if pr != c {
                m.swap(c, pr);
                negate = !negate;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let num = m[c][c].clone() * m[i][j].clone() - m[i][c].clone() * m[c][j].clone();
                    m[i][j] = num / prev.clone();
                }
                m[i][c] = K::zero();
            }
            prev = m[c][c].clone();
        }
        let det = m[n - 1][n - 1].clone() / scaling;
        Ok(if negate { -det } else { det })
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix<K>>> {
        if !self.is_square() {
            return Err(Error::NotSquare { context: "inverse" });
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let ech = aug.echelon();
        if ech.rank() < n || ech.pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return Ok(None);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(Some(ech.matrix.select_columns(&cols)))
    }
}

impl Matrix<ExactScalar> {
    /// Are all entries integers?
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// Embed into the Gaussian rationals.
    pub fn complexify(&self) -> Matrix<GaussScalar> {
        self.map(|x| GaussScalar::from_rational(x.clone()))
    }
}

impl Matrix<GaussScalar> {
    /// Extract the rational matrix, failing if any entry has an imaginary
    /// part.
    pub fn realify(&self, context: &'static str) -> Result<Matrix<ExactScalar>> {
        if !self.is_real_matrix() {
            return Err(Error::NotReal { context });
        }
        Ok(self.map(|x| x.real_part()))
    }
}

/// Matrix of integer literals, mostly for tests and fixtures.
pub fn mat_i64(rows: &[&[i64]]) -> Matrix<ExactScalar> {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect())
            .collect(),
        cols,
    )
    .expect("ragged rows in mat_i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn rref_identity_is_fixed() {
        let id: Matrix<ExactScalar> = Matrix::identity(3);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_rank_one() {
        let m = mat_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(m.rref(), mat_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_with_fractions() {
        let m = Matrix::from_rows(
            alloc::vec![
                alloc::vec![rat(1, 2), rat(1, 3)],
                alloc::vec![rat(1, 4), rat(1, 5)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rref(), mat_i64(&[&[1, 0], &[0, 1]]).rref());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = mat_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), int(1));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        let singular = mat_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant().unwrap(), int(0));
        assert!(singular.inverse().unwrap().is_none());
    }

    #[test]
    fn zero_sized_edges() {
        let m: Matrix<ExactScalar> = Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.rref(), m);
        let id0: Matrix<ExactScalar> = Matrix::identity(0);
        assert_eq!(id0.determinant().unwrap(), int(1));
    }
}
