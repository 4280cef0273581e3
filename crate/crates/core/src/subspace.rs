//! Subspaces of `K^n` with canonical bases, and the lattice operations on
//! them.
//!
//! A subspace is stored as the reduced row-echelon basis of its row span.
//! RREF is the unique canonical representative, so subspace equality,
//! containment and filtration comparisons reduce to matrix comparisons.
//! Vectors are columns; basis rows are the transposes of basis vectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::{ExactScalar, GaussScalar, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<K> {
    ambient: usize,
    basis: Matrix<K>,
    pivots: Vec<usize>,
}

impl<K: Scalar> Subspace<K> {
    /// The zero subspace of `K^ambient`.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    /// All of `K^ambient`.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given row vectors.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<K>>) -> Result<Self> {
        Ok(Self::row_space(&Matrix::from_rows(rows, ambient)?))
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix<K>) -> Self {
        let ech = m.echelon();
        let rank = ech.rank();
        let rows = (0..rank).map(|r| ech.matrix.row(r).to_vec()).collect();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_rows(rows, m.cols()).expect("echelon rows are rectangular"),
            pivots: ech.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Canonical (RREF) basis, one basis vector per row.
    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<K>> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Normal form of `v` modulo this subspace: subtract the unique
    /// combination of basis rows matching `v` on the pivot columns. The
    /// result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length must match the ambient dimension"
        );
        let mut w = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let coeff = w[c].clone();
            if coeff.is_zero() {
                continue;
            }
            for j in 0..self.ambient {
                let b = self.basis.at(r, j);
                if !b.is_zero() {
                    w[j] = w[j].clone() - coeff.clone() * b.clone();
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[K]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &Subspace<K>) -> bool {
        self.ambient == other.ambient
            && other
                .basis_rows()
                .iter()
                .all(|row| self.contains_vector(row))
    }

    /// Coordinates of `v` in the canonical basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &[K]) -> Option<Vec<K>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// `{v : m v = 0}`, the right null space of `m`.
    pub fn kernel(m: &Matrix<K>) -> Self {
        let ech = m.echelon();
        let pivots = &ech.pivots;
        let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![K::zero(); m.cols()];
            v[fc] = K::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -ech.matrix.at(r, fc).clone();
            }
            rows.push(v);
        }
        Subspace::from_rows(m.cols(), rows).expect("kernel rows are rectangular")
    }

    /// Column space of `m`, i.e. the image of the operator `v -> m v`.
    pub fn image(m: &Matrix<K>) -> Self {
        Subspace::row_space(&m.transpose())
    }

    /// Image of `s` under the operator `m`.
    pub fn apply(m: &Matrix<K>, s: &Subspace<K>) -> Result<Self> {
        if m.cols() != s.ambient {
            return Err(Error::DimensionMismatch {
                context: "operator applied to subspace",
            });
        }
        let mapped = s.basis.mul(&m.transpose())?;
        Ok(Subspace::row_space(&mapped))
    }

    pub fn sum(a: &Subspace<K>, b: &Subspace<K>) -> Result<Self> {
        if a.ambient != b.ambient {
            return Err(Error::DimensionMismatch {
                context: "subspace sum",
            });
        }
        Ok(Subspace::row_space(&a.basis.vstack(&b.basis)?))
    }

    /// Annihilator under the standard (non-conjugated) dot product. The
    /// pairing is nondegenerate over both fields, so `dim = ambient - dim(S)`
    /// and the double complement is the identity; those two facts are all the
    /// lattice operations rely on.
    pub fn complement(&self) -> Self {
        Subspace::kernel(&self.basis)
    }

    pub fn intersect(a: &Subspace<K>, b: &Subspace<K>) -> Result<Self> {
        if a.ambient != b.ambient {
            return Err(Error::DimensionMismatch {
                context: "subspace intersection",
            });
        }
        Ok(Subspace::sum(&a.complement(), &b.complement())?.complement())
    }

    /// `{x : m x ∈ s}`.
    pub fn preimage(m: &Matrix<K>, s: &Subspace<K>) -> Result<Self> {
        if m.rows() != s.ambient {
            return Err(Error::DimensionMismatch {
                context: "preimage",
            });
        }
        // s = kernel(D) for D the basis of its complement, so the preimage is
        // kernel(D m).
        let d = s.complement().basis.clone();
        Ok(Subspace::kernel(&d.mul(m)?))
    }
}

impl Subspace<ExactScalar> {
    pub fn complexify(&self) -> Subspace<GaussScalar> {
        // The RREF of a real matrix is unchanged by complexification.
        Subspace {
            ambient: self.ambient,
            basis: self.basis.complexify(),
            pivots: self.pivots.clone(),
        }
    }
}

impl Subspace<GaussScalar> {
    /// Entrywise conjugate of the subspace. Conjugation maps an RREF basis to
    /// an RREF basis, so no re-reduction is needed.
    pub fn conjugate(&self) -> Self {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.conjugate(),
            pivots: self.pivots.clone(),
        }
    }
}

/// A quotient `big / small` presented in coordinates: `map` sends ambient
/// vectors to quotient coordinates and `section` embeds quotient coordinates
/// back as representatives inside `big` (`map * section = id`).
///
/// Restricted to `big`, `map` is onto with kernel exactly `small`. (As a map
/// on the full ambient space its kernel also picks up a complement of `big`;
/// only its restriction to `big` is meaningful.)
#[derive(Debug, Clone)]
pub struct Quotient<K> {
    map: Matrix<K>,
    section: Matrix<K>,
    ambient: usize,
}

impl<K: Scalar> Quotient<K> {
    pub fn dim(&self) -> usize {
        self.map.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The quotient projection as a matrix acting on ambient column vectors.
    pub fn map(&self) -> &Matrix<K> {
        &self.map
    }

    /// Right inverse of `map`; columns are representatives in `big`.
    pub fn section(&self) -> &Matrix<K> {
        &self.section
    }

    pub fn project_vector(&self, v: &[K]) -> Result<Vec<K>> {
        self.map.apply(v)
    }

    /// Image in the quotient of a subspace of the ambient space.
    pub fn project_subspace(&self, s: &Subspace<K>) -> Result<Subspace<K>> {
        Subspace::apply(&self.map, s)
    }

    /// Ambient representative of a quotient coordinate vector.
    pub fn lift_vector(&self, coords: &[K]) -> Result<Vec<K>> {
        self.section.apply(coords)
    }

    /// Ambient representatives of a subspace of the quotient.
    pub fn lift_subspace(&self, s: &Subspace<K>) -> Result<Subspace<K>> {
        Subspace::apply(&self.section, s)
    }
}

/// Quotient of `big` by `small`, which must be contained in `big`.
pub fn quotient<K: Scalar>(big: &Subspace<K>, small: &Subspace<K>) -> Result<Quotient<K>> {
    if big.ambient != small.ambient {
        return Err(Error::DimensionMismatch {
            context: "quotient",
        });
    }
    if !big.contains(small) {
        return Err(Error::NotContained {
            context: "quotient",
        });
    }
    let ambient = big.ambient;
    let db = big.dim();
    // Coordinates of big: v ∈ big is determined by its pivot-column entries.
    // Express small in those coordinates and reduce; the free coordinates of
    // that reduction parameterize the quotient.
    let small_in_big = small.basis.select_columns(&big.pivots);
    let rel = Subspace::row_space(&small_in_big);
    debug_assert_eq!(rel.dim(), small.dim());
    let free: Vec<usize> = (0..db).filter(|c| !rel.pivots.contains(c)).collect();
    let q = free.len();

    // map = (select free coords) ∘ (reduce mod rel) ∘ (big coordinates)
    let mut map = Matrix::zeros(q, ambient);
    for (out_idx, &fc) in free.iter().enumerate() {
        // Row vector computing coordinate fc of the reduced big-coordinates.
        // Reduction only changes pivot coordinates of rel, and fc is free, so
        // the fc-coordinate after reduction is:
        //   c_fc - sum_r c_{pivot_r} * rel[r][fc]
        let mut row = vec![K::zero(); db];
        row[fc] = K::one();
        for (r, &pc) in rel.pivots.iter().enumerate() {
            let coeff = rel.basis.at(r, fc).clone();
            if !coeff.is_zero() {
                row[pc] = row[pc].clone() - coeff;
            }
        }
        // Pull back through big coordinates: c_j = v[big.pivots[j]].
        for (j, coeff) in row.into_iter().enumerate() {
            if !coeff.is_zero() {
                *map.at_mut(out_idx, big.pivots[j]) = coeff;
            }
        }
    }

    // section: place quotient coords at the free big-coordinates, zero at the
    // rel pivots, then expand through the basis of big.
    let mut section = Matrix::zeros(ambient, q);
    for (in_idx, &fc) in free.iter().enumerate() {
        for j in 0..ambient {
            let b = big.basis.at(fc, j);
            if !b.is_zero() {
                *section.at_mut(j, in_idx) = b.clone();
            }
        }
    }

    let quot = Quotient {
        map,
        section,
        ambient,
    };
    debug_assert_eq!(
        quot.map.mul(&quot.section).expect("shapes agree"),
        Matrix::identity(q)
    );
    Ok(quot)
}

/// The projection matrix together with the quotient dimension.
pub fn quotient_map<K: Scalar>(
    big: &Subspace<K>,
    small: &Subspace<K>,
) -> Result<(Matrix<K>, usize)> {
    let q = quotient(big, small)?;
    let dim = q.dim();
    Ok((q.map, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_i64;
    use crate::scalar::int;
    use num_traits::Zero;

    fn span(ambient: usize, rows: &[&[i64]]) -> Subspace<ExactScalar> {
        Subspace::from_rows(
            ambient,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let zero: Matrix<ExactScalar> = Matrix::zeros(2, 2);
        assert_eq!(Subspace::kernel(&zero), Subspace::full(2));
        let id: Matrix<ExactScalar> = Matrix::identity(2);
        assert_eq!(Subspace::kernel(&id), Subspace::zero(2));
    }

    #[test]
    fn kernel_of_elementary_nilpotent() {
        let n = mat_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(Subspace::kernel(&n), span(2, &[&[1, 0]]));
    }

    #[test]
    fn intersection_is_idempotent() {
        let s = span(3, &[&[1, 0, 2], &[0, 1, -1]]);
        assert_eq!(Subspace::intersect(&s, &s).unwrap(), s);
    }

    #[test]
    fn sum_of_axes() {
        let e1 = span(3, &[&[1, 0, 0]]);
        let e2 = span(3, &[&[0, 1, 0]]);
        assert_eq!(
            Subspace::sum(&e1, &e2).unwrap(),
            span(3, &[&[1, 0, 0], &[0, 1, 0]])
        );
    }

    #[test]
    fn rank_nullity() {
        let m = mat_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(
            Subspace::kernel(&m).dim() + Subspace::image(&m).dim(),
            m.cols()
        );
    }

    #[test]
    fn quotient_kernel_is_small() {
        let big = span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let small = span(4, &[&[1, 1, 0, 0]]);
        let q = quotient(&big, &small).unwrap();
        assert_eq!(q.dim(), 2);
        // Quotient map kills exactly small inside big.
        for row in small.basis_rows() {
            assert!(q.project_vector(&row).unwrap().iter().all(|x| x.is_zero()));
        }
        let projected = q.project_subspace(&big).unwrap();
        assert!(projected.is_full());
        // kernel(map) ∩ big = small
        let ker = Subspace::kernel(q.map());
        let ker_in_big = Subspace::intersect(&ker, &big).unwrap();
        assert_eq!(ker_in_big, small);
    }

    #[test]
    fn quotient_requires_containment() {
        let big = span(3, &[&[1, 0, 0]]);
        let small = span(3, &[&[0, 1, 0]]);
        assert!(matches!(
            quotient(&big, &small),
            Err(Error::NotContained { .. })
        ));
        let wrong = span(2, &[&[1, 0]]);
        assert!(matches!(
            Subspace::sum(&big, &wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
