//! Monodromy: the logarithm of a unipotent operator, its weight filtration,
//! and the primitive (Lefschetz) decomposition of the graded pieces.
//!
//! The weight filtration is built from the closed formula
//!
//! ```text
//! W_{n+k} = sum over j >= max(0,k) of  ker N^(j+1) ∩ im N^(j-k)
//! ```
//!
//! and then *verified* against its two defining properties (`N W_i ⊆ W_{i-2}`
//! and `N^k : Gr_{n+k} ≅ Gr_{n-k}`), which determine it uniquely. The
//! construction can therefore never silently matter: a violation raises an
//! internal-consistency error.

use alloc::format;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::ExactScalar;
use crate::subspace::{quotient, Quotient, Subspace};
use crate::{Error, Result};

/// A unipotent monodromy operator `T` together with its nilpotent logarithm
/// `N = log T`, acting on the weight-`n` cohomology of a nearby fibre.
#[derive(Debug, Clone)]
pub struct MonodromyOperator {
    weight_n: usize,
    t: Matrix<ExactScalar>,
    log: Matrix<ExactScalar>,
}

/// Terminating exponential series of a nilpotent matrix.
pub fn exp_nilpotent(n: &Matrix<ExactScalar>) -> Result<Matrix<ExactScalar>> {
    if !n.is_square() {
        return Err(Error::NotSquare {
            context: "exp of nilpotent",
        });
    }
    let dim = n.rows();
    let mut sum = Matrix::identity(dim);
    let mut term = Matrix::identity(dim);
    for k in 1..=dim {
        term = term.mul(n)?.scale(&ExactScalar::new(1.into(), k.into()));
        if term.is_zero_matrix() {
            break;
        }
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// `N = log T` for a unipotent integer matrix `T` with `(T-I)^(n+1) = 0`.
///
/// The alternating series `(T-I) - (T-I)^2/2 + ... ± (T-I)^n/n` terminates
/// because `T - I` is nilpotent. Quasi-unipotent inputs (unipotent only after
/// a base change) are rejected: base change is out of scope here.
pub fn log_unipotent(t: Matrix<ExactScalar>, weight_n: usize) -> Result<MonodromyOperator> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            context: "log of monodromy",
        });
    }
    if !t.is_integral() {
        return Err(Error::NonIntegerEntries {
            context: "monodromy matrix",
        });
    }
    let dim = t.rows();
    let u = t.sub(&Matrix::identity(dim))?;
    if !u.pow(weight_n + 1)?.is_zero_matrix() {
        return Err(Error::NotSemistable { weight_n });
    }
    let mut log = Matrix::zeros(dim, dim);
    let mut upow = Matrix::identity(dim);
    for k in 1..=weight_n.max(1) {
        upow = upow.mul(&u)?;
        if upow.is_zero_matrix() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        log = log.add(&upow.scale(&ExactScalar::new(sign.into(), k.into())))?;
    }
    let op = MonodromyOperator { weight_n, t, log };
    // exp and log are mutually inverse terminating series; check exactly.
    if exp_nilpotent(&op.log)? != op.t {
        return Err(Error::FiltrationAxiom {
            reason: format!("exp(log T) != T for a {dim}x{dim} unipotent input"),
        });
    }
    Ok(op)
}

impl MonodromyOperator {
    /// Wrap a rational nilpotent `N` directly, taking `T = exp N`.
    ///
    /// This is the entry point for data given by its logarithm (for example
    /// after a rational change of basis, when `T` need no longer have integer
    /// entries). The geometric path through [`log_unipotent`] keeps the
    /// integrality check.
    pub fn from_nilpotent(log: Matrix<ExactScalar>, weight_n: usize) -> Result<Self> {
        if !log.is_square() {
            return Err(Error::NotSquare {
                context: "nilpotent operator",
            });
        }
        if !log.pow(weight_n + 1)?.is_zero_matrix() {
            return Err(Error::NotNilpotent { weight_n });
        }
        let t = exp_nilpotent(&log)?;
        Ok(MonodromyOperator { weight_n, t, log })
    }

    pub fn weight(&self) -> usize {
        self.weight_n
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn monodromy(&self) -> &Matrix<ExactScalar> {
        &self.t
    }

    /// The nilpotent logarithm `N`.
    pub fn log(&self) -> &Matrix<ExactScalar> {
        &self.log
    }

    /// Smallest `d` with `N^d = 0` (at most `n + 1`).
    pub fn nilpotency_index(&self) -> usize {
        let mut p = Matrix::identity(self.dim());
        for d in 0..=self.weight_n {
            if p.is_zero_matrix() {
                return d;
            }
            p = p.mul(&self.log).expect("square");
        }
        // p = N^(n+1) here, which both constructors check to be zero.
        debug_assert!(p.is_zero_matrix());
        self.weight_n + 1
    }
}

/// The monodromy weight filtration `W_0 ⊆ W_1 ⊆ ... ⊆ W_{2n}`, centered at
/// the weight `n`, over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFiltration {
    weight_n: usize,
    levels: Vec<Subspace<ExactScalar>>,
}

impl WeightFiltration {
    pub fn weight(&self) -> usize {
        self.weight_n
    }

    pub fn ambient_dim(&self) -> usize {
        self.levels[0].ambient_dim()
    }

    /// `W_l`, clamped: zero below 0, everything at and above `2n`.
    pub fn level(&self, l: i64) -> Subspace<ExactScalar> {
        let ambient = self.ambient_dim();
        if l < 0 {
            Subspace::zero(ambient)
        } else if (l as usize) >= self.levels.len() {
            Subspace::full(ambient)
        } else {
            self.levels[l as usize].clone()
        }
    }

    pub fn levels(&self) -> &[Subspace<ExactScalar>] {
        &self.levels
    }

    /// `dim Gr_l = dim W_l - dim W_{l-1}`.
    pub fn graded_rank(&self, l: i64) -> usize {
        self.level(l).dim() - self.level(l - 1).dim()
    }

    /// Ranks of `Gr_0, ..., Gr_{2n}`.
    pub fn graded_ranks(&self) -> Vec<usize> {
        (0..=2 * self.weight_n as i64)
            .map(|l| self.graded_rank(l))
            .collect()
    }

    /// Smallest `l` with `v ∈ W_l`; `None` only for `v = 0` (which sits in
    /// every level).
    pub fn graded_level_of(&self, v: &[ExactScalar]) -> Option<usize> {
        if v.iter().all(num_traits::Zero::is_zero) {
            return None;
        }
        (0..self.levels.len()).find(|&l| self.levels[l].contains_vector(v))
    }

    /// The quotient `Gr_l = W_l / W_{l-1}` with projection and section.
    pub fn graded_quotient(&self, l: i64) -> Result<Quotient<ExactScalar>> {
        quotient(&self.level(l), &self.level(l - 1))
    }
}

/// Kernel/image data for one nilpotent operator, reused across level
/// computations.
struct LevelBuilder {
    dim: usize,
    nilpotency: usize,
    kernels: Vec<Subspace<ExactScalar>>,
    images: Vec<Subspace<ExactScalar>>,
}

impl LevelBuilder {
    fn new(op: &MonodromyOperator) -> Result<Self> {
        let dim = op.dim();
        let d = op.nilpotency_index();
        if d > op.weight() + 1 {
            return Err(Error::NotNilpotent {
                weight_n: op.weight(),
            });
        }
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Matrix::identity(dim));
        for _ in 0..d {
            let last = powers.last().expect("nonempty");
            powers.push(last.mul(op.log())?);
        }
        let kernels = powers.iter().map(Subspace::kernel).collect();
        let images = powers.iter().map(Subspace::image).collect();
        Ok(LevelBuilder {
            dim,
            nilpotency: d,
            kernels,
            images,
        })
    }

    /// `W_{n+k}` via the kernel/image formula.
    fn centered_level(&self, k: i64) -> Result<Subspace<ExactScalar>> {
        let d = self.nilpotency as i64;
        if d == 0 {
            // N = 0 on a zero-or-nonzero space: everything has weight n.
            return Ok(if k >= 0 {
                Subspace::full(self.dim)
            } else {
                Subspace::zero(self.dim)
            });
        }
        if k >= d - 1 {
            return Ok(Subspace::full(self.dim));
        }
        if k <= -d {
            return Ok(Subspace::zero(self.dim));
        }
        let j_lo = k.max(0);
        let j_hi = d - 1 + k.min(0);
        let mut acc = Subspace::zero(self.dim);
        for j in j_lo..=j_hi {
            let ker = &self.kernels[(j + 1) as usize];
            let im = &self.images[(j - k) as usize];
            let term = Subspace::intersect(ker, im)?;
            acc = Subspace::sum(&acc, &term)?;
        }
        Ok(acc)
    }
}

/// Specific filtration levels `W_l` without building (or certifying) the
/// whole filtration; used on hot classification paths that only need the
/// window around the central weight.
pub(crate) fn weight_levels(
    op: &MonodromyOperator,
    ls: &[i64],
) -> Result<Vec<Subspace<ExactScalar>>> {
    let builder = LevelBuilder::new(op)?;
    ls.iter()
        .map(|&l| builder.centered_level(l - op.weight() as i64))
        .collect()
}

/// The unique monodromy weight filtration of `N`, centered at the weight.
///
/// The returned filtration has been checked against both defining
/// properties, so its correctness does not depend on the construction
/// formula. A check failure is an internal error, not an input error.
pub fn weight_filtration(op: &MonodromyOperator) -> Result<WeightFiltration> {
    let builder = LevelBuilder::new(op)?;
    let n = op.weight() as i64;
    let levels: Vec<Subspace<ExactScalar>> = (0..=2 * n)
        .map(|l| builder.centered_level(l - n))
        .collect::<Result<_>>()?;
    let wf = WeightFiltration {
        weight_n: op.weight(),
        levels,
    };
    verify_weight_axioms(op, &wf)?;
    Ok(wf)
}

/// Check the two defining properties of the weight filtration exactly.
///
/// This is exposed so callers (and tests) can re-certify any candidate
/// filtration independently of how it was produced.
pub fn verify_weight_axioms(op: &MonodromyOperator, wf: &WeightFiltration) -> Result<()> {
    let n = op.weight() as i64;
    let nm = op.log();
    let fail = |reason: alloc::string::String| Err(Error::FiltrationAxiom { reason });

    if wf.level(2 * n).dim() != op.dim() {
        return fail(format!("W_{} is not the full space", 2 * n));
    }
    for l in 0..=2 * n {
        if !wf.level(l).contains(&wf.level(l - 1)) {
            return fail(format!("W_{} does not contain W_{}", l, l - 1));
        }
        // N W_l ⊆ W_{l-2}
        let image = Subspace::apply(nm, &wf.level(l))?;
        if !wf.level(l - 2).contains(&image) {
            return fail(format!("N W_{} is not contained in W_{}", l, l - 2));
        }
    }
    for k in 1..=n {
        let up = wf.graded_rank(n + k);
        let down = wf.graded_rank(n - k);
        if up != down {
            return fail(format!(
                "graded ranks differ: dim Gr_{} = {}, dim Gr_{} = {}",
                n + k,
                up,
                n - k,
                down
            ));
        }
        // Injectivity of the induced map N^k : Gr_{n+k} -> Gr_{n-k}; together
        // with equal ranks this makes it an isomorphism.
        let nk = nm.pow(k as usize)?;
        let pre = Subspace::preimage(&nk, &wf.level(n - k - 1))?;
        let killed = Subspace::intersect(&pre, &wf.level(n + k))?;
        if !wf.level(n + k - 1).contains(&killed) {
            return fail(format!(
                "induced N^{} on Gr_{} has a kernel outside W_{}",
                k,
                n + k,
                n + k - 1
            ));
        }
    }
    Ok(())
}

/// Primitive subspaces `P_l ⊆ Gr_l` and the Lefschetz decomposition
/// `Gr_l = ⊕_{j≥0} N^j(P_{l+2j})`.
#[derive(Debug, Clone)]
pub struct LefschetzDecomposition {
    weight_n: usize,
    /// `primitive[l]` lives in the coordinates of `Gr_l` (see
    /// [`WeightFiltration::graded_quotient`]); zero for `l < n`.
    primitive: Vec<Subspace<ExactScalar>>,
    graded_ranks: Vec<usize>,
}

impl LefschetzDecomposition {
    pub fn graded_ranks(&self) -> &[usize] {
        &self.graded_ranks
    }

    /// `P_{l}` in `Gr_l` coordinates; zero subspace for `l < n` or out of
    /// range.
    pub fn primitive(&self, l: i64) -> Option<&Subspace<ExactScalar>> {
        if l < 0 || l as usize >= self.primitive.len() {
            None
        } else {
            Some(&self.primitive[l as usize])
        }
    }

    pub fn primitive_rank(&self, l: i64) -> usize {
        self.primitive(l).map_or(0, Subspace::dim)
    }

    pub fn weight(&self) -> usize {
        self.weight_n
    }
}

/// Image inside `Gr_{target}` of a subspace of `Gr_{source}` under the map
/// induced by `N^j` (requires `source - 2j = target`).
fn induced_power_image(
    op: &MonodromyOperator,
    wf: &WeightFiltration,
    quotients: &[Quotient<ExactScalar>],
    source: i64,
    j: usize,
    sub: &Subspace<ExactScalar>,
) -> Result<Subspace<ExactScalar>> {
    let target = source - 2 * j as i64;
    debug_assert!((0..=2 * wf.weight_n as i64).contains(&source));
    debug_assert!((0..=2 * wf.weight_n as i64).contains(&target));
    let lifted = quotients[source as usize].lift_subspace(sub)?;
    let moved = Subspace::apply(&op.log().pow(j)?, &lifted)?;
    quotients[target as usize].project_subspace(&moved)
}

/// Compute the primitive pieces `P_{n+j} = ker(N^{j+1} : Gr_{n+j} ->
/// Gr_{n-j-2})` and verify the Lefschetz decomposition dimension-wise.
pub fn lefschetz_decomposition(
    wf: &WeightFiltration,
    op: &MonodromyOperator,
) -> Result<LefschetzDecomposition> {
    if wf.weight_n != op.weight() || wf.ambient_dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            context: "lefschetz decomposition",
        });
    }
    let n = wf.weight_n as i64;
    let quotients: Vec<Quotient<ExactScalar>> = (0..=2 * n)
        .map(|l| wf.graded_quotient(l))
        .collect::<Result<_>>()?;

    let mut primitive = Vec::with_capacity(2 * wf.weight_n + 1);
    for l in 0..=2 * n {
        if l < n {
            primitive.push(Subspace::zero(quotients[l as usize].dim()));
            continue;
        }
        let j = (l - n) as usize;
        // Classes of v ∈ W_{n+j} with N^{j+1} v ∈ W_{n-j-3}, i.e. the kernel
        // of the induced map on the graded piece.
        let npow = op.log().pow(j + 1)?;
        let pre = Subspace::preimage(&npow, &wf.level(n - j as i64 - 3))?;
        let inside = Subspace::intersect(&pre, &wf.level(l))?;
        primitive.push(quotients[l as usize].project_subspace(&inside)?);
    }

    // Certify: Gr_l = ⊕_{j≥0} N^j(P_{l+2j}), checked by dimension count plus
    // dimension of the sum.
    for l in 0..=2 * n {
        let gr_dim = quotients[l as usize].dim();
        let mut total = 0usize;
        let mut span = Subspace::zero(gr_dim);
        let mut j = 0usize;
        while l + 2 * j as i64 <= 2 * n {
            let src = l + 2 * j as i64;
            let p = &primitive[src as usize];
            if !p.is_zero() {
                let img = induced_power_image(op, wf, &quotients, src, j, p)?;
                total += img.dim();
                span = Subspace::sum(&span, &img)?;
            }
            j += 1;
        }
        if total != gr_dim || span.dim() != gr_dim {
            return Err(Error::FiltrationAxiom {
                reason: format!(
                    "Lefschetz decomposition fails on Gr_{l}: pieces sum to {total}, span {}, expected {gr_dim}",
                    span.dim()
                ),
            });
        }
    }

    let graded_ranks = wf.graded_ranks();
    Ok(LefschetzDecomposition {
        weight_n: wf.weight_n,
        primitive,
        graded_ranks,
    })
}

/// Convenience: an integer monodromy matrix from `i64` literals.
pub fn unipotent_from_i64(rows: &[&[i64]], weight_n: usize) -> Result<MonodromyOperator> {
    log_unipotent(crate::matrix::mat_i64(rows), weight_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_i64;
    use crate::scalar::{int, rat};
    use alloc::vec;

    #[test]
    fn log_of_identity_is_zero() {
        let op = unipotent_from_i64(&[&[1, 0], &[0, 1]], 1).unwrap();
        assert!(op.log().is_zero_matrix());
        assert_eq!(op.nilpotency_index(), 1);
    }

    #[test]
    fn log_of_elementary_jordan() {
        let op = unipotent_from_i64(&[&[1, 1], &[0, 1]], 1).unwrap();
        assert_eq!(*op.log(), mat_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn log_of_full_jordan_3x3() {
        // (T-I)^2 != 0, so the series has two terms: (T-I) - (T-I)^2/2.
        let op = unipotent_from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]], 2).unwrap();
        let expected = Matrix::from_rows(
            vec![
                vec![int(0), int(1), rat(-1, 2)],
                vec![int(0), int(0), int(1)],
                vec![int(0), int(0), int(0)],
            ],
            3,
        )
        .unwrap();
        assert_eq!(*op.log(), expected);
        assert_eq!(exp_nilpotent(op.log()).unwrap(), *op.monodromy());
    }

    #[test]
    fn quasi_unipotent_is_rejected() {
        // T^2 = I but T != I: quasi-unipotent of index 2.
        let err = unipotent_from_i64(&[&[0, 1], &[1, 0]], 1).unwrap_err();
        assert!(matches!(err, Error::NotSemistable { weight_n: 1 }));
    }

    #[test]
    fn trivial_monodromy_weights() {
        let op = unipotent_from_i64(&[&[1, 0], &[0, 1]], 2).unwrap();
        let wf = weight_filtration(&op).unwrap();
        // Everything sits in pure weight n.
        assert_eq!(wf.graded_ranks(), vec![0, 0, 2, 0, 0]);
        assert!(wf.level(1).is_zero());
        assert!(wf.level(2).is_full());
    }

    #[test]
    fn elliptic_weight_filtration() {
        let op = unipotent_from_i64(&[&[1, 1], &[0, 1]], 1).unwrap();
        let wf = weight_filtration(&op).unwrap();
        assert_eq!(wf.graded_ranks(), vec![1, 0, 1]);
        assert_eq!(
            wf.level(0),
            Subspace::from_rows(2, vec![vec![int(1), int(0)]]).unwrap()
        );
        assert_eq!(wf.level(0), wf.level(1));
        assert_eq!(wf.graded_level_of(&[int(0), int(1)]), Some(2));
        assert_eq!(wf.graded_level_of(&[int(5), int(0)]), Some(0));
    }

    #[test]
    fn full_jordan_block_weights() {
        // Single Jordan block of size n+1: gradeds 2n, 2n-2, ..., 0 each rank 1.
        for n in 1..=3usize {
            let dim = n + 1;
            let t = Matrix::from_fn(
                dim,
                dim,
                |r, c| {
                    if r == c || c == r + 1 {
                        int(1)
                    } else {
                        int(0)
                    }
                },
            );
            let op = log_unipotent(t, n).unwrap();
            let wf = weight_filtration(&op).unwrap();
            let ranks = wf.graded_ranks();
            for l in 0..=2 * n {
                let expected = usize::from(l % 2 == 0);
                assert_eq!(ranks[l], expected, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn perturbed_filtration_fails_certification() {
        let op = unipotent_from_i64(&[&[1, 1], &[0, 1]], 1).unwrap();
        let wf = weight_filtration(&op).unwrap();
        // Swap W_0 for a different line: both axioms cannot survive.
        let bad = WeightFiltration {
            weight_n: 1,
            levels: vec![
                Subspace::from_rows(2, vec![vec![int(0), int(1)]]).unwrap(),
                wf.level(1),
                wf.level(2),
            ],
        };
        assert!(verify_weight_axioms(&op, &bad).is_err());
    }

    #[test]
    fn lefschetz_for_zero_monodromy() {
        let op = unipotent_from_i64(&[&[1, 0], &[0, 1]], 2).unwrap();
        let wf = weight_filtration(&op).unwrap();
        let lef = lefschetz_decomposition(&wf, &op).unwrap();
        assert_eq!(lef.primitive_rank(2), 2);
        for l in [0i64, 1, 3, 4] {
            assert_eq!(lef.primitive_rank(l), 0);
        }
    }

    #[test]
    fn lefschetz_for_elliptic_block() {
        let op = unipotent_from_i64(&[&[1, 1], &[0, 1]], 1).unwrap();
        let wf = weight_filtration(&op).unwrap();
        let lef = lefschetz_decomposition(&wf, &op).unwrap();
        // P_2 = Gr_2 of rank 1, Gr_0 = N(P_2), P_0 = P_1 = 0.
        assert_eq!(lef.primitive_rank(2), 1);
        assert_eq!(lef.primitive_rank(1), 0);
        assert_eq!(lef.primitive_rank(0), 0);
    }

    #[test]
    fn lefschetz_for_full_block() {
        let n = 3usize;
        let dim = n + 1;
        let t = Matrix::from_fn(
            dim,
            dim,
            |r, c| {
                if r == c || c == r + 1 {
                    int(1)
                } else {
                    int(0)
                }
            },
        );
        let op = log_unipotent(t, n).unwrap();
        let wf = weight_filtration(&op).unwrap();
        let lef = lefschetz_decomposition(&wf, &op).unwrap();
        assert_eq!(lef.primitive_rank(2 * n as i64), 1);
        for l in 0..2 * n as i64 {
            assert_eq!(lef.primitive_rank(l), 0, "l={l}");
        }
    }
}
