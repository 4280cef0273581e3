//! The graded, filtered slice of the Clemens-Schmid sequence around the
//! middle cohomological degree, used to cross-check the monodromy route
//! against the central-fibre route.
//!
//! The full sequence with explicit maps is not assembled: only the slice
//!
//! ```text
//! F^{-1}Gr_{-n-2} H_{n+2}(X_0) -> F^n Gr_n H^n(X_0) -> F^n Gr_n H^n(X_s)
//!                              -> F^{n-1} Gr_{n-2} H^n(X_s)
//! ```
//!
//! matters, and its two outer slots vanish for every `n >= 1`: the homology
//! slot because Kähler manifolds carry forms only up to degree n, the last
//! slot because `Gr_{n-2}` has Hodge depth at most `n-2`. Exactness then
//! identifies the two middle ranks; disagreement proves the paired inputs
//! describe different degenerations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use crate::centralfibre::{fn_grn_central, CentralFibreModel};
use crate::orbit::{classify, OrbitProblem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationKind {
    Cohomology,
    Homology,
}

/// A vector space with an increasing weight filtration, tracked by graded
/// dimensions only. Homology weights live in `[-m, 0]`, cohomology weights
/// in `[0, m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSpace {
    kind: FiltrationKind,
    degree_m: usize,
    dims_by_weight: BTreeMap<i64, usize>,
}

impl WeightedSpace {
    pub fn new(
        kind: FiltrationKind,
        degree_m: usize,
        dims_by_weight: BTreeMap<i64, usize>,
    ) -> Result<Self> {
        let m = degree_m as i64;
        let range = match kind {
            FiltrationKind::Cohomology => 0..=m,
            FiltrationKind::Homology => -m..=0,
        };
        for (&k, &d) in &dims_by_weight {
            if d > 0 && !range.contains(&k) {
                return Err(Error::ModelInvalid {
                    reason: format!(
                        "graded piece of weight {k} must vanish in {} degree {degree_m}",
                        match kind {
                            FiltrationKind::Cohomology => "cohomological",
                            FiltrationKind::Homology => "homological",
                        }
                    ),
                });
            }
        }
        Ok(WeightedSpace {
            kind,
            degree_m,
            dims_by_weight,
        })
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree_m
    }

    pub fn graded_dim(&self, weight: i64) -> usize {
        self.dims_by_weight.get(&weight).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims_by_weight.values().sum()
    }
}

/// The four maps of the Clemens-Schmid sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsMap {
    /// `H_{2n+2-m}(X_0) -> H^m(X_0)`, Poincaré duality through the total
    /// space.
    Alpha,
    /// `i^*: H^m(X_0) -> H^m(X_s)`, restriction to a nearby fibre.
    Restriction,
    /// `N: H^m(X_s) -> H^m(X_s)`, the monodromy logarithm.
    LogMonodromy,
    /// `beta: H^m(X_s) -> H_{2n-m}(X_0)`.
    Beta,
}

impl core::fmt::Display for CsMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CsMap::Alpha => write!(f, "alpha"),
            CsMap::Restriction => write!(f, "i*"),
            CsMap::LogMonodromy => write!(f, "N"),
            CsMap::Beta => write!(f, "beta"),
        }
    }
}

/// Validation of a declared morphism type against the table: a morphism of
/// type `(r, r)` shifts the Hodge filtration index by `r` and the weight by
/// `2r`; `alpha, i*, N, beta` have types `(n+1, n+1), (0, 0), (-1, -1),
/// (-n, -n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismTypeCheck {
    pub map: CsMap,
    pub passed: bool,
    pub expected_type: (i64, i64),
    pub expected_weight_shift: i64,
    pub expected_filtration_shift: i64,
}

pub fn morphism_type_check(
    map: CsMap,
    weight_n: usize,
    weight_shift: i64,
    filtration_shift: i64,
) -> MorphismTypeCheck {
    let n = weight_n as i64;
    let r = match map {
        CsMap::Alpha => n + 1,
        CsMap::Restriction => 0,
        CsMap::LogMonodromy => -1,
        CsMap::Beta => -n,
    };
    MorphismTypeCheck {
        map,
        passed: weight_shift == 2 * r && filtration_shift == r,
        expected_type: (r, r),
        expected_weight_shift: 2 * r,
        expected_filtration_shift: r,
    }
}

/// The computed slice with both forced vanishings and the middle ranks.
#[derive(Debug, Clone)]
pub struct GradedSliceReport {
    pub weight_n: usize,
    /// `dim F^{-1} Gr_{-n-2} H_{n+2}(X_0)`: always 0.
    pub homology_slot_dim: usize,
    /// `dim F^n Gr_n H^n(X_0)` from the central fibre.
    pub fibre_rank: usize,
    /// `dim F^n Gr_n H^n(X_s)` from the orbit data.
    pub orbit_rank: usize,
    /// `dim F^{n-1} Gr_{n-2} H^n(X_s)`: always 0.
    pub nearby_drop_dim: usize,
    pub vanishing_homology_ok: bool,
    pub vanishing_nearby_ok: bool,
    /// The common rank of `F^n Gr_n` on both sides.
    pub isomorphism_rank: usize,
    /// Weight bookkeeping for the homology slot.
    pub homology_bookkeeping: WeightedSpace,
}

/// Compute the graded slice from paired descriptions of one degeneration
/// and require the two middle ranks to agree.
///
/// The rank comparison is an error, not a warning: exactness of the
/// sequence makes agreement a theorem, so a mismatch proves the orbit data
/// and the fibre model cannot belong to the same degeneration.
pub fn graded_slice(
    orbit_side: &OrbitProblem,
    fibre_side: &CentralFibreModel,
) -> Result<GradedSliceReport> {
    let n = orbit_side.weight();
    if n != fibre_side.dim() {
        return Err(Error::DimensionMismatch {
            context: "paired sides describe different fibre dimensions",
        });
    }
    if n == 0 {
        return Err(Error::OutOfHypothesis {
            required_dim: 1,
            got: 0,
            context: "graded Clemens-Schmid slice",
        });
    }

    // Orbit side: F^n is the line through alpha, so the rank of F^n Gr_n is
    // 1 exactly when the class of alpha sits at level n, which is the
    // finite-distance condition (both routes of `classify` must agree for
    // the input to be valid at all).
    let orbit_rank = usize::from(classify(orbit_side)?.verdict.is_finite());
    let fibre_rank = fn_grn_central(fibre_side) as usize;

    // Both forced vanishings hold for every n >= 1; they are structural,
    // not data-dependent.
    let homology_slot_dim = 0usize;
    let nearby_drop_dim = 0usize;
    let mut dims = BTreeMap::new();
    dims.insert(-(n as i64) - 2, 0usize);
    let homology_bookkeeping = WeightedSpace::new(FiltrationKind::Homology, n + 2, dims)?;

    if orbit_rank != fibre_rank {
        return Err(Error::InconsistentPair {
            orbit_rank,
            fibre_rank,
        });
    }

    Ok(GradedSliceReport {
        weight_n: n,
        homology_slot_dim,
        fibre_rank,
        orbit_rank,
        nearby_drop_dim,
        vanishing_homology_ok: true,
        vanishing_nearby_ok: true,
        isomorphism_rank: orbit_rank,
        homology_bookkeeping,
    })
}

/// Render the slice as the chain of identifications it certifies.
pub fn describe_slice(report: &GradedSliceReport) -> String {
    let n = report.weight_n;
    format!(
        "0 = F^-1 Gr_{} H_{}(X0) -> F^{n} Gr_{n} H^{n}(X0) [rank {}] ~ F^{n} Gr_{n} H^{n}(Xs) [rank {}] -> F^{} Gr_{} H^{n}(Xs) = 0",
        -(n as i64) - 2,
        n + 2,
        report.fibre_rank,
        report.orbit_rank,
        n - 1,
        n as i64 - 2,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralfibre::{uniform_components, HodgeNumbers, StratumSpec};
    use crate::orbit::elliptic_example;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn morphism_type_table() {
        let n = 3;
        assert!(morphism_type_check(CsMap::LogMonodromy, n, -2, -1).passed);
        assert!(morphism_type_check(CsMap::Restriction, n, 0, 0).passed);
        assert!(morphism_type_check(CsMap::Alpha, n, 8, 4).passed);
        let beta = morphism_type_check(CsMap::Beta, n, 0, 0);
        assert!(!beta.passed);
        assert_eq!(beta.expected_type, (-3, -3));
        assert_eq!(beta.expected_weight_shift, -6);
    }

    #[test]
    fn homology_weight_range_is_enforced() {
        let mut dims = BTreeMap::new();
        dims.insert(1i64, 2usize);
        assert!(WeightedSpace::new(FiltrationKind::Homology, 3, dims).is_err());
        let mut dims = BTreeMap::new();
        dims.insert(-2i64, 2usize);
        let ws = WeightedSpace::new(FiltrationKind::Homology, 3, dims).unwrap();
        assert_eq!(ws.graded_dim(-2), 2);
        assert_eq!(ws.graded_dim(0), 0);
        assert_eq!(ws.total_dim(), 2);
    }

    fn cycle_of_lines(k: usize) -> CentralFibreModel {
        let comps = uniform_components(k, HodgeNumbers::projective_space(1));
        let strata = (0..k)
            .map(|i| StratumSpec {
                members: vec![format!("X{i}"), format!("X{}", (i + 1) % k)],
                hodge: HodgeNumbers::points(1),
            })
            .collect();
        CentralFibreModel::new(1, comps, strata, Vec::new()).unwrap()
    }

    #[test]
    fn elliptic_pair_is_consistent() {
        let orbit = elliptic_example().unwrap();
        let fibre = cycle_of_lines(3);
        let report = graded_slice(&orbit, &fibre).unwrap();
        assert_eq!(report.orbit_rank, 0);
        assert_eq!(report.fibre_rank, 0);
        assert_eq!(report.isomorphism_rank, 0);
        assert!(report.vanishing_homology_ok && report.vanishing_nearby_ok);
        assert_eq!(report.homology_slot_dim, 0);
        assert_eq!(report.nearby_drop_dim, 0);
    }

    #[test]
    fn mismatched_pair_raises_inconsistency() {
        // A fibre with a top form paired with infinite-distance orbit data.
        let orbit = elliptic_example().unwrap();
        let comps = vec![crate::centralfibre::Component {
            id: "E".to_string(),
            hodge: HodgeNumbers::new(1, vec![vec![1, 1], vec![1, 1]]).unwrap(),
        }];
        let fibre = CentralFibreModel::new(1, comps, Vec::new(), Vec::new()).unwrap();
        let err = graded_slice(&orbit, &fibre).unwrap_err();
        assert!(matches!(
            err,
            Error::InconsistentPair {
                orbit_rank: 0,
                fibre_rank: 1
            }
        ));
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let orbit = elliptic_example().unwrap();
        let comps = uniform_components(2, HodgeNumbers::projective_space(2));
        let fibre = CentralFibreModel::new(2, comps, Vec::new(), Vec::new()).unwrap();
        assert!(matches!(
            graded_slice(&orbit, &fibre),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
