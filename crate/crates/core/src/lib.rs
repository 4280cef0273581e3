//! Exact classification of Weil-Petersson distance for semistable
//! degenerations of Calabi-Yau n-folds.
//!
//! Two independent routes decide whether the central fibre of a semistable
//! degeneration sits at finite Weil-Petersson distance:
//!
//! * the monodromy route ([`orbit::classify`]): from the unipotent monodromy
//!   `T`, its logarithm `N`, a polarization `Q` and a generator `alpha` of the
//!   deepest limit Hodge piece, test whether all pairings `Q(alpha, N^i
//!   conj(alpha))` with `i > 0` vanish;
//! * the central-fibre route ([`centralfibre::classify_central`]): from the
//!   components and strata of the normal-crossing central fibre, test whether
//!   some component carries a nonzero space of holomorphic n-forms.
//!
//! The graded Clemens-Schmid slice ([`clemensschmid::graded_slice`])
//! cross-checks the two routes when both descriptions of one degeneration are
//! available.
//!
//! Everything except the opt-in quadrature cross-check runs over exact
//! rational and Gaussian-rational arithmetic; no verdict ever depends on a
//! floating-point tolerance. The crate is `no_std` (with `alloc`).

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod centralfibre;
pub mod clemensschmid;
mod error;
pub mod hodge;
pub mod matrix;
pub mod monodromy;
pub mod nodal;
pub mod orbit;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use error::Error;
pub use scalar::{ExactScalar, GaussScalar, Int};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Finite/infinite verdict with a machine-recheckable witness.
///
/// The same type is shared by all classification routes; the witness records
/// the evidence the route found, in a form that can be re-verified from the
/// original problem data alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Witness,
}

/// Distance dichotomy: the Weil-Petersson distance to the central fibre is
/// finite or infinite, nothing in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FiniteDistance,
    InfiniteDistance,
}

impl Verdict {
    pub fn is_finite(self) -> bool {
        matches!(self, Verdict::FiniteDistance)
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::FiniteDistance => write!(f, "finite"),
            Verdict::InfiniteDistance => write!(f, "infinite"),
        }
    }
}

/// Evidence backing a [`Classification`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// All pairings `Q(alpha, N^i conj(alpha))`, `i > 0`, vanish exactly.
    HigherPairingsVanish,
    /// Smallest `i > 0` with a nonzero pairing, together with its value.
    NonzeroPairing {
        index: usize,
        value: scalar::GaussScalar,
    },
    /// Component of the central fibre with `h^{n,0} > 0`.
    TopFormComponent { id: alloc::string::String },
    /// Every component has `h^{n,0} = 0`.
    NoTopFormComponent,
    /// The proper transform carries an effective canonical divisor
    /// `(n-2) * sum E_i`, hence a nonzero holomorphic n-form.
    EffectiveCanonicalSection { coefficient: i64 },
}

impl core::fmt::Display for Witness {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Witness::HigherPairingsVanish => {
                write!(f, "Q(alpha, N^i conj(alpha)) = 0 for all i > 0")
            }
            Witness::NonzeroPairing { index, value } => {
                write!(f, "Q(alpha, N^{index} conj(alpha)) = {value} != 0")
            }
            Witness::TopFormComponent { id } => {
                write!(f, "component {id} has h^(n,0) > 0")
            }
            Witness::NoTopFormComponent => {
                write!(f, "all components have h^(n,0) = 0")
            }
            Witness::EffectiveCanonicalSection { coefficient } => {
                write!(
                    f,
                    "canonical bundle of the proper transform is {coefficient} * sum(E_i), effective"
                )
            }
        }
    }
}
