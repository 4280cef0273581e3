use alloc::string::String;
use core::fmt;

/// Errors surfaced by the classification pipeline.
///
/// Variants split into three families: malformed input (dimension mismatches,
/// invalid models, out-of-hypothesis calls), inputs that are well-formed but
/// not genuine polarized limit data (`NotSemistable`, `NotRealPolynomial`,
/// `RoutesDisagree`, `InconsistentPair`), and internal bug traps
/// (`FiltrationAxiom`) that a correct construction can never hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes are incompatible.
    DimensionMismatch { context: &'static str },
    /// A subspace operation required `small ⊆ big` and it failed.
    NotContained { context: &'static str },
    /// A square matrix was required.
    NotSquare { context: &'static str },
    /// Matrix entries were required to be integers.
    NonIntegerEntries { context: &'static str },
    /// `(T - I)^(n+1) != 0`: the monodromy is only quasi-unipotent. The
    /// degeneration must be made semistable by a base change first; base
    /// change is outside the scope of this tool.
    NotSemistable { weight_n: usize },
    /// A nilpotent operator was required (`N^(n+1) = 0` failed).
    NotNilpotent { weight_n: usize },
    /// A value that must be real had a nonzero imaginary part.
    NotReal { context: &'static str },
    /// The orbit polynomial has a nonzero imaginary coefficient, so
    /// `(Q, N, alpha)` is not a genuine polarized limit datum.
    NotRealPolynomial { coefficient_index: usize },
    /// A required vector was zero.
    ZeroVector { context: &'static str },
    /// Polarization parity does not match the weight
    /// (symmetric for even weight, skew for odd).
    ParityMismatch { weight_k: usize },
    /// The polarization form is singular.
    DegenerateForm,
    /// Invalid orbit problem data.
    InvalidOrbit { reason: String },
    /// Bug trap: the constructed weight filtration failed one of its two
    /// defining properties. Unreachable for a correct construction.
    FiltrationAxiom { reason: String },
    /// Bug trap: the pairing-based and graded-position verdicts disagree,
    /// which is impossible for valid polarized inputs.
    RoutesDisagree {
        pairing_finite: bool,
        graded_finite: bool,
    },
    /// The central-fibre model violates its structural invariants.
    ModelInvalid { reason: String },
    /// The paired orbit/fibre descriptions cannot belong to one degeneration:
    /// the two sides of the graded Clemens-Schmid slice have different ranks.
    InconsistentPair {
        orbit_rank: usize,
        fibre_rank: usize,
    },
    /// The operation's hypothesis requires a larger dimension.
    OutOfHypothesis {
        required_dim: usize,
        got: usize,
        context: &'static str,
    },
    /// The quadrature window contains a root of the orbit polynomial; the
    /// window must shrink to exclude the isolated interval.
    RootInWindow { lo: String, hi: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { context } => {
                write!(f, "dimension mismatch in {context}")
            }
            Error::NotContained { context } => {
                write!(
                    f,
                    "containment violated in {context}: small is not a subspace of big"
                )
            }
            Error::NotSquare { context } => write!(f, "{context}: matrix must be square"),
            Error::NonIntegerEntries { context } => {
                write!(f, "{context}: matrix entries must be integers")
            }
            Error::NotSemistable { weight_n } => write!(
                f,
                "monodromy is not unipotent to order {}: (T - I)^{} != 0; \
                 the family is only quasi-unipotent, apply a semistable base change first",
                weight_n + 1,
                weight_n + 1
            ),
            Error::NotNilpotent { weight_n } => {
                write!(f, "operator is not nilpotent: N^{} != 0", weight_n + 1)
            }
            Error::NotReal { context } => {
                write!(f, "{context}: value has a nonzero imaginary part")
            }
            Error::NotRealPolynomial { coefficient_index } => write!(
                f,
                "orbit polynomial coefficient of y^{coefficient_index} is not real; \
                 (Q, N, alpha) is not a polarized limit datum"
            ),
            Error::ZeroVector { context } => write!(f, "{context}: vector must be nonzero"),
            Error::ParityMismatch { weight_k } => write!(
                f,
                "polarization parity violates weight-parity rule: weight {} needs a {} form",
                weight_k,
                if weight_k % 2 == 0 {
                    "symmetric"
                } else {
                    "skew-symmetric"
                }
            ),
            Error::DegenerateForm => write!(f, "polarization form is degenerate"),
            Error::InvalidOrbit { reason } => write!(f, "invalid orbit problem: {reason}"),
            Error::FiltrationAxiom { reason } => write!(
                f,
                "internal consistency failure: weight filtration axiom violated ({reason})"
            ),
            Error::RoutesDisagree {
                pairing_finite,
                graded_finite,
            } => write!(
                f,
                "internal consistency failure: pairing route says {}, graded route says {}",
                if *pairing_finite {
                    "finite"
                } else {
                    "infinite"
                },
                if *graded_finite { "finite" } else { "infinite" },
            ),
            Error::ModelInvalid { reason } => write!(f, "invalid central-fibre model: {reason}"),
            Error::InconsistentPair {
                orbit_rank,
                fibre_rank,
            } => write!(
                f,
                "inconsistent pair: F^n Gr_n has rank {orbit_rank} on the orbit side but \
                 {fibre_rank} on the central-fibre side; the two descriptions cannot belong \
                 to one degeneration"
            ),
            Error::OutOfHypothesis {
                required_dim,
                got,
                context,
            } => write!(
                f,
                "{context} requires dimension >= {required_dim}, got {got}"
            ),
            Error::RootInWindow { lo, hi } => write!(
                f,
                "orbit polynomial has a root in the quadrature window, isolated in [{lo}, {hi}]; \
                 shrink the window"
            ),
        }
    }
}

impl core::error::Error for Error {}
