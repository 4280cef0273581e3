//! Command-line front end for the Weil-Petersson distance classifier:
//! problem-file parsing, dispatch to the two classification routes, the
//! built-in catalog, and report rendering.

pub mod catalog;
pub mod document;
pub mod report;
pub mod run;

/// Exit codes of every subcommand: the verdict is part of the contract.
pub mod exit {
    /// Finite Weil-Petersson distance (or a non-classifying command
    /// succeeded).
    pub const FINITE: i32 = 0;
    /// Malformed or invalid input.
    pub const INPUT_ERROR: i32 = 1;
    /// Internal or cross-route consistency failure.
    pub const INCONSISTENT: i32 = 2;
    /// Infinite Weil-Petersson distance.
    pub const INFINITE: i32 = 3;
}

/// Map a core error to the exit code contract: consistency failures are
/// distinguished from plain input errors.
pub fn exit_code_for(err: &wpdeg_core::Error) -> i32 {
    use wpdeg_core::Error::*;
    match err {
        RoutesDisagree { .. } | FiltrationAxiom { .. } | InconsistentPair { .. } => {
            exit::INCONSISTENT
        }
        _ => exit::INPUT_ERROR,
    }
}
