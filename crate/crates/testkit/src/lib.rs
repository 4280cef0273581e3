//! Deterministic random generators and independent oracles backing the wpdeg
//! test suites.
//!
//! Everything here is test-support code: the oracles re-derive quantities
//! from raw integer/rational data on purpose, without calling the production
//! routines they are used to check.

pub mod gen;
pub mod oracle;
pub mod synthetic;

pub use gen::*;
pub use oracle::*;
pub use synthetic::*;
