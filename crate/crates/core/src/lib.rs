//! Delocalized eta and rho invariants at desk scale.
//!
//! * [`numeric`]: exact Q and Q(ζ_n) arithmetic with a multi-precision embedding.
//! * [`chars`]: finite groups, conjugacy classes, class functions, characters.
//! * [`rho`]: induction of rho data and the rationality-ring checker.
//! * [`lens`]: explicit rho tables for lens spaces.
//! * [`circle`]: heat-kernel quadrature on the circle covering and convergence verdicts.
//! * [`zoo`]: normal forms and conjugacy-class balls in infinite example groups.
//! * [`verify`]: the numbered verification suites shared by tests and the CLI.

pub mod chars;
pub mod circle;
pub mod error;
pub mod lens;
pub mod numeric;
pub mod rho;
pub mod zoo;

pub use error::{Error, Result};
pub mod verify;
