// Guards are written `!(x > 0.0)` so NaN parameters fail validation too;
// pinned reference values keep their full printed precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

//! Low-energy S-wave scattering toolkit in units hbar = 2m = 1.
//!
//! The crate computes exact phase shifts for the attractive square well and
//! numerical ones for other short-range wells (Numerov integration with
//! logarithmic-derivative matching), evaluates the family of two-parameter
//! effective-range expansions in both the k cot(delta) and tan(delta)/k
//! forms, extracts (a, effective range) from phase-shift data by least
//! squares, and cross-checks everything through the integral identity
//! tan(delta)/k = -int u v V dr.

pub mod analysis;
pub mod error;
pub mod expansions;
pub mod potentials;
pub mod quadrature;
pub mod solver;
pub mod squarewell;

pub use analysis::{
    compare_expansions, exact_records, fit_effective_range, scattering_length_scan,
    solve_beta_for_target_a, ErFitResult, ErrorReport, ErrorSample, ParamsPolicy, ScanPoint,
};
pub use error::{Error, Result};
pub use expansions::{eval_expansion, reciprocal_coefficients, ErParams, ExpansionKind, ValueRole};
pub use potentials::Potential;
pub use quadrature::{integrate_adaptive, QuadResult};
pub use solver::{integral_identity, solve_phase, solve_phase_scaled, MatchRadius, PhaseRecord, SolverConfig};
pub use squarewell::{SquareWell, SquareWellCoefficients};
