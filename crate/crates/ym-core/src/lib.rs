//! Explicit Young measures of piecewise monotone-or-constant functions on a
//! bounded interval.
//!
//! A measurable `u: Ω → K` built from strictly monotone differentiable
//! pieces and constant pieces has an explicitly computable Young measure:
//! constant pieces become Dirac atoms weighted by their normalized domain
//! length, monotone pieces contribute an absolutely continuous density
//! `|(u_i^{-1})'| / |Ω|` on their image. This crate constructs that measure,
//! generates fast-oscillating sequences whose measures are provably
//! identical to their generator's, and verifies everything against an
//! independent brute-force pushforward oracle.
//!
//! Modules:
//! - [`expr`]: the expression front end (parse, evaluate, differentiate);
//! - [`piecewise`]: validated piecewise functions and monotone inversion;
//! - [`measure`]: the Young measure, its density, CDF and integrals;
//! - [`oscillation`]: dilation, rescaling and the example corpus;
//! - [`oracle`]: empirical pushforward, Kolmogorov distance, tensor
//!   integrals;
//! - [`quad`]: adaptive Gauss–Kronrod quadrature used throughout.
//!
//! Everything is deterministic: no randomness, fixed subdivision and
//! summation orders, bit-identical outputs for identical inputs.

pub mod expr;
pub mod measure;
pub mod oracle;
pub mod oscillation;
pub mod piecewise;
pub mod quad;

pub use expr::Expr;
pub use measure::{compute, pushforward_integral, verify_identity, VerificationReport, YoungMeasure};
pub use oracle::{empirical_pushforward, kolmogorov_distance, tensor_integrals};
pub use oscillation::{build_example, dilate, rescale, weight_sum, OscillationSpec};
pub use piecewise::{Interval, Piece, PiecewiseFunction};
