//! Moments of random multiplicative functions and truncated characteristic
//! polynomials.
//!
//! The crate evaluates the same family of quantities along several
//! independent routes so that they can be checked against each other:
//!
//! * [`arith`]: prime sieving, factorization, divisor-function values and the
//!   Euler-product constants `a(k)`, `b(k)` with certified truncation bounds.
//! * [`count`]: exact moment values as finite counts (multiplicative energy,
//!   Rademacher square-product counts, Dirichlet character averages).
//! * [`polytope`]: exact lattice-point counts of transportation polytopes,
//!   Ehrhart interpolation and the volume constants `β(k)`, `α(k)`, `γ(k)`.
//! * [`rmt`]: truncated characteristic-polynomial moments over `U(N)` and
//!   `SO(2N)`, Haar sampling and secular coefficients.
//! * [`analytic`]: asymptotic main terms, hypergeometric series, the AGM and
//!   the two-variable Cauchy–Schwarz bound.
//! * [`mc`]: Monte Carlo sampling of Steinhaus and Rademacher sums.
//! * [`acceptance`]: the end-to-end verification suite.

// `!(v > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod analytic;
pub mod arith;
pub mod count;
pub mod error;
pub mod mc;
pub mod polytope;
pub mod rmt;
pub mod rng;
pub mod stats;
mod serde_util;

pub use serde_util::ratio_string;

pub use error::{Error, Result};
pub use stats::MomentEstimate;
