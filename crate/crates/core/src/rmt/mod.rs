//! Truncated characteristic-polynomial moments over `U(N)` and `SO(2N)`.
//!
//! For `N >= kL` the moments are finite lattice sums: over `k×k` matrices
//! with row and column sums at most `L` in the unitary case, and over edge
//! weightings of `K_{2k}` with degrees at most `L` in the orthogonal case.
//! These are evaluated exactly and compared with Haar sampling and with the
//! asymptotic main terms.

mod asymptotic;
mod haar;
mod hyper;
mod mc;
mod truncated;

pub use asymptotic::{so_asymptotic_rhs, so_asymptotic_rhs_with, unitary_asymptotic_rhs};
pub use haar::{haar_unitary, haar_unitary_secular, secular_coefficients, SecularSample, MAX_HAAR_N};
pub use hyper::{hyper_fk, i1_two_ways, I1Pair};
pub use mc::{mc_secular_moment, mc_truncated_moment};
pub use truncated::{
    eval_poly, magic_count, so_truncated_moment_exact, unitary_truncated_moment_exact, Group,
    TruncatedMoment,
};
