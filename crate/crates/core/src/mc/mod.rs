//! Monte Carlo sampling of random multiplicative sums.
//!
//! Each trial draws fresh values at the primes and extends them
//! multiplicatively with a smallest-prime-factor sieve. Steinhaus phases are
//! kept as angles modulo 1 and exponentiated only when summing.

mod sampler;
mod table;

pub use sampler::{
    estimate_abs_moment, sample_rademacher_sum, sample_steinhaus_sum, Model, PhaseSieve, SumSampler, MAX_SAMPLE_X,
    MIN_TRIALS,
};
pub use table::{helson_table, HelsonRow};
