//! Number-theoretic building blocks.

mod euler;
mod sieve;
mod special;
mod sum;

pub use euler::{a_constant, b_constant, char_local_factor, EulerProductResult};
pub use sieve::{build_spf_sieve, factorize, primes_up_to, FactorSieve, Factorization, MAX_SIEVE_LIMIT};
pub use special::{binomial_u128, dk_prime_power, dk_table, ln_gamma, real_gamma};
pub use sum::CompensatedSum;
pub(crate) use sum::pairwise_sum;
pub use euler::{a_constant_to, b_constant_to};
