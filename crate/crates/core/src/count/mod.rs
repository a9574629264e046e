//! Exact moment values as finite counts.
//!
//! The Steinhaus `2k`-th moment at `x` is the number of solutions of
//! `m_1⋯m_k = m_{k+1}⋯m_{2k}` with `m_j <= x`. It is evaluated through the
//! multiplicity `r_k(n)` of each product, streamed in segments, as
//! `Σ_n r_k(n)²`. The Rademacher moment counts `2k`-tuples of squarefree
//! integers with square product. Character averages are cross-checked
//! against a residue convolution via orthogonality.

mod character;
mod energy;
mod rademacher;

pub use character::{char_moment_average, congruence_count, primitive_root, CharAverageResult};
pub use energy::{
    coprime_energy, product_multiplicity_map, steinhaus_energy, EnergyResult, EnergyValue,
    MultiplicityMap, MAX_TUPLES,
};
pub use rademacher::{
    rademacher_moment_sign_enum, rademacher_moment_tuple_count, rademacher_sign_histogram,
};
