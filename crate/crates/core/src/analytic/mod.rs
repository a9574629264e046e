//! Asymptotic main terms, hypergeometric series, the AGM and the
//! Cauchy–Schwarz bound optimizer.

mod bound;
mod rhs;
mod special;

pub use bound::{cs_bound_minimize, cs_objective, BoundResult};
pub use rhs::{
    char_asymptotic_rhs, comparison_constant, conjectured_moment, hyper_fk_real, rademacher_asymptotic_rhs,
    steinhaus_asymptotic_rhs, AsymptoticTerm, ConjecturedMoment, A_EPS, B_EPS,
};
pub use special::{agm, hyper_2f1_series};
