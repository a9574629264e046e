use num_traits::ToPrimitive;
use serde::Serialize;

use super::special::hyper_2f1_series;
use crate::arith::{a_constant, b_constant, char_local_factor, real_gamma, Factorization};
use crate::error::{invalid, Error, Result};
use crate::polytope::{alpha_constant, beta_constant, gamma_constant};
use crate::rmt::hyper_fk;

/// Relative accuracy of `a(k)` inside the main terms.
pub const A_EPS: f64 = 1e-8;
/// Relative accuracy of `b(k)`, whose tail constant grows quickly with `k`.
pub const B_EPS: f64 = 1e-6;
const HYPER_EPS: f64 = 1e-15;

/// `constant · x^x_exponent · (log x)^log_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticTerm {
    pub constant: f64,
    pub x_exponent: f64,
    pub log_exponent: f64,
}

impl AsymptoticTerm {
    pub fn eval(&self, x: f64) -> f64 {
        self.constant * x.powf(self.x_exponent) * x.ln().powf(self.log_exponent)
    }
}

fn rational(r: &num_rational::BigRational) -> Result<f64> {
    r.to_f64().ok_or_else(|| Error::Internal("rational constant not representable".into()))
}

fn beta_f64(k: u32) -> Result<f64> {
    rational(&beta_constant(k)?.value)
}

fn gamma_ratio(k: u32) -> Result<f64> {
    let kf = k as f64;
    Ok(real_gamma(2.0 * kf - 1.0)? / real_gamma(kf)?.powi(2))
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    Ok(())
}

/// Main term of the `2k`-th moment of `Σ_{n<=x} X_n n^-σ` for Steinhaus `X`.
///
/// For `σ < 1/2` this is `a(k)β(k)Γ(2k-1)/(Γ(k)²(1-2σ)^{2k-1}) x^{k(1-2σ)} (log x)^{(k-1)²}`;
/// at `σ = 1/2` the shape changes to `a(k)α(k) (log x)^{k²}`. The two branches
/// do not join continuously.
pub fn steinhaus_asymptotic_rhs(k: u32, sigma: f64) -> Result<AsymptoticTerm> {
    check_k(k)?;
    if !(0.0..=0.5).contains(&sigma) {
        return invalid(format!("sigma must lie in [0, 1/2], got {sigma}"));
    }
    let a = a_constant(k as f64, A_EPS)?.value;
    let kf = k as f64;
    if sigma == 0.5 {
        let alpha = rational(&alpha_constant(k)?)?;
        return Ok(AsymptoticTerm { constant: a * alpha, x_exponent: 0.0, log_exponent: kf * kf });
    }
    let constant = a * beta_f64(k)? * gamma_ratio(k)? / (1.0 - 2.0 * sigma).powi(2 * k as i32 - 1);
    Ok(AsymptoticTerm { constant, x_exponent: kf * (1.0 - 2.0 * sigma), log_exponent: ((k - 1) * (k - 1)) as f64 })
}

/// Main term `γ(k) b(k) 2^{2k} x^k (log x)^{2k²-3k}` of the Rademacher moment, `k >= 2`.
///
/// `γ(k)` is the unit-degree slice volume, as for [`crate::rmt::so_asymptotic_rhs`].
pub fn rademacher_asymptotic_rhs(k: u32) -> Result<AsymptoticTerm> {
    if k < 2 {
        return invalid("the Rademacher main term needs k >= 2");
    }
    let gamma = rational(&gamma_constant(k)?.unit_slice)?;
    let b = b_constant(k, B_EPS)?.value;
    Ok(AsymptoticTerm {
        constant: gamma * b * 4f64.powi(k as i32),
        x_exponent: k as f64,
        log_exponent: (2 * k * k - 3 * k) as f64,
    })
}

/// Main term of the `2k`-th moment of a character sum averaged over characters mod `q`:
/// the `σ = 0` Steinhaus term scaled by the local factors at the primes of `q`.
pub fn char_asymptotic_rhs(k: u32, q: &Factorization) -> Result<AsymptoticTerm> {
    let mut term = steinhaus_asymptotic_rhs(k, 0.0)?;
    term.constant *= char_local_factor(k, q)?;
    Ok(term)
}

/// `c_σ(k) = ((1-e^{2σ-1})/(1-2σ))^{2k-1} F_k(e^{1/2-σ})^-1`, with `c_{1/2}(k) = 1`.
pub fn comparison_constant(k: u32, sigma: f64) -> Result<f64> {
    check_k(k)?;
    if !(0.0..=0.5).contains(&sigma) {
        return invalid(format!("sigma must lie in [0, 1/2], got {sigma}"));
    }
    if sigma == 0.5 {
        return Ok(1.0);
    }
    let d = 1.0 - 2.0 * sigma;
    // (1 - e^{-d})/d, written to stay accurate as d -> 0
    let ratio = -(-d).exp_m1() / d;
    Ok(ratio.powi(2 * k as i32 - 1) / hyper_fk(k, (0.5 - sigma).exp())?)
}

/// `F_k(z)` for real `k`, summed as a non-terminating series.
pub fn hyper_fk_real(k: f64, z_abs: f64) -> Result<f64> {
    if !(z_abs > 1.0) {
        return invalid(format!("|z| must exceed 1, got {z_abs}"));
    }
    hyper_2f1_series(1.0 - k, 1.0 - k, 2.0 - 2.0 * k, 1.0 - z_abs.powi(-2), HYPER_EPS)
}

/// The conjectured fractional moment and the pieces of its coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjecturedMoment {
    pub k: f64,
    pub sigma: f64,
    pub x: f64,
    /// `a(k)`.
    pub arithmetic_factor: f64,
    /// `F_k(e^{1/2-σ})^-1`.
    pub hyper_inverse: f64,
    /// `(1-e^{2σ-1})^{-(k-1)²} (1-2σ)^{1-2k}`.
    pub correction: f64,
    /// Product of the three factors above.
    pub coefficient: f64,
    /// `coefficient · x^{k(1-2σ)}`.
    pub value: f64,
}

/// Conjectured `E|Σ_{n<=x} X_n n^-σ|^{2k}` for `0 <= k < 1`, `0 <= σ < 1/2`.
pub fn conjectured_moment(k: f64, sigma: f64, x: f64) -> Result<ConjecturedMoment> {
    if !(0.0..1.0).contains(&k) {
        return invalid(format!("k must lie in [0, 1), got {k}"));
    }
    if !(0.0..0.5).contains(&sigma) {
        return invalid(format!("sigma must lie in [0, 1/2), got {sigma}"));
    }
    if !(x >= 1.0) || !x.is_finite() {
        return invalid(format!("x must be at least 1, got {x}"));
    }
    let arithmetic_factor = a_constant(k, A_EPS)?.value;
    let hyper_inverse = 1.0 / hyper_fk_real(k, (0.5 - sigma).exp())?;
    let d = 1.0 - 2.0 * sigma;
    let correction = 1.0 / ((-(-d).exp_m1()).powf((k - 1.0) * (k - 1.0)) * d.powf(2.0 * k - 1.0));
    let coefficient = arithmetic_factor * hyper_inverse * correction;
    Ok(ConjecturedMoment {
        k,
        sigma,
        x,
        arithmetic_factor,
        hyper_inverse,
        correction,
        coefficient,
        value: coefficient * x.powf(k * d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::agm;
    use std::f64::consts::PI;

    #[test]
    fn k1_sigma0_is_x() {
        let t = steinhaus_asymptotic_rhs(1, 0.0).unwrap();
        assert!((t.constant - 1.0).abs() < 2.0 * A_EPS);
        assert_eq!((t.x_exponent, t.log_exponent), (1.0, 0.0));
    }

    #[test]
    fn k2_sigma0_constant() {
        // a(2) = 6/π², β(2) = 1, Γ(3)/Γ(2)² = 2
        let t = steinhaus_asymptotic_rhs(2, 0.0).unwrap();
        assert!((t.constant / (12.0 / (PI * PI)) - 1.0).abs() < 2.0 * A_EPS, "{t:?}");
        assert_eq!((t.x_exponent, t.log_exponent), (2.0, 1.0));
    }

    #[test]
    fn half_line_shape() {
        let t = steinhaus_asymptotic_rhs(2, 0.5).unwrap();
        assert!((t.constant / (1.0 / (PI * PI)) - 1.0).abs() < 2.0 * A_EPS);
        assert_eq!((t.x_exponent, t.log_exponent), (0.0, 4.0));
        assert!(steinhaus_asymptotic_rhs(2, 0.6).is_err());
        assert!(steinhaus_asymptotic_rhs(2, -0.1).is_err());
    }

    #[test]
    fn rademacher_shape() {
        let t = rademacher_asymptotic_rhs(2).unwrap();
        assert_eq!((t.x_exponent, t.log_exponent), (2.0, 2.0));
        assert!(t.constant > 0.0 && t.constant.is_finite());
        assert!(rademacher_asymptotic_rhs(1).is_err());
    }

    #[test]
    fn char_terms() {
        let base = steinhaus_asymptotic_rhs(2, 0.0).unwrap();
        let one = char_asymptotic_rhs(2, &Factorization::of(1).unwrap()).unwrap();
        assert!((one.constant - base.constant).abs() < 1e-15);
        let t = char_asymptotic_rhs(1, &Factorization::of(7).unwrap()).unwrap();
        assert!((t.constant - 6.0 / 7.0).abs() < 1e-10);
        for q in [2u64, 12, 30, 101] {
            let t = char_asymptotic_rhs(2, &Factorization::of(q).unwrap()).unwrap();
            assert!(t.constant <= base.constant);
        }
    }

    #[test]
    fn comparison_values() {
        assert_eq!(comparison_constant(3, 0.5).unwrap(), 1.0);
        let c = comparison_constant(1, 0.0).unwrap();
        assert!((c - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        for k in 1..=3 {
            let c = comparison_constant(k, 0.5 - 1e-6).unwrap();
            assert!((c - 1.0).abs() < 1e-4, "k={k} c={c}");
        }
    }

    #[test]
    fn real_fk_agrees_with_integer_fk() {
        for k in 1..=4u32 {
            let z = 1.7;
            assert!((hyper_fk_real(k as f64, z).unwrap() - hyper_fk(k, z).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn conjecture_coefficient() {
        let c = conjectured_moment(0.5, 0.0, 1e4).unwrap();
        let m: f64 = 1.0 - (-1.0f64).exp();
        let g = agm(1.0 - m.sqrt(), 1.0 + m.sqrt()).unwrap();
        assert!((c.hyper_inverse - g).abs() < 1e-12);
        let e = std::f64::consts::E;
        assert!((c.correction - (e / (e - 1.0)).powf(0.25)).abs() < 1e-14);
        assert!((c.coefficient - 0.8769).abs() < 2e-4, "{c:?}");
        assert!((c.value - c.coefficient * 100.0).abs() < 1e-9);
    }

    #[test]
    fn terms_finite_and_positive() {
        let terms = [
            steinhaus_asymptotic_rhs(1, 0.0),
            steinhaus_asymptotic_rhs(3, 0.25),
            steinhaus_asymptotic_rhs(3, 0.5),
            rademacher_asymptotic_rhs(3),
            char_asymptotic_rhs(2, &Factorization::of(11).unwrap()),
        ];
        for t in terms {
            let t = t.unwrap();
            for x in [3.0, 10.0, 1e6] {
                let v = t.eval(x);
                assert!(v.is_finite() && v > 0.0, "{t:?} at {x}");
            }
        }
    }
}
