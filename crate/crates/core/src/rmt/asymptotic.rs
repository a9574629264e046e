use num_traits::ToPrimitive;

use super::hyper::hyper_fk;
use crate::arith::real_gamma;
use crate::error::{invalid, Error, Result};
use crate::polytope::{beta_constant, gamma_constant};

fn check(k: u32, z_abs: f64) -> Result<()> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if !(z_abs > 1.0) || !z_abs.is_finite() {
        return invalid(format!("|z| must exceed 1, got {z_abs}"));
    }
    Ok(())
}

fn to_f64(r: &num_rational::BigRational) -> Result<f64> {
    r.to_f64().ok_or_else(|| Error::Internal("rational constant not representable".into()))
}

/// `L^e` with the convention `0^0 = 1`.
fn log_power(l: u32, e: i32) -> f64 {
    (l as f64).powi(e)
}

/// Unitary main term
/// `β(k) Γ(2k-1)/Γ(k)² F_k(z) (1-|z|^-2)^{1-2k} |z|^{2kL} L^{(k-1)²}`.
///
/// At `L = 0` the log factor is `0^{(k-1)²}`, i.e. 1 for `k = 1` and 0 otherwise.
pub fn unitary_asymptotic_rhs(k: u32, l: u32, z_abs: f64) -> Result<f64> {
    check(k, z_abs)?;
    let beta = to_f64(&beta_constant(k)?.value)?;
    let kf = k as f64;
    let pre = beta * real_gamma(2.0 * kf - 1.0)? / real_gamma(kf)?.powi(2) * hyper_fk(k, z_abs)?
        / (1.0 - z_abs.powi(-2)).powi(2 * k as i32 - 1);
    Ok(pre * z_abs.powf(2.0 * kf * l as f64) * log_power(l, ((k - 1) * (k - 1)) as i32))
}

/// Orthogonal main term `γ (1-|z|^-1)^{-2k} |z|^{2kL} L^{2k²-3k}` for a given
/// value of the constant `γ`.
pub fn so_asymptotic_rhs_with(k: u32, l: u32, z_abs: f64, gamma: f64) -> Result<f64> {
    check(k, z_abs)?;
    if k == 1 {
        return Ok(z_abs.powi(2 * l as i32) / (1.0 - z_abs.powi(-2)));
    }
    let e = (2 * k * k - 3 * k) as i32;
    Ok(gamma / (1.0 - 1.0 / z_abs).powi(2 * k as i32) * z_abs.powf(2.0 * k as f64 * l as f64) * log_power(l, e))
}

/// Orthogonal main term with `γ` taken as the volume of the unit-degree
/// slice, which is the normalization the exact lattice sums converge to.
///
/// For `k = 1` the geometric sum gives `|z|^{2L} / (1-|z|^-2)` directly.
pub fn so_asymptotic_rhs(k: u32, l: u32, z_abs: f64) -> Result<f64> {
    check(k, z_abs)?;
    if k == 1 {
        return so_asymptotic_rhs_with(1, l, z_abs, 1.0);
    }
    let g = to_f64(&gamma_constant(k)?.unit_slice)?;
    so_asymptotic_rhs_with(k, l, z_abs, g)
}
