use serde::Serialize;

use crate::arith::{binomial_u128, real_gamma};
use crate::error::{invalid, Result};

fn check(k: u32, z_abs: f64) -> Result<()> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if !(z_abs > 1.0) || !z_abs.is_finite() {
        return invalid(format!("|z| must exceed 1, got {z_abs}"));
    }
    Ok(())
}

/// `F_k(z) = ₂F₁(1-k, 1-k; 2-2k; 1-|z|^-2)`, a terminating sum of `k` terms.
pub fn hyper_fk(k: u32, z_abs: f64) -> Result<f64> {
    check(k, z_abs)?;
    let w = 1.0 - z_abs.powi(-2);
    let a = 1.0 - k as f64;
    let c = 2.0 - 2.0 * k as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 0..k.saturating_sub(1) {
        let mf = m as f64;
        term *= (a + mf) * (a + mf) / ((c + mf) * (mf + 1.0)) * w;
        sum += term;
    }
    Ok(sum)
}

/// The residue-sum and closed-form evaluations of the same integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct I1Pair {
    pub residue: f64,
    pub closed_form: f64,
}

impl I1Pair {
    pub fn relative_gap(&self) -> f64 {
        ((self.residue - self.closed_form) / self.closed_form).abs()
    }
}

/// Residue sum
/// `Γ(k)^-1 Σ_m (-1)^m C(k-1,m) Γ(k+m)/Γ(m+1) (1-|z|²)^-m / (1-|z|^-2)^k`
/// against `Γ(2k-1)/Γ(k)² F_k(z) / (1-|z|^-2)^{2k-1}`.
pub fn i1_two_ways(k: u32, z_abs: f64) -> Result<I1Pair> {
    check(k, z_abs)?;
    let w = z_abs * z_abs;
    let u = 1.0 - 1.0 / w;
    let kf = k as f64;
    let mut s = 0.0;
    // (-1)^m (1-w)^-m = (w-1)^-m, so every term is positive
    let r = 1.0 / (w - 1.0);
    for m in 0..k {
        let c = binomial_u128(k as u64 - 1, m as u64).expect("small binomial") as f64;
        s += c * real_gamma(kf + m as f64)? / real_gamma(m as f64 + 1.0)? * r.powi(m as i32);
    }
    let residue = s / real_gamma(kf)? / u.powi(k as i32);
    let closed_form = real_gamma(2.0 * kf - 1.0)? / real_gamma(kf)?.powi(2) * hyper_fk(k, z_abs)?
        / u.powi(2 * k as i32 - 1);
    Ok(I1Pair { residue, closed_form })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fk_examples() {
        assert_eq!(hyper_fk(1, 3.0).unwrap(), 1.0);
        for &z in &[1.1, 2.0, 5.0] {
            let expect = 1.0 - (1.0 - 1.0 / (z * z)) / 2.0;
            assert!((hyper_fk(2, z).unwrap() - expect).abs() < 1e-15);
        }
        for k in 1..=6 {
            assert!((hyper_fk(k, 1.0 + 1e-9).unwrap() - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn i1_k1() {
        let p = i1_two_ways(1, 2.0).unwrap();
        let expect = 1.0 / (1.0 - 0.25);
        assert!((p.residue - expect).abs() < 1e-15);
        assert!((p.closed_form - expect).abs() < 1e-15);
    }

    #[test]
    fn i1_sweep() {
        for k in 1..=6 {
            for &z in &[1.1, 2.0, 5.0] {
                let p = i1_two_ways(k, z).unwrap();
                assert!(p.relative_gap() < 1e-10, "k={k} z={z} {p:?}");
            }
        }
    }

    #[test]
    fn i1_k2_z2_digits() {
        let p = i1_two_ways(2, 2.0).unwrap();
        assert!((p.residue - 80.0 / 27.0).abs() < 1e-12);
        assert!((p.closed_form - 80.0 / 27.0).abs() < 1e-12);
    }
}
