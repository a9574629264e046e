use std::f64::consts::PI;

use crate::error::{invalid, Result};

// Lanczos approximation, g = 7, nine coefficients (Godfrey's set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_series(z: f64) -> f64 {
    // z is the shifted argument x - 1
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Gamma function for positive real arguments.
pub fn real_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return invalid(format!("gamma argument must be positive and finite, got {x}"));
    }
    Ok(gamma_pos(x))
}

fn gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the approximation in its accurate range
        return PI / ((PI * x).sin() * gamma_pos(1.0 - x));
    }
    if x == x.floor() && x <= 21.0 {
        let mut f = 1.0;
        for i in 2..(x as u64) {
            f *= i as f64;
        }
        return f;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_series(z)
}

/// Natural log of the gamma function for positive real arguments.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return invalid(format!("ln_gamma argument must be positive and finite, got {x}"));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    if x < 20.0 {
        return gamma_pos(x).ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_series(z).ln()
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiply
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `d_k(p^m) = Γ(k+m) / (m! Γ(k))`, the k-fold divisor function at a prime
/// power, continued to real `k > 0`.
///
/// Integer `k` goes through an exact binomial whenever the result is exactly
/// representable; otherwise the value comes from log-gamma differences so that
/// large `m` cannot overflow.
pub fn dk_prime_power(k: f64, m: u32) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return invalid(format!("divisor-function order must be positive, got {k}"));
    }
    if m == 0 {
        return Ok(1.0);
    }
    if k.fract() == 0.0 && k < 1e6 {
        if let Some(b) = binomial_u128(k as u64 + m as u64 - 1, m as u64) {
            if b < (1u128 << 53) {
                return Ok(b as f64);
            }
        }
    }
    let lg = ln_gamma_pos(k + m as f64) - ln_gamma_pos(m as f64 + 1.0) - ln_gamma_pos(k);
    Ok(lg.exp())
}

/// Table of `d_k(p^m)` for `m = 0..len` by the ratio recurrence
/// `d(m+1) = d(m) (k+m)/(m+1)`.
pub fn dk_table(k: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut d = 1.0;
    for m in 0..len {
        out.push(d);
        d *= (k + m as f64) / (m as f64 + 1.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_reference_values() {
        assert_eq!(real_gamma(5.0).unwrap(), 24.0);
        assert!(rel(real_gamma(0.5).unwrap(), PI.sqrt()) < 1e-13);
        assert!(rel(real_gamma(1.5).unwrap(), PI.sqrt() / 2.0) < 1e-13);
        assert!(rel(real_gamma(0.1).unwrap(), 9.513_507_698_668_732) < 1e-12);
        assert!(rel(real_gamma(7.3).unwrap(), 1_271.423_633_663_908_5) < 1e-12);
        let ratio = real_gamma(5.0).unwrap() / real_gamma(3.0).unwrap().powi(2);
        assert_eq!(ratio, 6.0);
    }

    #[test]
    fn gamma_recurrence() {
        for i in 1..200 {
            let x = 0.37 + i as f64 * 0.05;
            let lhs = real_gamma(x + 1.0).unwrap();
            let rhs = x * real_gamma(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn ln_gamma_agrees_with_gamma() {
        for &x in &[0.2, 0.5, 1.0, 3.7, 19.5, 25.0, 40.25, 120.0] {
            let direct = real_gamma(x).unwrap().ln();
            assert!((ln_gamma(x).unwrap() - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn nonpositive_arguments_rejected() {
        assert!(real_gamma(0.0).is_err());
        assert!(real_gamma(-1.5).is_err());
        assert!(ln_gamma(0.0).is_err());
    }

    #[test]
    fn dk_examples() {
        assert_eq!(dk_prime_power(2.0, 3).unwrap(), 4.0);
        assert_eq!(dk_prime_power(0.7, 0).unwrap(), 1.0);
        assert!((dk_prime_power(0.5, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!(dk_prime_power(0.0, 1).is_err());
    }

    #[test]
    fn dk_integer_k_is_integer() {
        for k in 1..=8u64 {
            for m in 0..=30u32 {
                let v = dk_prime_power(k as f64, m).unwrap();
                let exact = binomial_u128(k + m as u64 - 1, m as u64).unwrap() as f64;
                assert_eq!(v, exact);
                assert_eq!(v.fract(), 0.0);
            }
        }
    }

    #[test]
    fn dk_table_matches_pointwise() {
        for &k in &[0.5, 1.0, 2.0, 3.5] {
            let t = dk_table(k, 61);
            for (m, &d) in t.iter().enumerate() {
                let v = dk_prime_power(k, m as u32).unwrap();
                assert!(rel(d, v) < 1e-12, "k={k} m={m}");
            }
        }
    }
}
