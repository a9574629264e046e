//! Euler products with certified truncation.
//!
//! Every product handled here has local factors of the form `1 + O(p^-2)`.
//! The log local factor is expanded as a power series `Σ_{j≥2} c_j y^j` in
//! `y = 1/p`, so for `p > P` it is bounded by `y² C(P)` with
//! `C(P) = Σ_j |c_j| P^{2-j}`. Summing against
//! `Σ_{p>P} p^-2 ≤ 2.51012 / (P ln P)` (from `π(t) ≤ 1.25506 t / ln t`) gives
//! the tail bound. `P` is doubled until the bound drops below `eps / 2`; the
//! other half of the budget covers inner-sum truncation and rounding.

use serde::Serialize;

use super::sieve::{primes_up_to, Factorization};
use super::sum::CompensatedSum;
use crate::error::{invalid, Error, Result};

/// A truncated Euler product together with a bound on `|log value - log exact|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerProductResult {
    pub value: f64,
    pub truncation_prime: u64,
    pub tail_bound: f64,
}

const TAIL_PRIME_SUM: f64 = 2.51012;
const SERIES_TERMS: usize = 80;
const MIN_CUTOFF: u64 = 1000;
const MAX_CUTOFF: u64 = 1 << 33;

/// Which local factor an Euler product uses.
#[derive(Debug, Clone, Copy)]
enum Local {
    /// `(1-1/p)^{k²} Σ_m d_k(p^m)² p^-m`
    A(f64),
    /// `(1-1/p)^{k(2k-1)} Σ_{i≤k} C(2k,2i) p^-i`
    B(u32),
}

impl Local {
    /// Coefficients of the inner series in powers of `y = 1/p`.
    fn inner_coefficients(self, len: usize) -> Vec<f64> {
        match self {
            Local::A(k) => {
                let mut out = Vec::with_capacity(len);
                let mut d = 1.0;
                for m in 0..len {
                    out.push(d * d);
                    d *= (k + m as f64) / (m as f64 + 1.0);
                }
                out
            }
            Local::B(k) => {
                let mut out = vec![0.0; len];
                for (i, slot) in out.iter_mut().enumerate().take(k as usize + 1) {
                    *slot = binom_f64(2 * k as u64, 2 * i as u64);
                }
                out
            }
        }
    }

    fn outer_exponent(self) -> f64 {
        match self {
            Local::A(k) => k * k,
            Local::B(k) => (k * (2 * k - 1)) as f64,
        }
    }

    /// Log of the local factor at `p`, and an upper bound on its truncation error.
    fn log_factor(self, p: f64, inner_tol: f64) -> Result<(f64, f64)> {
        let y = 1.0 / p;
        let (inner, err) = match self {
            Local::A(k) => dk_square_series(k, y, inner_tol)?,
            Local::B(k) => {
                let mut s = CompensatedSum::new();
                let mut yi = 1.0;
                for i in 0..=k as u64 {
                    s.add(binom_f64(2 * k as u64, 2 * i) * yi);
                    yi *= y;
                }
                (s.value(), 0.0)
            }
        };
        let log = self.outer_exponent() * (-y).ln_1p() + inner.ln();
        Ok((log, err / inner))
    }

    /// Taylor coefficients `c_j` of the log local factor in `y`.
    fn log_series(self) -> Vec<f64> {
        let a = self.inner_coefficients(SERIES_TERMS);
        let mut l = series_log(&a);
        let e = self.outer_exponent();
        for (j, c) in l.iter_mut().enumerate().skip(1) {
            *c -= e / j as f64;
        }
        l
    }
}

fn binom_f64(n: u64, k: u64) -> f64 {
    super::special::binomial_u128(n, k).expect("small binomial") as f64
}

/// `Σ_m d_k(p^m)² y^m` summed until a geometric tail bound drops below `tol`.
fn dk_square_series(k: f64, y: f64, tol: f64) -> Result<(f64, f64)> {
    let mut s = CompensatedSum::new();
    let mut d = 1.0f64;
    let mut ym = 1.0f64;
    for m in 0..100_000u32 {
        let term = d * d * ym;
        s.add(term);
        let mf = m as f64;
        // term ratios are monotone in m and tend to y
        let ratio = ((k + mf) / (mf + 1.0)).powi(2) * y;
        let r = ratio.max(y);
        if r < 1.0 {
            let tail = term * r / (1.0 - r);
            if tail < tol {
                return Ok((s.value(), tail));
            }
        }
        d *= (k + mf) / (mf + 1.0);
        ym *= y;
    }
    Err(Error::Internal(format!("local series for k={k}, y={y} did not converge")))
}

/// Power-series logarithm of `a` with `a[0] = 1`.
fn series_log(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut l = vec![0.0; n];
    for i in 1..n {
        let mut acc = i as f64 * a[i];
        for j in 1..i {
            acc -= j as f64 * l[j] * a[i - j];
        }
        l[i] = acc / i as f64;
    }
    l
}

/// Bound on `Σ_{p>P} |log local(p)|`, or `None` if the series bound is not
/// yet reliable at this `P`.
fn tail_bound(series: &[f64], cutoff: u64) -> Option<f64> {
    let inv = 1.0 / cutoff as f64;
    let mut c = 0.0;
    let mut pw = 1.0;
    for &cj in &series[2..] {
        c += cj.abs() * pw;
        pw *= inv;
    }
    // the last retained term must be negligible for the truncated series to bound the function
    let last = series[series.len() - 1].abs() * pw;
    if !last.is_finite() || (last > 0.0 && last > 1e-20 * c) {
        return None;
    }
    let c = c + 2.0 * last;
    Some(c * TAIL_PRIME_SUM / (cutoff as f64 * (cutoff as f64).ln()))
}

fn product_to(local: Local, cutoff: u64, inner_tol: f64) -> Result<EulerProductResult> {
    let series = local.log_series();
    let Some(tail) = tail_bound(&series, cutoff) else {
        return Err(Error::Internal("log series does not converge at this cutoff".into()));
    };
    let mut log = CompensatedSum::new();
    let mut err = 0.0;
    let mut count = 0u64;
    let mut failure = None;
    primes_up_to(cutoff, |p| {
        if failure.is_some() {
            return;
        }
        let pf = p as f64;
        match local.log_factor(pf, inner_tol / (pf * pf)) {
            Ok((lf, e)) => {
                log.add(lf);
                err += e + 4.0 * f64::EPSILON * lf.abs();
                count += 1;
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let value = log.value().exp();
    let rounding = 4.0 * f64::EPSILON * (count as f64).sqrt();
    Ok(EulerProductResult {
        value,
        truncation_prime: cutoff,
        tail_bound: tail + err + rounding,
    })
}

fn certified(local: Local, eps: f64) -> Result<EulerProductResult> {
    if !(eps > 0.0) || !eps.is_finite() {
        return invalid(format!("eps must be positive, got {eps}"));
    }
    let series = local.log_series();
    let mut cutoff = MIN_CUTOFF;
    loop {
        if let Some(t) = tail_bound(&series, cutoff) {
            if t <= eps / 2.0 {
                break;
            }
        }
        cutoff *= 2;
        if cutoff > MAX_CUTOFF {
            return Err(Error::Resource {
                what: "Euler product truncation prime",
                needed: cutoff as u128,
                limit: MAX_CUTOFF as u128,
            });
        }
    }
    let res = product_to(local, cutoff, eps * 1e-3)?;
    if res.tail_bound > eps {
        return Err(Error::Internal(format!(
            "tail bound {} exceeds requested {eps}",
            res.tail_bound
        )));
    }
    Ok(res)
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return invalid(format!("k must be positive, got {k}"));
    }
    Ok(())
}

/// The arithmetic factor `a(k) = Π_p (1-1/p)^{k²} Σ_m d_k(p^m)² p^-m`, with
/// `|log value - log a(k)| ≤ tail_bound ≤ eps`.
pub fn a_constant(k: f64, eps: f64) -> Result<EulerProductResult> {
    check_k(k)?;
    certified(Local::A(k), eps)
}

/// `a(k)` truncated at a fixed prime, with the tail bound valid for that cutoff.
pub fn a_constant_to(k: f64, truncation_prime: u64) -> Result<EulerProductResult> {
    check_k(k)?;
    product_to(Local::A(k), truncation_prime.max(MIN_CUTOFF), 1e-15)
}

/// `b(k) = Π_p (1-1/p)^{k(2k-1)} Σ_{i=0}^{k} C(2k,2i) p^-i`.
pub fn b_constant(k: u32, eps: f64) -> Result<EulerProductResult> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    certified(Local::B(k), eps)
}

/// `b(k)` truncated at a fixed prime.
pub fn b_constant_to(k: u32, truncation_prime: u64) -> Result<EulerProductResult> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    product_to(Local::B(k), truncation_prime.max(MIN_CUTOFF), 0.0)
}

/// `Π_{p|q} (Σ_m d_k(p^m)² p^-m)^-1`, each inner sum accurate to `1e-12`.
pub fn char_local_factor(k: u32, q: &Factorization) -> Result<f64> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let mut out = 1.0;
    for p in q.distinct_primes() {
        let (s, _) = dk_square_series(k as f64, 1.0 / p as f64, 1e-13)?;
        out /= s;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn a_of_one_is_one() {
        for eps in [1e-4, 1e-8] {
            let r = a_constant(1.0, eps).unwrap();
            assert!((r.value - 1.0).abs() < eps);
            assert!(r.tail_bound <= eps);
        }
    }

    #[test]
    fn a_of_two_is_inverse_zeta_two() {
        let r = a_constant(2.0, 1e-8).unwrap();
        assert!((r.value - 6.0 / (PI * PI)).abs() < 1e-8);
    }

    #[test]
    fn a_of_one_half() {
        // independent oracle: plain product over p < 1e7 with the inner series
        // summed to 1e-20, plus the leading tail -(1/64) Σ_{p>1e7} p^-2
        let r = a_constant(0.5, 1e-8).unwrap();
        assert!((r.value - 0.988_359_083).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn b_of_one_is_inverse_zeta_two() {
        let r = b_constant(1, 1e-8).unwrap();
        assert!((r.value - 6.0 / (PI * PI)).abs() < 1e-8);
    }

    #[test]
    fn log_series_of_a_two() {
        // (1+y)/(1-y)^3 times (1-y)^4 is 1-y², whose log is -y² - y⁴/2 - ...
        let s = Local::A(2.0).log_series();
        assert!(s[1].abs() < 1e-14);
        assert!((s[2] + 1.0).abs() < 1e-14);
        assert!(s[3].abs() < 1e-13);
        assert!((s[4] + 0.5).abs() < 1e-13);
    }

    #[test]
    fn leading_log_coefficient_of_a() {
        for &k in &[0.5, 1.5, 3.0] {
            let s = Local::A(k).log_series();
            let expect = -(k * (k - 1.0) / 2.0).powi(2);
            assert!((s[2] - expect).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn b_two_matches_slow_product() {
        let fast = b_constant(2, 1e-7).unwrap();
        // independent per-prime product without the log-space machinery
        let mut prod = 1.0f64;
        primes_up_to(10_000_000, |p| {
            let y = 1.0 / p as f64;
            prod *= (1.0 - y).powi(6) * (1.0 + 6.0 * y + y * y);
        });
        assert!((fast.value - prod).abs() < 1e-6, "{} vs {prod}", fast.value);
    }

    #[test]
    fn raising_cutoff_stays_in_bound() {
        let lo = a_constant_to(0.5, 2000).unwrap();
        let hi = a_constant_to(0.5, 64_000).unwrap();
        assert!((hi.value.ln() - lo.value.ln()).abs() <= lo.tail_bound);
        let lo = b_constant_to(3, 1000).unwrap();
        let hi = b_constant_to(3, 50_000).unwrap();
        assert!((hi.value.ln() - lo.value.ln()).abs() <= lo.tail_bound);
    }

    #[test]
    fn char_factor_examples() {
        let q = Factorization::of(7).unwrap();
        assert!((char_local_factor(1, &q).unwrap() - (1.0 - 1.0 / 7.0)).abs() < 1e-12);
        assert_eq!(char_local_factor(3, &Factorization::of(1).unwrap()).unwrap(), 1.0);
        let q = Factorization::of(2).unwrap();
        assert!((char_local_factor(2, &q).unwrap() - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn char_factor_reciprocal_identity() {
        // closed-form inner sum for k = 2 is (1+y)/(1-y)^3
        let q = Factorization::of(3 * 5 * 11).unwrap();
        let mut prod = 1.0;
        for p in [3.0f64, 5.0, 11.0] {
            let y = 1.0 / p;
            prod *= (1.0 + y) / (1.0 - y).powi(3);
        }
        assert!((char_local_factor(2, &q).unwrap() * prod - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(a_constant(0.0, 1e-4).is_err());
        assert!(a_constant(1.0, 0.0).is_err());
        assert!(b_constant(0, 1e-4).is_err());
    }
}
