use nalgebra::Complex;

use super::haar::haar_unitary_secular;
use crate::error::{invalid, Error, Result};
use crate::stats::{run_trials, MomentEstimate};

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 {
        return invalid("at least two samples are needed for a standard error");
    }
    Ok(())
}

/// Monte Carlo estimate of `E_{U(N)} |Λ_L(z)|^{2k}` with `Λ_L(z) = Σ_{n<=L} c(n)(-z)^n`.
///
/// Only `|z|` matters because the Haar measure is invariant under rotation.
pub fn mc_truncated_moment(k: u32, l: u32, z_abs: f64, n: usize, samples: u64, seed: u64) -> Result<MomentEstimate> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if (n as u64) < k as u64 * l as u64 {
        return invalid(format!("the lattice identity needs N >= kL, got N={n}, kL={}", k * l));
    }
    if (l as usize) > n {
        return invalid("truncation length exceeds the matrix size");
    }
    check_samples(samples)?;
    let failures = std::sync::atomic::AtomicBool::new(false);
    let values = run_trials(samples, seed, |rng| match haar_unitary_secular(n, rng) {
        Ok(s) => {
            let mut lam = Complex::new(0.0, 0.0);
            let mut zp = 1.0;
            for c in &s.coefficients[..=l as usize] {
                lam += c * zp;
                zp *= -z_abs;
            }
            lam.norm_sqr().powi(k as i32)
        }
        Err(_) => {
            failures.store(true, std::sync::atomic::Ordering::Relaxed);
            f64::NAN
        }
    });
    if failures.into_inner() {
        return Err(Error::Internal("Haar sampling failed".into()));
    }
    Ok(MomentEstimate::from_samples(&values, seed))
}

/// Monte Carlo estimate of `E Π_j c(j)^{a_j} conj(c(j))^{b_j}` over `U(N)`,
/// using the real part of each sample (the imaginary part has mean zero by
/// symmetry whenever the expectation is nonzero).
pub fn mc_secular_moment(n: usize, a: &[u32], b: &[u32], samples: u64, seed: u64) -> Result<MomentEstimate> {
    if a.len() > n || b.len() > n {
        return invalid("exponent vectors longer than the matrix size");
    }
    check_samples(samples)?;
    let values = run_trials(samples, seed, |rng| {
        let s = haar_unitary_secular(n, rng).expect("size checked");
        let mut prod = Complex::new(1.0, 0.0);
        for (j, &e) in a.iter().enumerate() {
            prod *= s.coefficients[j + 1].powu(e);
        }
        for (j, &e) in b.iter().enumerate() {
            prod *= s.coefficients[j + 1].conj().powu(e);
        }
        prod.re
    });
    Ok(MomentEstimate::from_samples(&values, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmt::unitary_truncated_moment_exact;

    #[test]
    fn k1_matches_geometric() {
        let w: f64 = 1.5 * 1.5;
        let exact = 1.0 + w + w * w;
        let e = mc_truncated_moment(1, 2, 1.5, 4, 4000, 3).unwrap();
        assert!(e.agrees_with(exact, 3.0), "{e:?} vs {exact}");
    }

    #[test]
    fn k2_matches_exact() {
        let exact = unitary_truncated_moment_exact(2, 3, 1.5).unwrap().value;
        let e = mc_truncated_moment(2, 3, 1.5, 8, 4000, 4).unwrap();
        assert!(e.agrees_with(exact, 3.0), "{e:?} vs {exact}");
    }

    #[test]
    fn diaconis_gamburd_small() {
        let e = mc_secular_moment(8, &[1], &[1], 4000, 5).unwrap();
        assert!(e.agrees_with(1.0, 3.0), "{e:?}");
        let e = mc_secular_moment(8, &[0, 1], &[0, 1], 4000, 6).unwrap();
        assert!(e.agrees_with(1.0, 3.0), "{e:?}");
        let e = mc_secular_moment(8, &[2], &[2], 4000, 8).unwrap();
        assert!(e.agrees_with(2.0, 3.0), "{e:?}");
        let e = mc_secular_moment(8, &[2], &[0, 1], 4000, 7).unwrap();
        assert!(e.agrees_with(1.0, 3.0), "{e:?}");
    }

    #[test]
    fn threshold_enforced() {
        assert!(mc_truncated_moment(2, 3, 1.5, 5, 100, 0).is_err());
        assert!(mc_truncated_moment(2, 3, 1.5, 6, 1, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let a = mc_truncated_moment(2, 2, 1.3, 4, 200, 9).unwrap();
        let b = mc_truncated_moment(2, 2, 1.3, 4, 200, 9).unwrap();
        assert_eq!(a, b);
    }
}
