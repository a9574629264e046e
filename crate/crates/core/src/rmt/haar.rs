use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{invalid, Result};

pub const MAX_HAAR_N: usize = 64;
const DRIFT_TOL: f64 = 1e-6;

/// Secular coefficients `c(0..=N)` of one Haar-distributed unitary matrix:
/// `det(I - zM) = Σ c(n) (-z)^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecularSample {
    pub n: usize,
    #[serde(skip)]
    pub coefficients: Vec<Complex<f64>>,
    /// Set when `| |c(N)| - 1 |` exceeds `1e-6`.
    pub flagged: bool,
}

/// Haar-distributed unitary matrix: QR of a complex Ginibre matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex<f64>> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        let phase = if norm > 0.0 { d / norm } else { Complex::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Secular coefficients from the traces `Tr(M^j)` by Newton's identities.
pub fn secular_coefficients(m: &DMatrix<Complex<f64>>) -> Vec<Complex<f64>> {
    let n = m.nrows();
    let mut p = Vec::with_capacity(n + 1);
    p.push(Complex::new(n as f64, 0.0));
    let mut power = m.clone();
    for j in 1..=n {
        p.push(power.trace());
        if j < n {
            power = &power * m;
        }
    }
    let mut e = vec![Complex::new(0.0, 0.0); n + 1];
    e[0] = Complex::new(1.0, 0.0);
    for k in 1..=n {
        let mut acc = Complex::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / k as f64;
    }
    e
}

/// One Haar draw from `U(N)` reduced to its secular coefficients.
pub fn haar_unitary_secular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SecularSample> {
    if n == 0 || n > MAX_HAAR_N {
        return invalid(format!("matrix size must be in 1..={MAX_HAAR_N}, got {n}"));
    }
    let m = haar_unitary(n, rng);
    let coefficients = secular_coefficients(&m);
    let flagged = (coefficients[n].norm() - 1.0).abs() > DRIFT_TOL;
    Ok(SecularSample { n, coefficients, flagged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn unitary_and_unimodular() {
        let mut rng = trial_rng(1, 0);
        for n in [1usize, 2, 5, 16, 40] {
            let m = haar_unitary(n, &mut rng);
            let id = &m.adjoint() * &m;
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((id[(i, j)] - Complex::new(expect, 0.0)).norm() < 1e-12);
                }
            }
            let s = haar_unitary_secular(n, &mut rng).unwrap();
            assert_eq!(s.coefficients[0], Complex::new(1.0, 0.0));
            assert!((s.coefficients[n].norm() - 1.0).abs() < 1e-6);
            assert!(!s.flagged);
        }
    }

    #[test]
    fn newton_matches_diagonal() {
        // diag(a, b): det(I - zM) = 1 - (a+b) z + ab z²
        let a = Complex::new(0.6, 0.8);
        let b = Complex::new(0.0, -1.0);
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![a, b]));
        let c = secular_coefficients(&m);
        assert!((c[1] - (a + b)).norm() < 1e-15);
        assert!((c[2] - a * b).norm() < 1e-15);
    }

    #[test]
    fn n1_phase_is_uniform() {
        let samples = 10_000;
        let mut sum = Complex::new(0.0, 0.0);
        for i in 0..samples {
            let mut rng = trial_rng(2, i);
            sum += haar_unitary_secular(1, &mut rng).unwrap().coefficients[1];
        }
        assert!((sum / samples as f64).norm() < 4.0 / (samples as f64).sqrt());
    }

    #[test]
    fn size_guard() {
        let mut rng = trial_rng(0, 0);
        assert!(haar_unitary_secular(0, &mut rng).is_err());
        assert!(haar_unitary_secular(65, &mut rng).is_err());
    }
}
