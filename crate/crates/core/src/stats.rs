//! Monte Carlo summaries.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::pairwise_sum;
use crate::rng::trial_rng;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl MomentEstimate {
    /// Summarizes per-trial values. The reduction has a fixed shape, so the
    /// result depends only on the values and their order.
    pub fn from_samples(values: &[f64], seed: u64) -> Self {
        let n = values.len();
        if n == 0 {
            return Self { mean: f64::NAN, stderr: f64::NAN, trials: 0, seed };
        }
        let mean = pairwise_sum(values) / n as f64;
        let stderr = if n > 1 {
            let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
            (pairwise_sum(&dev) / (n - 1) as f64 / n as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, stderr, trials: n as u64, seed }
    }

    /// Number of standard errors separating the estimate from `target`.
    /// A zero standard error counts as agreement only on exact equality.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.mean - target).abs();
        if self.stderr > 0.0 {
            d / self.stderr
        } else if d == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn agrees_with(&self, target: f64, sigmas: f64) -> bool {
        self.z_score(target) <= sigmas
    }
}

/// Runs `trials` independent draws in parallel, trial `i` using the stream
/// `(seed, i)`, and returns the values in trial order.
pub(crate) fn run_trials<F>(trials: u64, seed: u64, f: F) -> Vec<f64>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| f(&mut trial_rng(seed, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_stderr() {
        let e = MomentEstimate::from_samples(&[1.0, 2.0, 3.0, 4.0], 0);
        assert_eq!(e.mean, 2.5);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((e.stderr - sd / 2.0).abs() < 1e-15);
        assert_eq!(e.trials, 4);
    }

    #[test]
    fn constant_samples_have_zero_stderr() {
        let e = MomentEstimate::from_samples(&[1.0; 10], 5);
        assert_eq!(e.stderr, 0.0);
        assert!(e.agrees_with(1.0, 3.0));
        assert!(!e.agrees_with(1.1, 3.0));
    }

    #[test]
    fn trials_are_order_stable() {
        use rand::Rng;
        let a = run_trials(50, 9, |r| r.random::<f64>());
        let b = run_trials(50, 9, |r| r.random::<f64>());
        assert_eq!(a, b);
    }
}
