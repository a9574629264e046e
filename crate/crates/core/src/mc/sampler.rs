use std::f64::consts::TAU;

use nalgebra::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{build_spf_sieve, pairwise_sum, FactorSieve};
use crate::error::{invalid, Error, Result};
use crate::stats::{run_trials, MomentEstimate};

/// Largest `x` accepted by the samplers.
pub const MAX_SAMPLE_X: u64 = 10_000_000;
pub const MIN_TRIALS: u64 = 100;

/// Random multiplicative model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Completely multiplicative, uniform on the unit circle at primes.
    Steinhaus,
    /// Supported on squarefree integers, uniform on `{-1, 1}` at primes.
    Rademacher,
}

fn check_x(x: u64) -> Result<()> {
    if x == 0 {
        return invalid("x must be at least 1");
    }
    if x > MAX_SAMPLE_X {
        return Err(Error::Resource { what: "sampled terms", needed: x as u128, limit: MAX_SAMPLE_X as u128 });
    }
    Ok(())
}

fn sieve_for(x: u64) -> Result<Option<FactorSieve>> {
    check_x(x)?;
    if x < 2 {
        Ok(None)
    } else {
        build_spf_sieve(x).map(Some)
    }
}

/// One draw of the angles `θ_n ∈ [0,1)`, `X_n = e^{2πiθ_n}`, for `n <= x`.
///
/// `theta[n]` holds `θ_n`; `theta[0]` is unused and set to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSieve {
    pub x: u64,
    pub theta: Vec<f64>,
}

impl PhaseSieve {
    /// Draws `θ_p` for each prime and extends by `θ_n = θ_{n/p} + θ_p mod 1`
    /// with `p` the smallest prime factor of `n`.
    pub fn draw<R: Rng + ?Sized>(sieve: &FactorSieve, rng: &mut R) -> Self {
        let x = sieve.limit();
        let mut theta = vec![0.0; x as usize + 1];
        for &p in sieve.primes() {
            theta[p as usize] = rng.random::<f64>();
        }
        for n in 4..=x {
            let p = sieve.spf(n);
            if p != n {
                let t = theta[(n / p) as usize] + theta[p as usize];
                theta[n as usize] = if t >= 1.0 { t - 1.0 } else { t };
            }
        }
        Self { x, theta }
    }

    pub fn phase(&self, n: u64) -> Complex<f64> {
        Complex::from_polar(1.0, TAU * self.theta[n as usize])
    }
}

/// Draws Rademacher values `Y_n ∈ {-1, 0, 1}` for `n <= x`.
fn rademacher_values<R: Rng + ?Sized>(sieve: &FactorSieve, rng: &mut R) -> Vec<i8> {
    let x = sieve.limit() as usize;
    let mut y = vec![0i8; x + 1];
    y[1] = 1;
    for &p in sieve.primes() {
        y[p as usize] = if rng.random::<bool>() { 1 } else { -1 };
    }
    for n in 4..=x {
        let p = sieve.spf(n as u64) as usize;
        if p != n {
            let m = n / p;
            y[n] = if m.is_multiple_of(p) { 0 } else { y[m] * y[p] };
        }
    }
    y
}

/// Reusable sampler for `S = Σ_{n<=x} f(n) n^-σ`.
#[derive(Debug, Clone)]
pub struct SumSampler {
    model: Model,
    x: u64,
    sieve: Option<FactorSieve>,
    /// `n^-σ`, or empty when `σ = 0`.
    weights: Vec<f64>,
}

impl SumSampler {
    pub fn new(model: Model, x: u64, sigma: f64) -> Result<Self> {
        if !sigma.is_finite() {
            return invalid("sigma must be finite");
        }
        let sieve = sieve_for(x)?;
        let weights = if sigma == 0.0 {
            Vec::new()
        } else {
            (0..=x).map(|n| (n as f64).powf(-sigma)).collect()
        };
        Ok(Self { model, x, sieve, weights })
    }

    fn weight(&self, n: usize) -> f64 {
        if self.weights.is_empty() {
            1.0
        } else {
            self.weights[n]
        }
    }

    /// One draw of `S` (real for Rademacher).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex<f64> {
        let Some(sieve) = &self.sieve else {
            return Complex::new(1.0, 0.0);
        };
        match self.model {
            Model::Steinhaus => {
                let phases = PhaseSieve::draw(sieve, rng);
                let (re, im): (Vec<f64>, Vec<f64>) = (1..=self.x as usize)
                    .map(|n| {
                        let (s, c) = (TAU * phases.theta[n]).sin_cos();
                        let w = self.weight(n);
                        (w * c, w * s)
                    })
                    .unzip();
                Complex::new(pairwise_sum(&re), pairwise_sum(&im))
            }
            Model::Rademacher => {
                let y = rademacher_values(sieve, rng);
                let terms: Vec<f64> = (1..=self.x as usize).map(|n| y[n] as f64 * self.weight(n)).collect();
                Complex::new(pairwise_sum(&terms), 0.0)
            }
        }
    }
}

/// One draw of `Σ_{n<=x} X_n n^-σ` for Steinhaus `X`.
pub fn sample_steinhaus_sum<R: Rng + ?Sized>(x: u64, sigma: f64, rng: &mut R) -> Result<Complex<f64>> {
    Ok(SumSampler::new(Model::Steinhaus, x, sigma)?.sample(rng))
}

/// One draw of `Σ_{n<=x} Y_n` for Rademacher `Y`.
pub fn sample_rademacher_sum<R: Rng + ?Sized>(x: u64, rng: &mut R) -> Result<i64> {
    let Some(sieve) = sieve_for(x)? else {
        return Ok(1);
    };
    Ok(rademacher_values(&sieve, rng)[1..].iter().map(|&v| v as i64).sum())
}

/// `|s|^q` as `exp(q ln|s|)`, with `|s| = 0` contributing 0.
fn abs_power(s: Complex<f64>, q: f64) -> f64 {
    let r = s.norm();
    if r == 0.0 {
        0.0
    } else {
        (q * r.ln()).exp()
    }
}

/// Monte Carlo estimate of `E|Σ_{n<=x} f(n) n^-σ|^{two_k}` for any real `two_k > 0`.
pub fn estimate_abs_moment(model: Model, x: u64, sigma: f64, two_k: f64, trials: u64, seed: u64) -> Result<MomentEstimate> {
    if !(two_k > 0.0) || !two_k.is_finite() {
        return invalid(format!("the exponent must be positive, got {two_k}"));
    }
    if trials < MIN_TRIALS {
        return invalid(format!("at least {MIN_TRIALS} trials are needed, got {trials}"));
    }
    let sampler = SumSampler::new(model, x, sigma)?;
    let values = run_trials(trials, seed, |rng| abs_power(sampler.sample(rng), two_k));
    Ok(MomentEstimate::from_samples(&values, seed))
}
