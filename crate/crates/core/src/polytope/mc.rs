use rand::Rng;
use rand_distr::Exp1;

use super::PolytopeSpec;
use crate::error::{invalid, Result};
use crate::stats::{run_trials, MomentEstimate};

pub const MIN_MC_SAMPLES: u64 = 1000;

/// Fills `out` with a uniform point of `{x >= 0 : Σx = 1}` (`closed`) or of
/// `{x >= 0 : Σx <= 1}` (one extra spacing is drawn and discarded).
fn simplex_point<R: Rng>(rng: &mut R, out: &mut [f64], closed: bool) {
    let mut total = 0.0;
    for v in out.iter_mut() {
        let e: f64 = rng.sample(Exp1);
        *v = e;
        total += e;
    }
    if !closed {
        total += rng.sample::<f64, _>(Exp1);
    }
    out.iter_mut().for_each(|v| *v /= total);
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Rejection-sampling estimate of the volume of `beta_mixed(k)` or
/// `alpha_box(k)` at `t = 1`.
///
/// Rows are drawn uniformly from their simplex and the sample is accepted when
/// every column sum is at most 1, so the estimate is the product of row-simplex
/// volumes times the acceptance rate. With no acceptances the mean is 0 and
/// `stderr` holds the one-sided 95% bound `3/samples` times that scale.
pub fn mc_volume(spec: PolytopeSpec, samples: u64, seed: u64) -> Result<MomentEstimate> {
    if samples < MIN_MC_SAMPLES {
        return invalid(format!("mc_volume needs at least {MIN_MC_SAMPLES} samples, got {samples}"));
    }
    let (rows, cols, closed, scale) = match spec {
        PolytopeSpec::BetaMixed(k) if (1..=6).contains(&k) => {
            (k as usize - 1, k as usize, true, factorial(k - 1).powi(k as i32 - 1).recip())
        }
        PolytopeSpec::AlphaBox(k) if (1..=6).contains(&k) => {
            (k as usize, k as usize, false, factorial(k).powi(k as i32).recip())
        }
        _ => return invalid(format!("mc_volume supports beta_mixed and alpha_box with k <= 6, got {spec:?}")),
    };
    let values = run_trials(samples, seed, |rng| {
        let mut col = vec![0.0; cols];
        let mut row = vec![0.0; cols];
        for _ in 0..rows {
            simplex_point(rng, &mut row, closed);
            col.iter_mut().zip(&row).for_each(|(c, r)| *c += r);
        }
        if col.iter().all(|&c| c <= 1.0) {
            1.0
        } else {
            0.0
        }
    });
    let mut est = MomentEstimate::from_samples(&values, seed);
    if est.mean == 0.0 {
        est.stderr = 3.0 / samples as f64;
    }
    est.mean *= scale;
    est.stderr *= scale;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        let e = mc_volume(PolytopeSpec::BetaMixed(1), 1000, 1).unwrap();
        assert_eq!((e.mean, e.stderr), (1.0, 0.0));
        let e = mc_volume(PolytopeSpec::AlphaBox(1), 1000, 1).unwrap();
        assert_eq!((e.mean, e.stderr), (1.0, 0.0));
        let e = mc_volume(PolytopeSpec::BetaMixed(2), 1000, 1).unwrap();
        assert_eq!(e.mean, 1.0);
    }

    #[test]
    fn alpha_two_within_three_se() {
        let e = mc_volume(PolytopeSpec::AlphaBox(2), 200_000, 11).unwrap();
        assert!(e.agrees_with(1.0 / 6.0, 3.0), "{e:?}");
    }

    #[test]
    fn beta_three_within_three_se() {
        let e = mc_volume(PolytopeSpec::BetaMixed(3), 200_000, 12).unwrap();
        assert!(e.agrees_with(1.0 / 8.0, 3.0), "{e:?}");
    }

    #[test]
    fn rejects_small_runs_and_other_families() {
        assert!(mc_volume(PolytopeSpec::AlphaBox(2), 10, 0).is_err());
        assert!(mc_volume(PolytopeSpec::Birkhoff(2), 1000, 0).is_err());
    }
}
