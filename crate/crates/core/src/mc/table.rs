use serde::Serialize;

use super::sampler::{estimate_abs_moment, Model};
use crate::analytic::{conjectured_moment, cs_bound_minimize};
use crate::error::Result;

/// One row of the first-moment comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HelsonRow {
    pub x: u64,
    pub mean_abs: f64,
    pub stderr: f64,
    /// `mean_abs / √x`.
    pub ratio: f64,
    /// Conjectured limit of `ratio`.
    pub conjectured: f64,
    /// Proven upper bound on the limsup of `ratio`.
    pub upper_bound: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Estimates `E|Σ_{n<=x} X_n|` for each `x` and sets it against `√x`.
///
/// This is a report: the rate at which the ratio settles is not known, so
/// nothing here is checked against the conjectured value.
pub fn helson_table(x_list: &[u64], trials: u64, seed: u64) -> Result<Vec<HelsonRow>> {
    let conjectured = conjectured_moment(0.5, 0.0, 1.0)?.coefficient;
    let upper_bound = cs_bound_minimize().amplitude_bound;
    x_list
        .iter()
        .map(|&x| {
            let e = estimate_abs_moment(Model::Steinhaus, x, 0.0, 1.0, trials, seed)?;
            Ok(HelsonRow {
                x,
                mean_abs: e.mean,
                stderr: e.stderr,
                ratio: e.mean / (x as f64).sqrt(),
                conjectured,
                upper_bound,
                trials,
                seed,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_present_and_sane() {
        let rows = helson_table(&[1000, 10_000, 100_000], 200, 1).unwrap();
        assert_eq!(rows.iter().map(|r| r.x).collect::<Vec<_>>(), vec![1000, 10_000, 100_000]);
        for r in &rows {
            assert!(r.ratio > 0.0 && r.ratio < 1.2, "{r:?}");
            assert!((r.conjectured - 0.8769).abs() < 2e-4);
            assert!((r.upper_bound - 0.903).abs() < 1e-3);
        }
    }
}
