use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::polytope::{complete_graph_counts_by_total, transport_count, transport_counts_by_total, Margin};

/// Matrix group for the truncated moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Unitary,
    SpecialOrthogonal,
}

/// Exact truncated moment as a polynomial in `w = |z|²` with integer
/// coefficients, and its value at the given `|z|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedMoment {
    pub group: Group,
    pub k: u32,
    pub l: u32,
    pub z_abs: f64,
    /// `coefficients[m]` multiplies `w^m`.
    pub coefficients: Vec<u128>,
    pub value: f64,
}

fn check_z(z_abs: f64) -> Result<()> {
    if !(z_abs > 1.0) || !z_abs.is_finite() {
        return invalid(format!("|z| must exceed 1, got {z_abs}"));
    }
    Ok(())
}

/// Evaluates `Σ c_m w^m` by Horner's rule.
pub fn eval_poly(coefficients: &[u128], w: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * w + c as f64)
}

fn trim(mut c: Vec<u128>) -> Vec<u128> {
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// `E_{U(N)} |Λ_L(z)|^{2k}` for `N >= kL`: the sum of `|z|^{2Σm_ij}` over
/// `k×k` nonnegative integer matrices with every row and column sum at most `L`.
pub fn unitary_truncated_moment_exact(k: u32, l: u32, z_abs: f64) -> Result<TruncatedMoment> {
    check_z(z_abs)?;
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let m = vec![Margin::Le(l); k as usize];
    let coefficients = trim(transport_counts_by_total(&m, &m)?);
    let value = eval_poly(&coefficients, z_abs * z_abs);
    Ok(TruncatedMoment { group: Group::Unitary, k, l, z_abs, coefficients, value })
}

/// `E_{SO(2N)} Λ_L(z)^{2k}` for `N >= kL`: the sum of `z^{2Σx_ij}` over
/// nonnegative integer edge weights of `K_{2k}` with every vertex degree at
/// most `L`.
///
/// For `L <= 1` this is the value of the lattice sum; the identity with the
/// group average is only established for `L > 1`.
pub fn so_truncated_moment_exact(k: u32, l: u32, z_abs: f64) -> Result<TruncatedMoment> {
    check_z(z_abs)?;
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let coefficients = trim(complete_graph_counts_by_total(2 * k as usize, Margin::Le(l))?);
    let value = eval_poly(&coefficients, z_abs * z_abs);
    Ok(TruncatedMoment { group: Group::SpecialOrthogonal, k, l, z_abs, coefficients, value })
}

pub const MAX_MAGIC_PARTS: usize = 12;
pub const MAX_MAGIC_ENTRY: u32 = 12;

/// Number of nonnegative integer matrices with row sums `mu` and column sums
/// `mu_tilde`.
pub fn magic_count(mu: &[u32], mu_tilde: &[u32]) -> Result<BigUint> {
    for p in [mu, mu_tilde] {
        if p.len() > MAX_MAGIC_PARTS || p.iter().any(|&v| v > MAX_MAGIC_ENTRY) {
            return invalid(format!(
                "margins are limited to {MAX_MAGIC_PARTS} parts of size at most {MAX_MAGIC_ENTRY}"
            ));
        }
    }
    let sum = |p: &[u32]| p.iter().map(|&v| v as u64).sum::<u64>();
    if sum(mu) != sum(mu_tilde) {
        return Ok(BigUint::default());
    }
    let rows: Vec<u32> = mu.iter().copied().filter(|&v| v > 0).collect();
    let cols: Vec<u32> = mu_tilde.iter().copied().filter(|&v| v > 0).collect();
    if rows.is_empty() {
        return Ok(BigUint::from(1u32));
    }
    // the dense state is indexed by row partials, so put the cheaper side there
    let state = |r: &[u32], c: &[u32]| {
        r.iter().map(|&v| v as f64 + 1.0).product::<f64>() * (*c.iter().max().unwrap() as f64 + 1.0)
    };
    let (r, c) = if state(&rows, &cols) <= state(&cols, &rows) { (rows, cols) } else { (cols, rows) };
    let r: Vec<Margin> = r.into_iter().map(Margin::Eq).collect();
    let c: Vec<Margin> = c.into_iter().map(Margin::Eq).collect();
    Ok(BigUint::from(transport_count(&r, &c)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_examples() {
        let m = unitary_truncated_moment_exact(2, 1, 1.5).unwrap();
        assert_eq!(m.coefficients, vec![1, 4, 2]);
        let m = unitary_truncated_moment_exact(3, 0, 2.0).unwrap();
        assert_eq!(m.coefficients, vec![1]);
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn unitary_k1_is_geometric() {
        for l in 0..=50u32 {
            let m = unitary_truncated_moment_exact(1, l, 1.2).unwrap();
            assert_eq!(m.coefficients, vec![1; l as usize + 1]);
            for &z in &[1.2f64, 2.0] {
                let w = z * z;
                let closed = (w.powi(l as i32 + 1) - 1.0) / (w - 1.0);
                let v = unitary_truncated_moment_exact(1, l, z).unwrap().value;
                assert!((v - closed).abs() <= 1e-12 * closed);
            }
        }
    }

    #[test]
    fn so_examples() {
        for l in 0..=10 {
            assert_eq!(so_truncated_moment_exact(1, l, 2.0).unwrap().coefficients, vec![1; l as usize + 1]);
        }
        assert_eq!(so_truncated_moment_exact(2, 1, 2.0).unwrap().coefficients, vec![1, 6, 3]);
        assert_eq!(so_truncated_moment_exact(3, 0, 2.0).unwrap().value, 1.0);
    }

    #[test]
    fn unitary_monotone() {
        let mut prev = 0.0;
        for l in 0..=8 {
            let v = unitary_truncated_moment_exact(2, l, 1.5).unwrap().value;
            assert!(v >= prev);
            assert!(unitary_truncated_moment_exact(2, l, 1.6).unwrap().value >= v);
            prev = v;
        }
    }

    #[test]
    fn magic_examples() {
        assert_eq!(magic_count(&[1], &[1]).unwrap(), BigUint::from(1u32));
        assert_eq!(magic_count(&[1, 1], &[1, 1]).unwrap(), BigUint::from(2u32));
        assert_eq!(magic_count(&[2], &[1, 1]).unwrap(), BigUint::from(1u32));
        assert_eq!(magic_count(&[2], &[1]).unwrap(), BigUint::default());
        assert_eq!(magic_count(&[2, 1], &[1, 1, 1]).unwrap(), BigUint::from(3u32));
        assert!(magic_count(&[13], &[13]).is_err());
    }

    #[test]
    fn rejects_small_z() {
        assert!(unitary_truncated_moment_exact(1, 2, 1.0).is_err());
        assert!(so_truncated_moment_exact(1, 2, 0.5).is_err());
    }
}
