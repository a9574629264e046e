//! Lattice-point counts and volumes of transportation-type polytopes.
//!
//! The constants `β(k)`, `α(k)` and `γ(k)` are multiple contour integrals of
//! products of `1/(s_i + s_j)`. Writing each such factor as
//! `∫_0^∞ e^{-(s_i+s_j)u} du` and integrating the `s` variables first turns a
//! factor `e^{s}/s` into the constraint "incident sum `<= 1`" and a factor
//! `e^{s}` into "incident sum `= 1`". The integrals become volumes of:
//!
//! | family        | variables              | constraints                          |
//! |---------------|------------------------|--------------------------------------|
//! | `birkhoff`    | `k×k` matrix           | rows `= t`, columns `= t`            |
//! | `beta_mixed`  | `(k-1)×k` matrix       | rows `= t`, columns `<= t`           |
//! | `alpha_box`   | `k×k` matrix           | rows `<= t`, columns `<= t`          |
//! | `gamma_sym`   | edges of `K_{2k}`      | every vertex degree `= 2t`           |
//!
//! Volumes are Ehrhart leading coefficients, i.e. measured relative to the
//! integer lattice in the affine span. The Euclidean volume of the Birkhoff
//! polytope is that times the covolume of its lattice, which is computed from
//! a Gram determinant rather than assumed; [`beta_constant`] insists that the
//! Birkhoff route and the direct `beta_mixed` route give the same rational.

mod dp;
mod ehrhart;
mod mc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub use dp::{
    complete_graph_counts_by_total, transport_count, transport_counts_by_total, Margin,
    MAX_DP_STATES, MAX_GRAPH_STATES,
};
pub use ehrhart::RationalPolynomial;
pub use mc::mc_volume;

/// A family of row/column-sum constrained polytopes, dilated by `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", content = "k", rename_all = "snake_case")]
pub enum PolytopeSpec {
    Birkhoff(u32),
    BetaMixed(u32),
    AlphaBox(u32),
    GammaSym(u32),
}

impl PolytopeSpec {
    pub fn k(self) -> u32 {
        match self {
            PolytopeSpec::Birkhoff(k)
            | PolytopeSpec::BetaMixed(k)
            | PolytopeSpec::AlphaBox(k)
            | PolytopeSpec::GammaSym(k) => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PolytopeSpec::Birkhoff(_) => "birkhoff",
            PolytopeSpec::BetaMixed(_) => "beta_mixed",
            PolytopeSpec::AlphaBox(_) => "alpha_box",
            PolytopeSpec::GammaSym(_) => "gamma_sym",
        }
    }

    /// Dimension of the polytope (degree of its Ehrhart polynomial).
    pub fn dimension(self) -> usize {
        let k = self.k() as usize;
        match self {
            PolytopeSpec::Birkhoff(_) | PolytopeSpec::BetaMixed(_) => (k - 1) * (k - 1),
            PolytopeSpec::AlphaBox(_) => k * k,
            PolytopeSpec::GammaSym(_) => 2 * k * k - 3 * k,
        }
    }

    fn validate(self) -> Result<()> {
        let k = self.k();
        let (lo, hi) = match self {
            PolytopeSpec::GammaSym(_) => (2, 3),
            _ => (1, 5),
        };
        if k < lo || k > hi {
            return invalid(format!("{} requires {lo} <= k <= {hi}, got {k}", self.name()));
        }
        Ok(())
    }
}

/// Number of lattice points in the `t`-th dilate.
pub fn lattice_count(spec: PolytopeSpec, t: u32) -> Result<BigUint> {
    spec.validate()?;
    let k = spec.k() as usize;
    let count = match spec {
        PolytopeSpec::Birkhoff(_) => transport_count(&vec![Margin::Eq(t); k], &vec![Margin::Eq(t); k])?,
        PolytopeSpec::BetaMixed(_) => {
            if k == 1 {
                1
            } else {
                transport_count(&vec![Margin::Eq(t); k - 1], &vec![Margin::Le(t); k])?
            }
        }
        PolytopeSpec::AlphaBox(_) => transport_count(&vec![Margin::Le(t); k], &vec![Margin::Le(t); k])?,
        PolytopeSpec::GammaSym(_) => {
            let by_total = complete_graph_counts_by_total(2 * k, Margin::Eq(2 * t))?;
            by_total.iter().sum()
        }
    };
    Ok(BigUint::from(count))
}

/// Ehrhart polynomial interpolated through `t = 0..=d` and checked exactly
/// against the counts at `t = d+1, d+2, d+3`.
pub fn ehrhart_polynomial(spec: PolytopeSpec) -> Result<RationalPolynomial> {
    spec.validate()?;
    let d = spec.dimension();
    let counts: Vec<Result<BigUint>> = (0..=(d + 3) as u32)
        .into_par_iter()
        .map(|t| lattice_count(spec, t))
        .collect();
    let counts: Vec<BigInt> = counts
        .into_iter()
        .map(|c| c.map(|v| ehrhart::to_bigint(&v)))
        .collect::<Result<_>>()?;
    let poly = RationalPolynomial::interpolate_consecutive(&counts[..=d])?;
    for (t, c) in counts.iter().enumerate().skip(d + 1) {
        if poly.eval_int(t as u64) != BigRational::from_integer(c.clone()) {
            return Err(Error::Internal(format!(
                "Ehrhart interpolation of {} (k={}) mispredicts the count at t={t}",
                spec.name(),
                spec.k()
            )));
        }
    }
    if poly.degree() != d {
        return Err(Error::Internal(format!(
            "Ehrhart polynomial of {} has degree {}, expected {d}",
            spec.name(),
            poly.degree()
        )));
    }
    Ok(poly)
}

/// Lattice-relative volume: the Ehrhart leading coefficient.
pub fn relative_volume(spec: PolytopeSpec) -> Result<BigRational> {
    let lc = ehrhart_polynomial(spec)?.leading_coefficient().clone();
    if !lc.is_positive() {
        return Err(Error::Internal(format!("nonpositive volume for {}", spec.name())));
    }
    Ok(lc)
}

/// Both evaluations of `β(k)` and the quantities linking them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaConstant {
    pub k: u32,
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub value: BigRational,
    /// Ehrhart leading coefficient of the Birkhoff polytope.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub birkhoff_relative_volume: BigRational,
    /// Gram determinant of a basis of the zero-margin integer matrices.
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub lattice_gram_determinant: BigUint,
    /// Euclidean volume of the Birkhoff polytope.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub birkhoff_volume: BigRational,
    /// `birkhoff_volume / k^{k-1}`.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub birkhoff_route: BigRational,
    /// Ehrhart leading coefficient of `beta_mixed(k)`.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub direct_route: BigRational,
}

/// Gram determinant of the basis `E_ij - E_ik - E_kj + E_kk` (`i, j < k`,
/// 1-based) of the integer `k×k` matrices with zero row and column sums.
pub fn birkhoff_lattice_gram(k: u32) -> BigUint {
    let k = k as usize;
    let m = (k - 1) * (k - 1);
    let vec_of = |i: usize, j: usize| {
        let mut v = vec![0i64; k * k];
        let l = k - 1;
        v[i * k + j] += 1;
        v[i * k + l] -= 1;
        v[l * k + j] -= 1;
        v[l * k + l] += 1;
        v
    };
    let basis: Vec<Vec<i64>> = (0..k - 1).flat_map(|i| (0..k - 1).map(move |j| (i, j))).map(|(i, j)| vec_of(i, j)).collect();
    let mut g: Vec<Vec<BigInt>> = (0..m)
        .map(|a| (0..m).map(|b| BigInt::from(basis[a].iter().zip(&basis[b]).map(|(x, y)| x * y).sum::<i64>())).collect())
        .collect();
    let det = bareiss_det(&mut g);
    det.to_biguint().expect("Gram determinant is nonnegative")
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                a[i][j] = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `β(k)` by two independent routes, which must agree exactly.
pub fn beta_constant(k: u32) -> Result<BetaConstant> {
    if !(1..=4).contains(&k) {
        return invalid(format!("beta_constant supports 1 <= k <= 4, got {k}"));
    }
    let rel = relative_volume(PolytopeSpec::Birkhoff(k))?;
    let gram = birkhoff_lattice_gram(k);
    let root = gram.sqrt();
    if &root * &root != gram {
        return Err(Error::Internal(format!("Birkhoff lattice Gram determinant {gram} is not a square")));
    }
    let euclid = &rel * BigRational::from_integer(BigInt::from(root));
    let scale = BigRational::from_integer(BigInt::from(k).pow(k - 1));
    let birkhoff_route = &euclid / scale;
    let direct_route = relative_volume(PolytopeSpec::BetaMixed(k))?;
    if birkhoff_route != direct_route {
        return Err(Error::Internal(format!(
            "beta({k}) routes disagree: Birkhoff gives {}, direct gives {}",
            crate::ratio_string(&birkhoff_route),
            crate::ratio_string(&direct_route)
        )));
    }
    Ok(BetaConstant {
        k,
        value: direct_route.clone(),
        birkhoff_relative_volume: rel,
        lattice_gram_determinant: gram,
        birkhoff_volume: euclid,
        birkhoff_route,
        direct_route,
    })
}

/// `α(k)`: the volume of `k×k` nonnegative matrices with every row and column sum at most 1.
pub fn alpha_constant(k: u32) -> Result<BigRational> {
    if !(1..=4).contains(&k) {
        return invalid(format!("alpha_constant supports 1 <= k <= 4, got {k}"));
    }
    relative_volume(PolytopeSpec::AlphaBox(k))
}

/// `γ(k)` in its two normalizations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaConstant {
    pub k: u32,
    pub dimension: usize,
    /// Ehrhart leading coefficient of the degree-`2t` count.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub ehrhart_leading: BigRational,
    /// Volume of `{x >= 0 : every degree = 2}` against the product of delta
    /// measures on the degree constraints: the Ehrhart coefficient divided by
    /// the index 2 of the incidence lattice (its image is the even-sum vectors).
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub value: BigRational,
    /// The same volume for the slice `degree = 1`, `value / 2^dimension`.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub unit_slice: BigRational,
}

/// `γ(k)` for `k ∈ {2, 3}`.
pub fn gamma_constant(k: u32) -> Result<GammaConstant> {
    if k == 1 {
        return invalid("gamma constant requires k >= 2");
    }
    let spec = PolytopeSpec::GammaSym(k);
    spec.validate()?;
    let lc = relative_volume(spec)?;
    let dim = spec.dimension();
    let value = &lc / BigRational::from_integer(BigInt::from(2));
    let unit_slice = &value / BigRational::from_integer(BigInt::from(2).pow(dim as u32));
    Ok(GammaConstant { k, dimension: dim, ehrhart_leading: lc, value, unit_slice })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn count_examples() {
        assert_eq!(lattice_count(PolytopeSpec::Birkhoff(2), 5).unwrap(), BigUint::from(6u32));
        assert_eq!(lattice_count(PolytopeSpec::Birkhoff(3), 1).unwrap(), BigUint::from(6u32));
        for spec in [
            PolytopeSpec::Birkhoff(3),
            PolytopeSpec::BetaMixed(3),
            PolytopeSpec::AlphaBox(2),
            PolytopeSpec::GammaSym(2),
        ] {
            assert_eq!(lattice_count(spec, 0).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn ehrhart_examples() {
        let p = ehrhart_polynomial(PolytopeSpec::Birkhoff(2)).unwrap();
        assert_eq!(p.coefficients(), &[r(1, 1), r(1, 1)]);
        let p = ehrhart_polynomial(PolytopeSpec::BetaMixed(1)).unwrap();
        assert_eq!(p.coefficients(), &[r(1, 1)]);
        let p = ehrhart_polynomial(PolytopeSpec::AlphaBox(1)).unwrap();
        assert_eq!(p.coefficients(), &[r(1, 1), r(1, 1)]);
    }

    #[test]
    fn birkhoff_three_polynomial() {
        // classical count of 3×3 magic squares: C(t+2,2) + 3 C(t+3,4)
        let p = ehrhart_polynomial(PolytopeSpec::Birkhoff(3)).unwrap();
        for t in 0..12u64 {
            let expect = (t + 2) * (t + 1) / 2 + 3 * ((t + 3) * (t + 2) * (t + 1) * t / 24);
            assert_eq!(p.eval_int(t), r(expect as i64, 1));
        }
        assert_eq!(p.leading_coefficient(), &r(1, 8));
    }

    #[test]
    fn volumes() {
        assert_eq!(relative_volume(PolytopeSpec::Birkhoff(2)).unwrap(), r(1, 1));
        assert_eq!(relative_volume(PolytopeSpec::AlphaBox(1)).unwrap(), r(1, 1));
        assert_eq!(alpha_constant(1).unwrap(), r(1, 1));
        assert_eq!(alpha_constant(2).unwrap(), r(1, 6));
    }

    #[test]
    fn gram_determinants() {
        for k in 1..=5u32 {
            assert_eq!(birkhoff_lattice_gram(k), BigUint::from(k).pow(2 * (k - 1)));
        }
    }

    #[test]
    fn beta_routes_agree() {
        assert_eq!(beta_constant(1).unwrap().value, r(1, 1));
        assert_eq!(beta_constant(2).unwrap().value, r(1, 1));
        let b3 = beta_constant(3).unwrap();
        assert_eq!(b3.value, r(1, 8));
        // Euclidean Birkhoff volume is k^{k-1} β(k)
        assert_eq!(b3.birkhoff_volume, r(9, 8));
    }

    #[test]
    fn gamma_two() {
        let g = gamma_constant(2).unwrap();
        assert_eq!(g.dimension, 2);
        assert_eq!(g.ehrhart_leading, r(2, 1));
        assert_eq!(g.value, r(1, 1));
        assert_eq!(g.unit_slice, r(1, 4));
        assert!(gamma_constant(1).is_err());
    }

    #[test]
    fn count_is_monotone() {
        for spec in [
            PolytopeSpec::Birkhoff(3),
            PolytopeSpec::BetaMixed(3),
            PolytopeSpec::AlphaBox(2),
            PolytopeSpec::GammaSym(2),
        ] {
            let mut prev = BigUint::zero();
            for t in 0..8 {
                let c = lattice_count(spec, t).unwrap();
                assert!(c >= prev, "{spec:?} t={t}");
                prev = c;
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(lattice_count(PolytopeSpec::Birkhoff(6), 1).is_err());
        assert!(lattice_count(PolytopeSpec::GammaSym(4), 1).is_err());
        assert!(beta_constant(5).is_err());
    }
}
