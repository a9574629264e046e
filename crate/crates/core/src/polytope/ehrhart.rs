use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading_coefficient(&self) -> &BigRational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(t)))
    }

    /// The unique polynomial of degree `< values.len()` through
    /// `(0, values[0]), (1, values[1]), …`, via Newton forward differences
    /// in the binomial basis `C(t, j)`.
    pub fn interpolate_consecutive(values: &[BigInt]) -> Result<Self> {
        if values.is_empty() {
            return invalid("interpolation needs at least one node");
        }
        let mut diffs: Vec<BigInt> = values.to_vec();
        let mut newton = Vec::with_capacity(values.len());
        for level in 0..values.len() {
            newton.push(diffs[0].clone());
            for i in 0..values.len() - level - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
        }
        // C(t, j) = t (t-1) ⋯ (t-j+1) / j!
        let mut out = vec![BigRational::zero(); values.len()];
        let mut falling = vec![BigRational::one()];
        let mut fact = BigInt::one();
        for (j, d) in newton.iter().enumerate() {
            if j > 0 {
                fact *= BigInt::from(j);
            }
            if !d.is_zero() {
                let scale = BigRational::new(d.clone(), fact.clone());
                for (i, c) in falling.iter().enumerate() {
                    out[i] += c * &scale;
                }
            }
            // falling *= (t - j)
            let shift = BigRational::from_integer(BigInt::from(j));
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        Ok(Self::new(out))
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = crate::ratio_string(c);
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn to_bigint(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn line_through_counts() {
        let p = RationalPolynomial::interpolate_consecutive(&ints(&[1, 2])).unwrap();
        assert_eq!(p.coefficients(), &[r(1, 1), r(1, 1)]);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn constant() {
        let p = RationalPolynomial::interpolate_consecutive(&ints(&[1])).unwrap();
        assert_eq!(p.degree(), 0);
        assert_eq!(p.leading_coefficient(), &r(1, 1));
    }

    #[test]
    fn binomial_square() {
        // C(t+2, 2) = (t² + 3t + 2) / 2
        let p = RationalPolynomial::interpolate_consecutive(&ints(&[1, 3, 6])).unwrap();
        assert_eq!(p.coefficients(), &[r(1, 1), r(3, 2), r(1, 2)]);
        assert_eq!(p.eval_int(10), r(66, 1));
    }

    proptest! {
        #[test]
        fn reproduces_random_polynomials(c in prop::collection::vec(-50i64..50, 1..8)) {
            let eval = |t: i64| c.iter().rev().fold(0i64, |a, &x| a * t + x);
            let nodes: Vec<BigInt> = (0..c.len() as i64).map(|t| BigInt::from(eval(t))).collect();
            let p = RationalPolynomial::interpolate_consecutive(&nodes).unwrap();
            for t in 0..15u64 {
                prop_assert_eq!(p.eval_int(t), r(eval(t as i64), 1));
            }
        }
    }
}
