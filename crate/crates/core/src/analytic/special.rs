use crate::error::{invalid, Error, Result};

const MAX_TERMS: usize = 1_000_000;

fn nonpositive_integer(v: f64) -> Option<u64> {
    (v <= 0.0 && v.fract() == 0.0).then(|| (-v) as u64)
}

/// Gauss series `Σ (a)_m (b)_m / ((c)_m m!) w^m`.
///
/// Summation stops once the remaining tail is certified below `eps` by a
/// geometric bound on the term ratios, or when a numerator Pochhammer symbol
/// vanishes. A nonpositive integer `c` is accepted only when the series
/// terminates before its pole.
pub fn hyper_2f1_series(a: f64, b: f64, c: f64, w: f64, eps: f64) -> Result<f64> {
    if ![a, b, c, w].iter().all(|v| v.is_finite()) {
        return invalid("parameters must be finite");
    }
    if !(eps > 0.0) {
        return invalid("eps must be positive");
    }
    let stop = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(i), Some(j)) => Some(i.min(j)),
        (Some(i), None) | (None, Some(i)) => Some(i),
        (None, None) => None,
    };
    if let Some(n) = nonpositive_integer(c) {
        if stop.is_none_or(|s| s > n) {
            return invalid(format!("c = {c} is a pole of the series"));
        }
    }
    if stop.is_none() && w.abs() >= 1.0 {
        return invalid(format!("series diverges for |w| = {} >= 1", w.abs()));
    }
    // bounds for the ratio of consecutive terms beyond index m
    let (ab, bb, cb) = (a.abs(), b.abs(), c.abs());
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 0..MAX_TERMS {
        if stop.is_some_and(|s| m as u64 >= s) {
            return Ok(sum);
        }
        let mf = m as f64;
        term *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * w;
        sum += term;
        let next = mf + 1.0;
        if stop.is_none() && next > cb {
            let rho = w.abs() * (next + ab) / (next - cb) * ((next + bb) / (next + 1.0)).max(1.0);
            if rho < 1.0 && term.abs() * rho / (1.0 - rho) < eps {
                return Ok(sum);
            }
        }
    }
    Err(Error::Resource { what: "hypergeometric terms", needed: MAX_TERMS as u128 + 1, limit: MAX_TERMS as u128 })
}

/// Arithmetic-geometric mean, iterated until the two means agree to a relative `1e-14`.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return invalid("agm needs two positive finite arguments");
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= 1e-14 * a.max(b) {
            break;
        }
        (a, b) = ((a + b) / 2.0, (a * b).sqrt());
    }
    Ok((a + b) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmt::hyper_fk;
    use proptest::prelude::*;

    #[test]
    fn trivial_values() {
        assert_eq!(hyper_2f1_series(0.3, 0.7, 1.2, 0.0, 1e-15).unwrap(), 1.0);
        for k in 1..6 {
            let w = 0.37;
            let v = hyper_2f1_series(-1.0, k as f64, 1.0, w, 1e-15).unwrap();
            assert!((v - (1.0 - k as f64 * w)).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_forms() {
        // 2F1(1,1;2;w) = -ln(1-w)/w
        for &w in &[0.1, 0.5, 0.9] {
            let v = hyper_2f1_series(1.0, 1.0, 2.0, w, 1e-14).unwrap();
            assert!((v + (1.0f64 - w).ln() / w).abs() < 1e-12, "w={w}");
        }
        // 2F1(a,b;b;w) = (1-w)^-a
        let v = hyper_2f1_series(0.5, 3.0, 3.0, -0.6, 1e-15).unwrap();
        assert!((v - 1.6f64.powf(-0.5)).abs() < 1e-14);
    }

    #[test]
    fn matches_terminating_fk() {
        for k in 1..=6u32 {
            for &w in &[0.1, 0.5, 1.0 - (-1.0f64).exp()] {
                let z = (1.0 - w).powf(-0.5);
                let kf = k as f64;
                let s = hyper_2f1_series(1.0 - kf, 1.0 - kf, 2.0 - 2.0 * kf, w, 1e-15).unwrap();
                assert!((s - hyper_fk(k, z).unwrap()).abs() < 1e-12, "k={k} w={w}");
            }
        }
    }

    #[test]
    fn agm_identity() {
        for &m in &[0.1, 0.5, 1.0 - (-1.0f64).exp()] {
            let f = hyper_2f1_series(0.5, 0.5, 1.0, m, 1e-15).unwrap();
            let g = agm(1.0 - m.sqrt(), 1.0 + m.sqrt()).unwrap();
            assert!((1.0 / f - g).abs() < 1e-10, "m={m}");
        }
    }

    #[test]
    fn agm_printed_value() {
        let m: f64 = 1.0 - (-1.0f64).exp();
        let g = agm(1.0 - m.sqrt(), 1.0 + m.sqrt()).unwrap();
        assert!((g - 0.79099).abs() < 1e-5, "{g}");
        let f = hyper_2f1_series(0.5, 0.5, 1.0, m, 1e-14).unwrap();
        assert!((1.0 / f - 0.79099).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hyper_2f1_series(0.5, 0.5, 1.0, 1.0, 1e-10).is_err());
        assert!(hyper_2f1_series(0.5, 0.5, -2.0, 0.3, 1e-10).is_err());
        assert!(hyper_2f1_series(-3.0, 0.5, -2.0, 0.3, 1e-10).is_err());
        assert!(hyper_2f1_series(-2.0, 0.5, -2.0, 0.3, 1e-10).is_ok());
        assert!(agm(0.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn agm_invariance(a in 0.01f64..100.0, b in 0.01f64..100.0) {
            let g = agm(a, b).unwrap();
            let h = agm((a + b) / 2.0, (a * b).sqrt()).unwrap();
            prop_assert!((g - h).abs() <= 1e-13 * g);
            prop_assert!(g >= a.min(b) && g <= a.max(b));
        }
    }
}
