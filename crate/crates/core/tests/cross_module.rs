//! Checks that tie separately implemented routes to one another.

use multmoments::count::{product_multiplicity_map, steinhaus_energy};
use multmoments::rmt::{magic_count, mc_secular_moment, unitary_truncated_moment_exact};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Multiplicity vector `a_j = #{parts equal to j}`.
fn multiplicities(parts: &[u32]) -> Vec<u32> {
    let max = parts.iter().copied().max().unwrap_or(0) as usize;
    let mut a = vec![0; max];
    for &p in parts {
        a[p as usize - 1] += 1;
    }
    a
}

#[test]
fn secular_moments_match_magic_squares() {
    let parts: [&[u32]; 3] = [&[1], &[1, 1], &[2]];
    let mut seed = 100;
    for mu in parts {
        for nu in parts {
            let exact = magic_count(mu, nu).unwrap().to_f64().unwrap();
            let est = mc_secular_moment(8, &multiplicities(mu), &multiplicities(nu), 4000, seed).unwrap();
            seed += 1;
            assert!(est.agrees_with(exact, 3.0), "mu={mu:?} nu={nu:?}: {est:?} vs {exact}");
        }
    }
}

fn compositions(k: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |i| [v.clone(), vec![i]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The truncated-moment polynomial splits by margins into magic-square counts.
    #[test]
    fn truncated_moment_is_sum_of_magic_counts(k in 1usize..=3, l in 0u32..=3) {
        let m = unitary_truncated_moment_exact(k as u32, l, 1.5).unwrap();
        let margins = compositions(k, l);
        let mut by_total = vec![BigUint::default(); k * l as usize + 1];
        for r in &margins {
            for c in &margins {
                let total: u32 = r.iter().sum();
                if total == c.iter().sum::<u32>() {
                    by_total[total as usize] += magic_count(r, c).unwrap();
                }
            }
        }
        while by_total.len() > 1 && by_total.last() == Some(&BigUint::default()) {
            by_total.pop();
        }
        let dp: Vec<BigUint> = m.coefficients.iter().map(|&c| BigUint::from(c)).collect();
        prop_assert_eq!(dp, by_total);
    }

    /// The energy is the sum of squared product multiplicities.
    #[test]
    fn energy_is_sum_of_squares(k in 1u32..=3, x in 1u64..=60) {
        let map = product_multiplicity_map(k, x as f64).unwrap();
        let squares: u128 = map.iter().map(|(_, r)| (r as u128) * (r as u128)).sum();
        let e = steinhaus_energy(k, x as f64, 0.0).unwrap();
        prop_assert_eq!(e.value.exact().cloned(), Some(BigUint::from(squares)));
    }
}
