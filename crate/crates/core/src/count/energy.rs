use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{pairwise_sum, CompensatedSum};
use crate::error::{invalid, Error, Result};

/// Largest tuple space `floor(x)^k` the streaming kernel accepts.
pub const MAX_TUPLES: u128 = 1 << 33;
/// Largest product range materialized by [`product_multiplicity_map`].
pub const MAX_MAP_RANGE: u128 = 1 << 26;
/// Largest dense table for the `(k-1)`-fold partial products.
const MAX_INNER_TABLE: u128 = 1 << 27;
const SEGMENT: u64 = 1 << 20;

/// `r_k(n; x)`: number of ordered `k`-tuples of integers `<= x` with product `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMap {
    k: u32,
    x: u64,
    entries: BTreeMap<u64, u64>,
}

impl MultiplicityMap {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn get(&self, n: u64) -> u64 {
        self.entries.get(&n).copied().unwrap_or(0)
    }

    /// Nonzero entries in increasing order of `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&n, &r)| (n, r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_n r_k(n)`, which must equal `x^k`.
    pub fn total(&self) -> u128 {
        self.entries.values().map(|&r| r as u128).sum()
    }
}

/// Energy value: an exact count at `sigma = 0`, a weighted real sum otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EnergyValue {
    Exact(#[serde(serialize_with = "crate::serde_util::biguint")] BigUint),
    Weighted(f64),
}

impl EnergyValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            EnergyValue::Exact(v) => v.to_f64().unwrap_or(f64::INFINITY),
            EnergyValue::Weighted(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            EnergyValue::Exact(v) => Some(v),
            EnergyValue::Weighted(_) => None,
        }
    }
}

/// `Σ_n n^{-2σ} r_k(n; x)²`, the `2k`-th moment of the Steinhaus sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyResult {
    pub k: u32,
    pub x: u64,
    pub sigma: f64,
    pub value: EnergyValue,
    #[serde(serialize_with = "crate::serde_util::biguint")]
    pub tuple_space_size: BigUint,
}

fn checked_pow(x: u64, k: u32) -> Option<u128> {
    (x as u128).checked_pow(k)
}

fn floor_x(x: f64) -> Result<u64> {
    if !(x >= 1.0) || !x.is_finite() {
        return invalid(format!("x must be at least 1, got {x}"));
    }
    Ok(x.floor() as u64)
}

/// Dense table of `r_j` restricted to factors coprime to `q` (`q = 1` means no
/// restriction), indexed `0..=x^j`.
fn dense_table(j: u32, x: u64, q: u64) -> Result<Vec<u64>> {
    let size = checked_pow(x, j).filter(|&s| s <= MAX_INNER_TABLE).ok_or(Error::Resource {
        what: "partial product table entries",
        needed: checked_pow(x, j).unwrap_or(u128::MAX),
        limit: MAX_INNER_TABLE,
    })? as usize;
    let mut r = vec![0u64; 2];
    r[1] = 1;
    let mut bound = 1usize;
    for _ in 0..j {
        let next_bound = bound * x as usize;
        let mut next = vec![0u64; next_bound + 1];
        for c in 1..=x as usize {
            if q > 1 && (c as u64).gcd(&q) != 1 {
                continue;
            }
            for m in 1..=bound {
                let v = r[m];
                if v != 0 {
                    next[c * m] += v;
                }
            }
        }
        r = next;
        bound = next_bound;
    }
    debug_assert_eq!(bound, size);
    Ok(r)
}

/// Streams `r_k(n)` over `1 <= n <= x^k` in segments and folds each segment
/// with `fold(lo, values)`. Results come back in segment order.
fn stream<T, F>(k: u32, x: u64, q: u64, fold: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &[u64]) -> T + Sync,
{
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let tuples = checked_pow(x, k).unwrap_or(u128::MAX);
    if tuples > MAX_TUPLES {
        return Err(Error::Resource {
            what: "tuple space floor(x)^k",
            needed: tuples,
            limit: MAX_TUPLES,
        });
    }
    let inner = dense_table(k - 1, x, q)?;
    let inner_max = (inner.len() - 1) as u64;
    let top = tuples as u64;
    let starts: Vec<u64> = (0..top.div_ceil(SEGMENT)).map(|i| 1 + i * SEGMENT).collect();
    let out = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + SEGMENT).min(top + 1);
            let mut buf = vec![0u64; (hi - lo) as usize];
            for c in 1..=x {
                if q > 1 && c.gcd(&q) != 1 {
                    continue;
                }
                let m_lo = lo.div_ceil(c).max(1);
                let m_hi = ((hi - 1) / c).min(inner_max);
                let mut m = m_lo;
                let mut idx = (c * m_lo).wrapping_sub(lo) as usize;
                while m <= m_hi {
                    buf[idx] += inner[m as usize];
                    m += 1;
                    idx += c as usize;
                }
            }
            fold(lo, &buf)
        })
        .collect();
    Ok(out)
}

/// Builds the full multiplicity map `n -> r_k(n; x)`.
pub fn product_multiplicity_map(k: u32, x: f64) -> Result<MultiplicityMap> {
    let x = floor_x(x)?;
    let range = checked_pow(x, k).unwrap_or(u128::MAX);
    if range > MAX_MAP_RANGE {
        return Err(Error::Resource {
            what: "multiplicity map range floor(x)^k",
            needed: range,
            limit: MAX_MAP_RANGE,
        });
    }
    let parts = stream(k, x, 1, |lo, buf| {
        buf.iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .map(|(i, &r)| (lo + i as u64, r))
            .collect::<Vec<_>>()
    })?;
    Ok(MultiplicityMap {
        k,
        x,
        entries: parts.into_iter().flatten().collect(),
    })
}

fn energy_with(k: u32, x: u64, q: u64, sigma: f64) -> Result<EnergyValue> {
    if sigma == 0.0 {
        let parts = stream(k, x, q, |_, buf| {
            let mut acc: u128 = 0;
            for &r in buf {
                acc += (r as u128) * (r as u128);
            }
            acc
        })?;
        let mut total: u128 = 0;
        let mut big: Option<BigUint> = None;
        for p in parts {
            match total.checked_add(p) {
                Some(t) if big.is_none() => total = t,
                _ => {
                    let b = big.get_or_insert_with(|| BigUint::from(total));
                    *b += p;
                }
            }
        }
        Ok(EnergyValue::Exact(big.unwrap_or_else(|| BigUint::from(total))))
    } else {
        let parts = stream(k, x, q, |lo, buf| {
            let mut acc = CompensatedSum::new();
            for (i, &r) in buf.iter().enumerate() {
                if r != 0 {
                    let n = (lo + i as u64) as f64;
                    acc.add((r as f64) * (r as f64) * n.powf(-2.0 * sigma));
                }
            }
            acc.value()
        })?;
        Ok(EnergyValue::Weighted(pairwise_sum(&parts)))
    }
}

/// The weighted multiplicative energy `Σ_n n^{-2σ} r_k(n; x)²`.
///
/// At `sigma = 0` this is the number of solutions of
/// `m_1⋯m_k = m_{k+1}⋯m_{2k}` with all `m_j <= x`, returned exactly.
pub fn steinhaus_energy(k: u32, x: f64, sigma: f64) -> Result<EnergyResult> {
    if !(0.0..=0.5).contains(&sigma) {
        return invalid(format!("sigma must lie in [0, 1/2], got {sigma}"));
    }
    let xf = floor_x(x)?;
    let value = energy_with(k, xf, 1, sigma)?;
    Ok(EnergyResult {
        k,
        x: xf,
        sigma,
        value,
        tuple_space_size: BigUint::from(xf).pow(2 * k),
    })
}

/// Energy restricted to integers coprime to `q`: the number of
/// `2k`-tuples with `(m_i, q) = 1`, `m_i <= x` and equal half-products.
pub fn coprime_energy(k: u32, x: f64, q: u64) -> Result<BigUint> {
    if q == 0 {
        return invalid("q must be positive");
    }
    let xf = floor_x(x)?;
    match energy_with(k, xf, q, 0.0)? {
        EnergyValue::Exact(v) => Ok(v),
        EnergyValue::Weighted(_) => Err(Error::Internal("exact energy expected".into())),
    }
}
