use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{pairwise_sum, Factorization};
use crate::error::{invalid, Error, Result};

pub const MAX_MODULUS: u64 = 1_000_000;
const MAX_CHAR_WORK: u128 = 1 << 34;

/// Character-moment average for a prime modulus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharAverageResult {
    pub k: u32,
    pub q: u64,
    pub x: u64,
    /// `φ(q)^-1 Σ_χ |Σ_{n<=x} χ(n)|^{2k}` from floating-point character sums.
    pub avg_all: f64,
    /// Bound on the floating-point error of `avg_all`.
    pub avg_all_error: f64,
    /// The same average with the principal character removed.
    pub avg_nonprincipal: Option<f64>,
    /// Exact nonprincipal average implied by orthogonality.
    #[serde(serialize_with = "crate::serde_util::opt_ratio")]
    pub avg_nonprincipal_exact: Option<BigRational>,
    /// Tuples with `Π_{i<=k} m_i ≡ Π_{i>k} m_i (mod q)` and `(m_i, q) = 1`.
    pub congruence_count: u128,
}

/// Discrete-log data for a prime modulus.
struct IndexTable {
    q: u64,
    /// `ind[r]` for `1 <= r < q`
    ind: Vec<u32>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Smallest primitive root of the prime `q`.
pub fn primitive_root(q: u64) -> Result<u64> {
    check_prime(q)?;
    if q == 2 {
        return Ok(1);
    }
    let phi = q - 1;
    let f = Factorization::of(phi)?;
    (2..q)
        .find(|&g| f.distinct_primes().all(|l| pow_mod(g, phi / l, q) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root found for {q}")))
}

fn check_prime(q: u64) -> Result<()> {
    if q < 2 {
        return invalid(format!("modulus must be prime, got {q}"));
    }
    if q > MAX_MODULUS {
        return Err(Error::OutOfRange { what: "q", value: q, limit: MAX_MODULUS });
    }
    let f = Factorization::of(q)?;
    if f.pairs() != [(q, 1)] {
        return Err(Error::Unsupported(format!(
            "characters are only built for prime moduli, {q} is composite"
        )));
    }
    Ok(())
}

impl IndexTable {
    fn new(q: u64) -> Result<Self> {
        let g = primitive_root(q)?;
        let mut ind = vec![0u32; q as usize];
        let mut r = 1u64;
        for i in 0..q - 1 {
            ind[r as usize] = i as u32;
            r = r * g % q;
        }
        Ok(Self { q, ind })
    }

    fn phi(&self) -> u64 {
        self.q - 1
    }

    /// Histogram of indices of the `n <= x` coprime to `q`.
    fn index_counts(&self, x: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.phi() as usize];
        for n in 1..=x {
            let r = n % self.q;
            if r != 0 {
                v[self.ind[r as usize] as usize] += 1;
            }
        }
        v
    }
}

fn check_kx(k: u32, x: u64) -> Result<()> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if x == 0 {
        return invalid("x must be at least 1");
    }
    Ok(())
}

fn count_from_table(t: &IndexTable, k: u32, x: u64) -> Result<u128> {
    let phi = t.phi() as usize;
    let v = t.index_counts(x);
    let support: Vec<(usize, u128)> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c as u128))
        .collect();
    let work = phi as u128 * support.len() as u128 * k as u128;
    if work > MAX_CHAR_WORK {
        return Err(Error::Resource { what: "residue convolution steps", needed: work, limit: MAX_CHAR_WORK });
    }
    let overflow = || Error::Resource { what: "congruence count bits", needed: 129, limit: 128 };
    let mut cur: Vec<u128> = v.iter().map(|&c| c as u128).collect();
    for _ in 1..k {
        let mut next = vec![0u128; phi];
        for (i, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(a, w) in &support {
                let j = (i + a) % phi;
                next[j] = c.checked_mul(w).and_then(|p| next[j].checked_add(p)).ok_or_else(overflow)?;
            }
        }
        cur = next;
    }
    let mut total: u128 = 0;
    for c in cur {
        total = c.checked_mul(c).and_then(|s| total.checked_add(s)).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Number of `2k`-tuples of integers `<= x` coprime to the prime `q` whose
/// two half-products agree modulo `q`.
pub fn congruence_count(k: u32, q: u64, x: u64) -> Result<u128> {
    check_kx(k, x)?;
    let t = IndexTable::new(q)?;
    count_from_table(&t, k, x)
}

/// Averages `|Σ_{n<=x} χ(n)|^{2k}` over the Dirichlet characters modulo the
/// prime `q`, directly from the character values.
pub fn char_moment_average(k: u32, q: u64, x: u64) -> Result<CharAverageResult> {
    check_kx(k, x)?;
    let t = IndexTable::new(q)?;
    let phi = t.phi() as usize;
    let work = phi as u128 * x as u128;
    if work > MAX_CHAR_WORK {
        return Err(Error::Resource { what: "character sum terms", needed: work, limit: MAX_CHAR_WORK });
    }
    let counts = t.index_counts(x);
    let support: Vec<(u64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as u64, c as f64))
        .collect();
    let roots: Vec<(f64, f64)> = (0..phi)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / phi as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let terms: Vec<usize> = support.iter().map(|&(_, c)| c as usize).collect();
    let n_terms: usize = terms.iter().sum();
    // each root carries a few ulps; the sum adds one more per term
    let delta = 4.0 * f64::EPSILON * n_terms as f64;
    let per_char: Vec<(f64, f64)> = (0..phi as u64)
        .into_par_iter()
        .map(|j| {
            let (mut re, mut im) = (0.0, 0.0);
            for &(i, c) in &support {
                let (cr, ci) = roots[((j * i) % phi as u64) as usize];
                re += c * cr;
                im += c * ci;
            }
            let abs2 = re * re + im * im;
            let abs = abs2.sqrt();
            let val = abs2.powi(k as i32);
            let err = 2.0 * k as f64 * (abs + delta).powi(2 * k as i32 - 1) * delta;
            (val, err)
        })
        .collect();
    let vals: Vec<f64> = per_char.iter().map(|p| p.0).collect();
    let errs: Vec<f64> = per_char.iter().map(|p| p.1).collect();
    let total = pairwise_sum(&vals);
    let err_total = pairwise_sum(&errs) + 2.0 * f64::EPSILON * total * (phi as f64).log2().max(1.0);
    let avg_all = total / phi as f64;
    let congruence = count_from_table(&t, k, x)?;

    let principal = (n_terms as f64).powi(2 * k as i32);
    let (avg_np, avg_np_exact) = if phi > 1 {
        let exact = (BigRational::from_integer(BigInt::from(congruence) * BigInt::from(phi))
            - BigRational::from_integer(BigInt::from(n_terms).pow(2 * k)))
            / BigRational::from_integer(BigInt::from(phi - 1));
        (Some((total - principal) / (phi - 1) as f64), Some(exact))
    } else {
        (None, None)
    };
    Ok(CharAverageResult {
        k,
        q,
        x,
        avg_all,
        avg_all_error: err_total / phi as f64,
        avg_nonprincipal: avg_np,
        avg_nonprincipal_exact: avg_np_exact,
        congruence_count: congruence,
    })
}
