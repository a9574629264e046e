use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::arith::build_spf_sieve;
use crate::error::{invalid, Error, Result};

/// Sign enumeration is limited to `2^24` sign vectors.
pub const MAX_SIGN_PRIMES: usize = 24;
/// Largest `x` accepted by the tuple count.
pub const MAX_TUPLE_X: u64 = 10_000;
const MAX_TUPLE_WORK: u128 = 1 << 32;

fn squarefree_up_to(x: u64) -> Result<Vec<u64>> {
    if x < 2 {
        return Ok(vec![1]);
    }
    let sieve = build_spf_sieve(x)?;
    Ok((1..=x).filter(|&n| n == 1 || sieve.is_squarefree(n)).collect())
}

fn primes_to(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    crate::arith::primes_up_to(x, |p| out.push(p));
    out
}

/// Histogram of `S(s) = Σ_{n<=x squarefree} Π_{p|n} s_p` over all sign
/// vectors `s`, as `(S, multiplicity)` pairs sorted by `S`.
///
/// Sign vectors are visited in Gray-code order; flipping one prime negates the
/// terms it divides, so each step costs only the number of its multiples.
pub fn rademacher_sign_histogram(x: u64) -> Result<Vec<(i64, u64)>> {
    if x == 0 {
        return invalid("x must be at least 1");
    }
    let primes = primes_to(x);
    if primes.len() > MAX_SIGN_PRIMES {
        return Err(Error::Resource {
            what: "primes up to x for sign enumeration",
            needed: primes.len() as u128,
            limit: MAX_SIGN_PRIMES as u128,
        });
    }
    let sqf = squarefree_up_to(x)?;
    // largest primes on the fastest-changing bits
    let order: Vec<u64> = primes.iter().rev().copied().collect();
    let multiples: Vec<Vec<usize>> = order
        .iter()
        .map(|&p| (0..sqf.len()).filter(|&i| sqf[i] % p == 0).collect())
        .collect();
    let n = sqf.len() as i64;
    let mut value = vec![1i8; sqf.len()];
    let mut s = n;
    let mut counts = vec![0u64; 2 * n as usize + 1];
    counts[(s + n) as usize] += 1;
    let total: u64 = 1 << order.len();
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        for &i in &multiples[bit] {
            s -= 2 * value[i] as i64;
            value[i] = -value[i];
        }
        counts[(s + n) as usize] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(i, c)| (i as i64 - n, c))
        .collect())
}

/// `E[(Σ_{n<=x} Y_n)^{2k}]` for the Rademacher model, by averaging over every
/// assignment of signs to the primes up to `x`.
pub fn rademacher_moment_sign_enum(k: u32, x: u64) -> Result<BigUint> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let hist = rademacher_sign_histogram(x)?;
    let mut num = BigUint::zero();
    let mut vectors = 0u64;
    for (s, c) in hist {
        num += BigUint::from(s.unsigned_abs()).pow(2 * k) * c;
        vectors += c;
    }
    let (q, r) = num.div_rem(&BigUint::from(vectors));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "sign-enumeration moment is not an integer (x={x}, k={k})"
        )));
    }
    Ok(q)
}

/// Squarefree kernel of `a·b` for squarefree `a`, `b`: the symmetric
/// difference of their prime sets.
fn xor_kernel(a: u128, b: u128) -> u128 {
    let g = a.gcd(&b);
    (a / g) * (b / g)
}

/// Number of `2k`-tuples of squarefree integers `<= x` whose product is a
/// perfect square, which equals the Rademacher `2k`-th moment.
///
/// Each squarefree `n` is its own GF(2) prime signature. The `k`-fold
/// signature distribution `M_k` is built by sparse convolution and the answer
/// is `Σ_s M_k(s)²`.
pub fn rademacher_moment_tuple_count(k: u32, x: u64) -> Result<BigUint> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if x == 0 {
        return invalid("x must be at least 1");
    }
    if x > MAX_TUPLE_X {
        return Err(Error::OutOfRange { what: "x", value: x, limit: MAX_TUPLE_X });
    }
    let sqf = squarefree_up_to(x)?;
    let mut dist: FxHashMap<u128, u128> = FxHashMap::default();
    dist.insert(1, 1);
    let mut work: u128 = 0;
    for _ in 0..k {
        work += dist.len() as u128 * sqf.len() as u128;
        if work > MAX_TUPLE_WORK {
            return Err(Error::Resource {
                what: "signature convolution steps",
                needed: work,
                limit: MAX_TUPLE_WORK,
            });
        }
        let mut next: FxHashMap<u128, u128> = FxHashMap::default();
        next.reserve(dist.len() * 2);
        for (&sig, &c) in &dist {
            for &n in &sqf {
                *next.entry(xor_kernel(sig, n as u128)).or_insert(0) += c;
            }
        }
        dist = next;
    }
    let mut total = BigUint::zero();
    for &c in dist.values() {
        total += BigUint::from(c) * c;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_enum_examples() {
        assert_eq!(rademacher_moment_sign_enum(2, 3).unwrap(), BigUint::from(21u32));
        assert_eq!(rademacher_moment_sign_enum(3, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(rademacher_moment_sign_enum(1, 3).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn histogram_for_three() {
        // S = 1 + s2 + s3 over four sign vectors
        let h = rademacher_sign_histogram(3).unwrap();
        assert_eq!(h, vec![(-1, 1), (1, 2), (3, 1)]);
    }

    #[test]
    fn tuple_count_examples() {
        assert_eq!(rademacher_moment_tuple_count(2, 3).unwrap(), BigUint::from(21u32));
        assert_eq!(rademacher_moment_tuple_count(1, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(rademacher_moment_tuple_count(4, 1).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn second_moment_counts_squarefree() {
        for x in 1..=40u64 {
            let q = squarefree_up_to(x).unwrap().len() as u32;
            assert_eq!(rademacher_moment_tuple_count(1, x).unwrap(), BigUint::from(q));
        }
    }

    #[test]
    fn routes_agree() {
        for k in 1..=3 {
            for x in 1..=20 {
                assert_eq!(
                    rademacher_moment_sign_enum(k, x).unwrap(),
                    rademacher_moment_tuple_count(k, x).unwrap(),
                    "k={k} x={x}"
                );
            }
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(rademacher_sign_histogram(100), Err(Error::Resource { .. })));
        assert!(rademacher_moment_tuple_count(2, 20_000).is_err());
        assert!(rademacher_moment_tuple_count(0, 5).is_err());
    }
}
