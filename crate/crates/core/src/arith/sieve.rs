use crate::error::{invalid, Error, Result};

/// Largest limit accepted by [`build_spf_sieve`]. The table stores one `u32`
/// per integer, so this caps the table at 4 GiB.
pub const MAX_SIEVE_LIMIT: u64 = 1 << 30;

/// Smallest-prime-factor table for every `2 <= n <= limit`.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

/// Prime factorization as `(prime, exponent)` pairs with increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

/// Builds the smallest-prime-factor table with a linear sieve.
pub fn build_spf_sieve(limit: u64) -> Result<FactorSieve> {
    if limit < 2 {
        return invalid(format!("sieve limit must be at least 2, got {limit}"));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Resource {
            what: "sieve entries",
            needed: limit as u128,
            limit: MAX_SIEVE_LIMIT as u128,
        });
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m > n {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(FactorSieve { limit, spf, primes })
}

/// Factorizes `n` using the sieve table.
pub fn factorize(n: u64, sieve: &FactorSieve) -> Result<Factorization> {
    sieve.factorize(n)
}

impl FactorSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf(n) == n
    }

    /// `true` when no prime square divides `n`.
    pub fn is_squarefree(&self, mut n: u64) -> bool {
        let mut last = 0;
        while n > 1 {
            let p = self.spf(n);
            if p == last {
                return false;
            }
            last = p;
            n /= p;
        }
        true
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return invalid("cannot factorize 0");
        }
        if n > self.limit {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                limit: self.limit,
            });
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf(m);
            m /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        Ok(Factorization(out))
    }
}

impl Factorization {
    /// Builds a factorization from explicit pairs, checking the invariants.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return invalid("primes in a factorization must be strictly increasing");
            }
        }
        for &(p, e) in &pairs {
            if e == 0 || !is_prime_trial(p) {
                return invalid(format!("({p}, {e}) is not a prime power factor"));
            }
        }
        Ok(Self(pairs))
    }

    /// Trial-division factorization, for moduli that are not covered by a sieve.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return invalid("cannot factorize 0");
        }
        let mut out = Vec::new();
        let mut m = n;
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            if m.is_multiple_of(d) {
                let mut e = 0;
                while m.is_multiple_of(d) {
                    m /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((m, 1));
        }
        Ok(Self(out))
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// The factored integer, or `None` on `u128` overflow.
    pub fn value(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for &(p, e) in &self.0 {
            for _ in 0..e {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Calls `f` on every prime `p <= limit` in increasing order using a
/// segmented sieve of Eratosthenes. Memory use is `O(sqrt(limit))`.
pub fn primes_up_to(limit: u64, mut f: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut base = vec![true; root as usize + 1];
    let mut small = Vec::new();
    for i in 2..=root as usize {
        if base[i] {
            small.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                base[j] = false;
                j += i;
            }
        }
    }
    const SEGMENT: u64 = 1 << 18;
    let mut seg = vec![true; SEGMENT as usize];
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        seg.iter_mut().for_each(|b| *b = true);
        for &p in &small {
            if p * p > hi {
                break;
            }
            let mut start = p * p.max(lo.div_ceil(p));
            while start <= hi {
                seg[(start - lo) as usize] = false;
                start += p;
            }
        }
        for n in lo..=hi {
            if seg[(n - lo) as usize] {
                f(n);
            }
        }
        lo = hi + 1;
    }
}
