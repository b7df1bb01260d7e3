//! Exact 64-bit integer arithmetic: primality, factorization, the length
//! functions Ω and ω, and the Jacobi symbol.
//!
//! Everything here is deterministic. Primality uses a Miller-Rabin witness
//! set that is exact for the whole input range, and factorization falls back
//! to Brent's cycle-finding rho variant after trial division.

use once_cell::sync::Lazy;

use crate::Error;

/// Inputs are restricted to `1..=MAX_N` so that every intermediate product
/// fits in 128 bits with room to spare.
pub const MAX_N: u64 = 1 << 62;

/// Trial division handles prime factors below this bound; rho takes the rest.
const TRIAL_LIMIT: u64 = 1 << 16;

/// Base primes up to 2^20, enough to segment-sieve any range below 2^40.
pub(crate) static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| {
    let limit = 1usize << 20;
    let mut composite = vec![false; limit];
    let mut primes = Vec::with_capacity(82_025);
    for n in 2..limit {
        if !composite[n] {
            primes.push(n as u32);
            let mut m = n * n;
            while m < limit {
                composite[m] = true;
                m += n;
            }
        }
    }
    primes
});

/// A positive integer together with its standard prime decomposition,
/// `n = p_1^a_1 · … · p_r^a_r` with `p_1 < p_2 < … < p_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> u64 {
        self.n
    }

    /// The `(prime, exponent)` pairs in increasing prime order; empty for n = 1.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Ω(n): number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, a)| a).sum()
    }

    /// ω(n): number of distinct prime factors.
    pub fn small_omega(&self) -> u32 {
        self.factors.len() as u32
    }
}

fn check_range(n: u64) -> Result<(), Error> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange(n));
    }
    Ok(())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for `1 ≤ n ≤ 2^62`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is exact for
/// all inputs below 3.3·10^24, which covers the full 64-bit range.
pub fn is_prime(n: u64) -> Result<bool, Error> {
    check_range(n)?;
    Ok(is_prime_u64(n))
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor of an odd
/// composite `n` that has no prime factor below the trial-division bound.
fn brent_rho(n: u64) -> u64 {
    // The polynomial offset c is bumped on each failed cycle, so the search
    // is deterministic and terminates for every composite in range.
    for c in 1u64.. {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut q = 1u64;
        let mut ys = y;
        let mut g = 1u64;
        let m = 128u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = (mul_mod(y, y, n) + c) % n;
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = (mul_mod(y, y, n) + c) % n;
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time to recover the factor.
            g = 1;
            while g == 1 {
                ys = (mul_mod(ys, ys, n) + c) % n;
                g = gcd(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Standard decomposition of `n` as a product of primes.
pub fn factor(n: u64) -> Result<FactoredInteger, Error> {
    check_range(n)?;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    for &p in SMALL_PRIMES.iter() {
        let p = p as u64;
        if p >= TRIAL_LIMIT || p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut a = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            factors.push((p, a));
        }
    }
    if m > 1 {
        if m < TRIAL_LIMIT * TRIAL_LIMIT || is_prime_u64(m) {
            // No factor below TRIAL_LIMIT remains, so a cofactor under
            // TRIAL_LIMIT² must itself be prime.
            factors.push((m, 1));
        } else {
            let mut large = Vec::new();
            split_composite(m, &mut large);
            large.sort_unstable();
            let mut i = 0;
            while i < large.len() {
                let p = large[i];
                let mut a = 0u32;
                while i < large.len() && large[i] == p {
                    a += 1;
                    i += 1;
                }
                factors.push((p, a));
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(FactoredInteger { n, factors })
}

fn split_composite(n: u64, out: &mut Vec<u64>) {
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    // Perfect powers defeat rho's gcd trick, so peel them off first.
    for e in [2u32, 3, 5] {
        let r = nth_root(n, e);
        if r.pow(e) == n {
            for _ in 0..e {
                split_composite(r, out);
            }
            return;
        }
    }
    let d = brent_rho(n);
    split_composite(d, out);
    split_composite(n / d, out);
}

fn nth_root(n: u64, e: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / e as f64).round() as u64;
    while r > 1 && r.checked_pow(e).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(e).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Ω(n), the length of n: prime factors counted with multiplicity; Ω(1) = 0.
pub fn big_omega(n: u64) -> Result<u32, Error> {
    Ok(factor(n)?.big_omega())
}

/// ω(n): distinct prime factors; ω(1) = 0.
pub fn small_omega(n: u64) -> Result<u32, Error> {
    Ok(factor(n)?.small_omega())
}

/// Jacobi symbol (a | m) for odd positive m; the Legendre symbol when m is an
/// odd prime.
pub fn jacobi(a: i64, m: u64) -> Result<i32, Error> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::BadModulus(m));
    }
    let mut num = (a.rem_euclid(m as i64)) as u64;
    let mut den = m;
    let mut sign = 1i32;
    while num != 0 {
        while num.is_multiple_of(2) {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                sign = -sign;
            }
        }
        (num, den) = (den, num);
        if num % 4 == 3 && den % 4 == 3 {
            sign = -sign;
        }
        num %= den;
    }
    Ok(if den == 1 { sign } else { 0 })
}
