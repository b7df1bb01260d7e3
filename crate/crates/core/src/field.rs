//! The imaginary quadratic field K = Q(√−p) for an odd prime p: its
//! discriminant, Minkowski bound, and the splitting behavior of 2 and of
//! small odd primes.

use crate::arith::{self, SMALL_PRIMES};
use crate::Error;

/// How the prime 2 decomposes in the ring of integers of K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSplitting {
    /// 2A = P₁², for p ≡ 1 (mod 4).
    Ramified,
    /// 2A maximal, for p ≡ 3 (mod 8).
    Inert,
    /// 2A = P₁P₂, for p ≡ 7 (mod 8).
    Split,
}

/// Descriptor of K = Q(√−p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadField {
    p: u64,
    residue_class: u8,
    discriminant: i64,
    minkowski_bound: f64,
    two_splitting: TwoSplitting,
}

// Tight double-precision enclosure of π², used to decide q < (k/π)√p by the
// equivalent integer comparison π²q² < k²p without boundary misclassification.
const PI_SQ_LO: f64 = 9.869604401089356;
const PI_SQ_HI: f64 = 9.869_604_401_089_36;

impl QuadField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_class(&self) -> u8 {
        self.residue_class
    }

    /// Field discriminant: −p for p ≡ 3 (mod 4), −4p for p ≡ 1 (mod 4).
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// (4/π)√p for p ≡ 1 (mod 4), (2/π)√p for p ≡ 3 (mod 4).
    pub fn minkowski_bound(&self) -> f64 {
        self.minkowski_bound
    }

    pub fn two_splitting(&self) -> TwoSplitting {
        self.two_splitting
    }

    /// Exact test for q < (k/π)√p where k is 4 or 2 per the residue class.
    pub fn below_minkowski(&self, q: u64) -> bool {
        let k_sq = if self.p % 4 == 1 { 16.0 } else { 4.0 };
        let lhs_lo = PI_SQ_LO * (q as f64) * (q as f64);
        let lhs_hi = PI_SQ_HI * (q as f64) * (q as f64);
        let rhs = k_sq * self.p as f64;
        if lhs_hi < rhs {
            true
        } else if lhs_lo > rhs {
            false
        } else {
            // π is irrational, so the enclosure decides every integer q in
            // practice; fall back to the midpoint if it ever does not.
            (lhs_lo + lhs_hi) / 2.0 < rhs
        }
    }
}

/// Build the field descriptor for K = Q(√−p).
pub fn make_field(p: u64) -> Result<QuadField, Error> {
    if p == 2 || !arith::is_prime(p)? {
        return Err(Error::NotAnOddPrime(p));
    }
    let residue_class = (p % 8) as u8;
    let (discriminant, minkowski_bound, two_splitting) = if p % 4 == 1 {
        (
            -4 * p as i64,
            4.0 / std::f64::consts::PI * (p as f64).sqrt(),
            TwoSplitting::Ramified,
        )
    } else {
        (
            -(p as i64),
            2.0 / std::f64::consts::PI * (p as f64).sqrt(),
            if p % 8 == 3 {
                TwoSplitting::Inert
            } else {
                TwoSplitting::Split
            },
        )
    };
    Ok(QuadField {
        p,
        residue_class,
        discriminant,
        minkowski_bound,
        two_splitting,
    })
}

/// All odd primes q < limit for which −p is a quadratic residue mod q
/// (i.e. q splits in K), ascending.
///
/// Values of `limit` within ±0.5 of an integer candidate are re-decided
/// exactly: q < √p as q² < p, and the Minkowski bound via `below_minkowski`.
pub fn split_odd_primes(field: &QuadField, limit: f64) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    let p = field.p();
    for &q in SMALL_PRIMES.iter().skip(1) {
        let q = q as u64;
        let qf = q as f64;
        if qf >= limit + 0.5 {
            break;
        }
        let below = if qf < limit - 0.5 {
            true
        } else if (limit - field.minkowski_bound()).abs() < 1e-9 {
            field.below_minkowski(q)
        } else if (limit - (p as f64).sqrt()).abs() < 1e-9 {
            q * q < p
        } else {
            qf < limit
        };
        if below && arith::jacobi(-(p as i64), q)? == 1 {
            out.push(q);
        }
    }
    Ok(out)
}
