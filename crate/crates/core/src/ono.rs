//! The Ono invariant of K = Q(√−p) for p ≡ 7 (mod 8), and the Sasaki
//! inequality d ≤ h.

use crate::arith;
use crate::quadform;
use crate::Error;

/// Result of an Ono-invariant computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OnoResult {
    pub p: u64,
    /// d = max over 0 ≤ n ≤ (p−7)/4 of Ω(((2n+1)² + p)/4).
    pub d: u32,
    /// Smallest n attaining the maximum.
    pub argmax_n: u64,
    /// Class number of Q(√−p).
    pub h: u64,
}

fn check_residue(p: u64) -> Result<(), Error> {
    if p % 8 != 7 || !arith::is_prime(p)? {
        return Err(Error::WrongResidueClass { p, expected: 7 });
    }
    Ok(())
}

/// The Ono invariant of Q(√−p) by full enumeration of n in [0, (p−7)/4].
pub fn ono_invariant(p: u64) -> Result<OnoResult, Error> {
    ono_invariant_opts(p, false)
}

/// As `ono_invariant`, optionally stopping as soon as d ≥ h is witnessed.
/// With `early_exit` the returned d is only a lower bound d ≥ h (enough for
/// equality checks, since d ≤ h always holds) and argmax_n is the smallest n
/// seen attaining it.
pub fn ono_invariant_opts(p: u64, early_exit: bool) -> Result<OnoResult, Error> {
    check_residue(p)?;
    let h = quadform::class_number(-(p as i64))?;
    let mut d = 0u32;
    let mut argmax_n = 0u64;
    for n in 0..=(p - 7) / 4 {
        let odd = 2 * n + 1;
        // p ≡ 7 (mod 8) and odd² ≡ 1 (mod 8) make the numerator ≡ 0 (mod 4).
        let value = (odd * odd + p) / 4;
        let len = arith::big_omega(value)?;
        if len > d {
            d = len;
            argmax_n = n;
            if early_exit && u64::from(d) >= h {
                break;
            }
        }
    }
    Ok(OnoResult { p, d, argmax_n, h })
}

/// Sasaki's inequality d ≤ h for K = Q(√−p).
pub fn sasaki_check(p: u64) -> Result<bool, Error> {
    let r = ono_invariant(p)?;
    Ok(u64::from(r.d) <= r.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ono_examples() {
        let r = ono_invariant(7).unwrap();
        assert_eq!((r.d, r.argmax_n, r.h), (1, 0, 1));

        // p=23: n=0..4 gives values 6,8,12,18,26 with Ω = 2,3,3,3,2.
        let r = ono_invariant(23).unwrap();
        assert_eq!((r.d, r.argmax_n, r.h), (3, 1, 3));

        let r = ono_invariant(31).unwrap();
        assert_eq!(r.d, 3);
        assert_eq!(r.h, 3);
    }

    #[test]
    fn ono_domain_errors() {
        assert!(ono_invariant(5).is_err());
        assert!(ono_invariant(15).is_err()); // 15 ≡ 7 (mod 8) but composite
    }

    #[test]
    fn sasaki_examples() {
        assert!(sasaki_check(7).unwrap());
        assert!(sasaki_check(71).unwrap());
        let r = ono_invariant(71).unwrap();
        assert_eq!(r.h, 7);
        let r = ono_invariant(1423).unwrap();
        assert_eq!(u64::from(r.d), r.h);
    }

    #[test]
    fn early_exit_agrees_on_equality() {
        for p in [7u64, 23, 31, 47, 79, 103, 127, 151, 167, 191, 199, 239] {
            let full = ono_invariant(p).unwrap();
            let fast = ono_invariant_opts(p, true).unwrap();
            assert_eq!(
                u64::from(full.d) == full.h,
                u64::from(fast.d) >= fast.h,
                "p={p}"
            );
        }
    }
}
