//! Survivor primes, class groups of imaginary quadratic fields, and Ono
//! invariants.
//!
//! The central object is the predicate ω(p + x²) ≤ 2 over all odd x with
//! x² < p. Primes passing it ("survivors") are tightly constrained: their
//! fields Q(√−p) have class number 2, 4 or 1 for p ≡ 5, 1, 3 (mod 8), and
//! for p ≡ 7 (mod 8) the Ono invariant equals the class number. This crate
//! computes all of those finitely checkable facts:
//!
//! - [`arith`]: deterministic 64-bit primality, factorization, Ω/ω, Jacobi.
//! - [`quadform`]: reduced binary quadratic forms, Gauss composition, class
//!   numbers and class-group structure.
//! - [`field`]: Q(√−p) descriptors — discriminant, Minkowski bound,
//!   splitting of 2 and of small odd primes.
//! - [`ono`]: the Ono invariant for p ≡ 7 (mod 8) and the Sasaki check.
//! - [`survey`]: the survivor predicate, structural witnesses, per-class
//!   verification, and the parallel range search.
//! - [`cli`]: the report-row schema and command implementations behind the
//!   `primeclass` binary.

pub mod arith;
pub mod cli;
pub mod field;
pub mod ono;
pub mod quadform;
pub mod survey;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("input {0} is out of the supported range 1..=2^62")]
    OutOfRange(u64),
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    BadModulus(u64),
    #[error("({a},{b},{c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
    #[error("{0} is not a negative discriminant (need D < 0, D ≡ 0,1 mod 4)")]
    BadDiscriminant(i64),
    #[error("forms have different discriminants ({left} vs {right})")]
    DiscriminantMismatch { left: i64, right: i64 },
    #[error("prime {p} is not ≡ {expected} (mod 8)")]
    WrongResidueClass { p: u64, expected: u8 },
    #[error("invalid range [{lo}, {hi}]")]
    BadRange { lo: u64, hi: u64 },
}
