//! Exact-arithmetic toolkit for binomial double sums of the form
//! `sum_k C(n,k)^2 C(2k,k) w(k)`.
//!
//! The crate evaluates the sequences exactly, checks closed-form identities
//! between their prefix sums, verifies polynomial-coefficient recurrences and
//! the operator identities that reduce third-order recurrences to
//! second-order ones, and tests divisibility and prime-modulus congruences.
//! Nothing here uses floating point.
//!
//! Module map:
//!
//! * [`arith`]: [`ExactRational`], binomials, Legendre symbols, primality and
//!   congruences of rationals.
//! * [`sequences`]: memoized generators ([`SequenceBank`], [`SequenceHandle`]).
//! * [`poly`] and [`recurrence`]: integer polynomials, recurrence operators,
//!   the built-in operator registry, combination certificates and recurrence
//!   guessing.
//! * [`verify`]: claim registry, suites, reports and the multiplier explorer.

pub mod arith;
mod error;
pub mod linalg;
pub mod poly;
pub mod recurrence;
pub mod sequences;
pub mod verify;

pub use arith::{
    binomial, binomial_strict, catalan, is_prime, legendre_symbol, rational_congruent,
    ExactRational,
};
pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use recurrence::{
    fit_recurrence, CombinationCertificate, FitOptions, RecurrenceOperator,
};
pub use sequences::{Sequence, SequenceBank, SequenceHandle, SequenceId};
pub use verify::{run_suite, SuiteConfig, VerificationReport};

/// Version string stamped into every report.
pub const ENGINE_VERSION: &str = concat!("binsum-core ", env!("CARGO_PKG_VERSION"));
