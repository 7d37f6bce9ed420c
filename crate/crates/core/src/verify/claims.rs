//! Identity and congruence claims and their per-index checkers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::report::{ClaimKind, Failure, FailureReason, ReportBuilder, VerificationReport};
use crate::arith::{is_prime, rational_congruent, residue, ExactRational};
use crate::error::{Error, Result};
use crate::sequences::{SequenceBank, SequenceId};

/// One side of a claim, evaluated at an index.
pub type Term = fn(&SequenceBank, u64) -> Result<ExactRational>;

/// Sequences a claim reads, prefilled before the per-index loop.
pub type Needs = fn() -> Vec<SequenceId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulus {
    NSquared,
    FourNMinusOne,
    P,
    PSquared,
    PCubed,
}

impl Modulus {
    pub fn at(self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        match self {
            Modulus::NSquared | Modulus::PSquared => &n * &n,
            Modulus::FourNMinusOne => 4 * n - 1,
            Modulus::P => n,
            Modulus::PCubed => &n * &n * &n,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Modulus::NSquared => "n^2",
            Modulus::FourNMinusOne => "4n-1",
            Modulus::P => "p",
            Modulus::PSquared => "p^2",
            Modulus::PCubed => "p^3",
        }
    }
}

/// Indices a claim ranges over, up to the bound it is checked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// Every `n >= first`, bounded by `n_max`.
    From(u64),
    /// Every prime, bounded by `prime_max`.
    Primes,
}

impl IndexSet {
    pub fn indices(self, bound: u64) -> Vec<u64> {
        match self {
            IndexSet::From(first) => (first..=bound).collect(),
            IndexSet::Primes => (2..=bound).filter(|&p| is_prime(p)).collect(),
        }
    }

    pub fn first(self) -> u64 {
        match self {
            IndexSet::From(first) => first,
            IndexSet::Primes => 2,
        }
    }
}

#[derive(Clone)]
pub struct IdentityClaim {
    pub id: &'static str,
    pub statement: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    pub first: u64,
    pub needs: Needs,
}

#[derive(Clone)]
pub struct CongruenceClaim {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub statement: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    pub modulus: Modulus,
    pub indices: IndexSet,
    /// Indices outside the claim's hypotheses, where a Legendre symbol is
    /// taken as 0. The outcome there is recorded as a note, not asserted.
    pub convention: fn(u64) -> Option<&'static str>,
    pub needs: Needs,
}

pub(crate) fn no_convention(_: u64) -> Option<&'static str> {
    None
}

fn prefill(bank: &SequenceBank, needs: Needs, bound: u64) -> Result<()> {
    for id in needs() {
        bank.prefill(&id, bound)?;
    }
    Ok(())
}

fn error_failure(index: u64, e: &Error) -> Failure {
    Failure {
        index,
        reason: FailureReason::Error,
        lhs: None,
        rhs: None,
        residue: None,
        message: Some(e.to_string()),
    }
}

/// Checks `lhs(n) = rhs(n)` exactly for `first <= n <= n_max`.
pub fn check_identity(
    claim: &IdentityClaim,
    bank: &SequenceBank,
    n_max: u64,
    timings: bool,
) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new(claim.id, ClaimKind::Identity, claim.statement).range(claim.first, n_max);
    prefill(bank, claim.needs, n_max)?;
    let outcomes: Vec<(u64, Result<(ExactRational, ExactRational)>)> = (claim.first..=n_max)
        .into_par_iter()
        .map(|n| (n, (claim.lhs)(bank, n).and_then(|l| Ok((l, (claim.rhs)(bank, n)?)))))
        .collect();
    for (n, out) in outcomes {
        match out {
            Ok((l, r)) if l == r => b.pass(),
            Ok((l, r)) => b.fail(Failure {
                index: n,
                reason: FailureReason::Mismatch,
                residue: Some((&l - &r).to_string()),
                lhs: Some(l),
                rhs: Some(r),
                message: None,
            }),
            Err(e) => b.fail(error_failure(n, &e)),
        }
    }
    Ok(b.finish(timings))
}

enum Outcome {
    Holds,
    Differs { lhs: ExactRational, rhs: ExactRational, residues: String },
    IllPosed { lhs: ExactRational, rhs: ExactRational, message: String },
}

fn congruence_at(claim: &CongruenceClaim, bank: &SequenceBank, n: u64) -> Result<Outcome> {
    let lhs = (claim.lhs)(bank, n)?;
    let rhs = (claim.rhs)(bank, n)?;
    let m = claim.modulus.at(n);
    match rational_congruent(&lhs, &rhs, &m) {
        Ok(true) => Ok(Outcome::Holds),
        Ok(false) => {
            let show = |v: &ExactRational| {
                residue(v, &m).map(|r| r.to_string()).unwrap_or_else(|_| "undefined".into())
            };
            let residues = format!("{} vs {} (mod {m})", show(&lhs), show(&rhs));
            Ok(Outcome::Differs { lhs, rhs, residues })
        }
        Err(e @ Error::DenominatorNotInvertible { .. }) => Ok(Outcome::IllPosed {
            lhs,
            rhs,
            message: e.to_string(),
        }),
        Err(e) => Err(e),
    }
}

/// Checks the congruence at every index of the claim's domain up to `bound`.
/// Ill-posed indices (a denominator sharing a factor with the modulus) are
/// failures, never passes.
pub fn check_congruence(
    claim: &CongruenceClaim,
    bank: &SequenceBank,
    bound: u64,
    timings: bool,
) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new(claim.id, claim.kind, claim.statement).range(claim.indices.first(), bound);
    b.detail("modulus", claim.modulus.describe());
    prefill(bank, claim.needs, bound)?;
    let indices = claim.indices.indices(bound);
    let outcomes: Vec<(u64, Result<Outcome>)> = indices
        .into_par_iter()
        .map(|n| (n, congruence_at(claim, bank, n)))
        .collect();
    for (n, out) in outcomes {
        if let Some(why) = (claim.convention)(n) {
            let verdict = match &out {
                Ok(Outcome::Holds) => "holds".to_string(),
                Ok(Outcome::Differs { residues, .. }) => format!("fails, {residues}"),
                Ok(Outcome::IllPosed { message, .. }) => format!("ill-posed, {message}"),
                Err(e) => format!("not evaluable, {e}"),
            };
            b.note(Some(n), format!("{why}; not asserted, congruence {verdict}"));
            continue;
        }
        match out {
            Ok(Outcome::Holds) => b.pass(),
            Ok(Outcome::Differs { lhs, rhs, residues }) => b.fail(Failure {
                index: n,
                reason: FailureReason::Mismatch,
                lhs: Some(lhs),
                rhs: Some(rhs),
                residue: Some(residues),
                message: None,
            }),
            Ok(Outcome::IllPosed { lhs, rhs, message }) => b.fail(Failure {
                index: n,
                reason: FailureReason::IllPosed,
                lhs: Some(lhs),
                rhs: Some(rhs),
                residue: None,
                message: Some(message),
            }),
            Err(e) => b.fail(error_failure(n, &e)),
        }
    }
    Ok(b.finish(timings))
}

/// `C(p-1, k) = (-1)^k (mod p)` for every prime `p <= prime_max` and
/// `0 <= k <= p-1`; one checked index per prime.
pub fn check_binomial_sign(bank: &SequenceBank, prime_max: u64, timings: bool) -> VerificationReport {
    let mut b = ReportBuilder::new(
        "binom-p-1-sign",
        ClaimKind::Lemma,
        "C(p-1, k) = (-1)^k (mod p) for 0 <= k <= p-1",
    )
    .range(2, prime_max);
    let table = bank.binomials();
    let primes = IndexSet::Primes.indices(prime_max);
    let bad: Vec<(u64, Option<u64>)> = primes
        .into_par_iter()
        .map(|p| {
            let pb = BigInt::from(p);
            let row = table.row(p - 1);
            let k = row.iter().enumerate().position(|(k, c)| {
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                !(c - sign).mod_floor(&pb).is_zero()
            });
            (p, k.map(|k| k as u64))
        })
        .collect();
    for (p, k) in bad {
        match k {
            None => b.pass(),
            Some(k) => b.fail(Failure {
                index: p,
                reason: FailureReason::Mismatch,
                lhs: Some(ExactRational::from(table.get(p as i64 - 1, k as i64))),
                rhs: Some(ExactRational::from(if k % 2 == 0 { 1 } else { -1 })),
                residue: None,
                message: Some(format!("first offending k = {k}")),
            }),
        }
    }
    b.finish(timings)
}
