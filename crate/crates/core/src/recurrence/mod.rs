//! Linear recurrence operators with polynomial coefficients.
//!
//! An operator of order `r` with coefficients `c_0..c_r` acts on a sequence
//! as `sum_i c_i(n) u(n+i)`. It annihilates a sequence on a range when that
//! value is zero at every index of the range.

mod certificate;
mod fit;
pub mod registry;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::sequences::Sequence;
use crate::verify::report::{ClaimKind, Failure, FailureReason, ReportBuilder, VerificationReport};

pub use certificate::{CombinationCertificate, InductionOutcome};
pub use fit::{fit_recurrence, FitOptions, DEFAULT_HOLDOUT};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceOperator {
    coeffs: Vec<IntPolynomial>,
}

impl RecurrenceOperator {
    /// Builds an operator from `c_0..c_r`; requires `r >= 1` and `c_r != 0`.
    pub fn new(coeffs: Vec<IntPolynomial>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::OrderMismatch(format!(
                "an operator needs at least two coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::OrderMismatch("leading coefficient is zero".into()));
        }
        Ok(RecurrenceOperator { coeffs })
    }

    /// The operator of the given order whose coefficients are all zero.
    pub fn zero(order: usize) -> Self {
        RecurrenceOperator {
            coeffs: vec![IntPolynomial::zero(); order + 1],
        }
    }

    /// Parses each coefficient from polynomial notation, e.g. `"9(n+1)^2"`.
    pub fn from_polynomials(coeffs: &[&str]) -> Result<Self> {
        Self::new(coeffs.iter().map(|c| c.parse()).collect::<Result<_>>()?)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[IntPolynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(IntPolynomial::is_zero)
    }

    /// Coefficient values `c_0(n)..c_r(n)`.
    pub fn values_at(&self, n: i64) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.eval_at(n)).collect()
    }

    /// `sum_i c_i(n) seq(n+i)`.
    pub fn apply(&self, seq: &dyn Sequence, n: u64) -> Result<ExactRational> {
        let nb = BigInt::from(n);
        let mut acc = ExactRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = seq.term(n + i as u64)?;
            acc += &(&ExactRational::from(c.eval(&nb)) * &term);
        }
        Ok(acc)
    }

    /// Applies the operator on `first..=last` and records every nonzero value.
    pub fn verify_annihilates(&self, seq: &dyn Sequence, first: u64, last: u64) -> VerificationReport {
        let mut b = ReportBuilder::new(
            format!("annihilates:{}", seq.label()),
            ClaimKind::Recurrence,
            format!("L u = 0 for u = {}, L = {self}", seq.label()),
        )
        .range(first, last);
        let outcomes: Vec<(u64, Result<ExactRational>)> = (first..=last)
            .into_par_iter()
            .map(|n| (n, self.apply(seq, n)))
            .collect();
        for (n, out) in outcomes {
            match out {
                Ok(v) if v.is_zero() => b.pass(),
                Ok(v) => b.fail(Failure {
                    index: n,
                    reason: FailureReason::Mismatch,
                    residue: Some(v.to_string()),
                    lhs: Some(v),
                    rhs: Some(ExactRational::zero()),
                    message: None,
                }),
                Err(e) => b.fail(Failure {
                    index: n,
                    reason: FailureReason::Error,
                    lhs: None,
                    rhs: None,
                    residue: None,
                    message: Some(e.to_string()),
                }),
            }
        }
        b.finish(false)
    }

    /// Whether the operator vanishes on `seq` over `first..=last`.
    pub fn annihilates(&self, seq: &dyn Sequence, first: u64, last: u64) -> Result<bool> {
        for n in first..=last {
            if !self.apply(seq, n)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// gcd of all integer coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(&c.content()))
    }

    /// Divides out the content and makes the top coefficient of `c_r`
    /// positive.
    pub fn normalized(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let negative = self
            .coeffs
            .last()
            .and_then(IntPolynomial::leading)
            .is_some_and(|l| l.is_negative());
        let g = if negative { -g } else { g };
        RecurrenceOperator {
            coeffs: self.coeffs.iter().map(|c| c.div_exact(&g)).collect(),
        }
    }

    /// Text in the exchange format `r; c_0 = [a0,a1,...]; ...; c_r = [...]`.
    pub fn to_exchange(&self) -> String {
        let mut s = self.order().to_string();
        for (i, c) in self.coeffs.iter().enumerate() {
            let list: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("; c_{i} = [{}]", list.join(",")));
        }
        s
    }

    pub fn from_exchange(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("operator exchange format: {what}"));
        let mut parts = text.trim().split(';').map(str::trim);
        let order: usize = parts
            .next()
            .and_then(|o| o.parse().ok())
            .ok_or_else(|| bad("missing order"))?;
        let mut coeffs = Vec::with_capacity(order + 1);
        for (i, part) in parts.filter(|p| !p.is_empty()).enumerate() {
            let (name, list) = part.split_once('=').ok_or_else(|| bad("expected `c_i = [...]`"))?;
            if name.trim() != format!("c_{i}") {
                return Err(bad(&format!("expected c_{i}, found `{}`", name.trim())));
            }
            let list = list
                .trim()
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| bad("coefficient list must be bracketed"))?;
            let values = list
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<BigInt>().map_err(|_| bad(&format!("bad integer `{x}`"))))
                .collect::<Result<Vec<_>>>()?;
            coeffs.push(IntPolynomial::new(values));
        }
        if coeffs.len() != order + 1 {
            return Err(bad(&format!(
                "order {order} needs {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().all(IntPolynomial::is_zero) {
            return Ok(Self::zero(order));
        }
        Self::new(coeffs)
    }
}

impl fmt::Display for RecurrenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exchange())
    }
}

impl FromStr for RecurrenceOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_exchange(s)
    }
}
