//! Minimal multipliers making prefix sums of the `S_r` family divisible by `n^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::report::{ClaimKind, Failure, FailureReason, ReportBuilder, VerificationReport};
use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::sequences::{SequenceBank, SequenceId, MAX_FAMILY_EXPONENT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultiplierFamily {
    /// `sum_{k<n} S_r(2r-1)(k)`, multiplier `a_{2r-1}`.
    OddPower,
    /// `sum_{k<n} k S_r(r)(k)`, multiplier `b_r`.
    Weighted,
}

impl MultiplierFamily {
    pub fn exponent(self, r: u32) -> Result<u32> {
        let e = match self {
            MultiplierFamily::OddPower => (2 * r).checked_sub(1),
            MultiplierFamily::Weighted => Some(r),
        };
        match e {
            Some(e) if r >= 1 && e <= MAX_FAMILY_EXPONENT => Ok(e),
            _ => Err(Error::UnsupportedParameter(format!(
                "multiplier index r = {r} is outside the supported range for {self:?}"
            ))),
        }
    }

    /// The table name of the multiplier, `a3` or `b2`.
    pub fn name(self, r: u32) -> String {
        match self {
            MultiplierFamily::OddPower => format!("a{}", 2 * r - 1),
            MultiplierFamily::Weighted => format!("b{r}"),
        }
    }

    fn sum_id(self, r: u32) -> Result<SequenceId> {
        let inner = SequenceId::SPow(self.exponent(r)?);
        Ok(match self {
            MultiplierFamily::OddPower => SequenceId::prefix(inner),
            MultiplierFamily::Weighted => SequenceId::weighted_prefix(inner),
        })
    }
}

/// Conjectured values `(r, a_{2r-1})`.
pub const CONJECTURED_A: &[(u32, u64)] = &[(2, 3), (3, 15), (4, 21), (5, 15), (6, 33), (7, 1365), (8, 3)];

/// Conjectured values `(r, b_r)`.
pub const CONJECTURED_B: &[(u32, u64)] = &[
    (2, 12),
    (3, 4),
    (4, 60),
    (5, 20),
    (6, 84),
    (7, 28),
    (8, 60),
    (9, 20),
    (10, 132),
    (11, 44),
    (12, 5460),
];

/// Least positive `m` with `n^2 | m * sum(n)` for every `1 <= n <= n_max`,
/// i.e. the lcm of `n^2 / gcd(sum(n), n^2)`.
pub fn minimal_multiplier(bank: &SequenceBank, family: MultiplierFamily, r: u32, n_max: u64) -> Result<BigInt> {
    let id = family.sum_id(r)?;
    if n_max < 1 {
        return Err(Error::UnsupportedParameter("n_max must be at least 1".into()));
    }
    bank.prefill(&id, n_max)?;
    let mut m = BigInt::one();
    for n in 1..=n_max {
        let value = bank.eval(&id, n)?;
        let value = value.to_integer().ok_or_else(|| Error::NonIntegral {
            sequence: id.to_string(),
            index: n,
            value: value.to_string(),
        })?;
        let sq = BigInt::from(n) * n;
        m = m.lcm(&(&sq / value.gcd(&sq)));
    }
    Ok(m)
}

/// Runs the explorer for one table entry. Divisibility of the conjectured
/// value by the observed minimum is asserted; inequality is only a note.
pub fn multiplier_report(
    bank: &SequenceBank,
    family: MultiplierFamily,
    r: u32,
    conjectured: u64,
    n_max: u64,
    timings: bool,
) -> Result<VerificationReport> {
    let name = family.name(r);
    let exponent = family.exponent(r)?;
    let statement = match family {
        MultiplierFamily::OddPower => {
            format!("{name} * sum_{{k<n}} S_k^({exponent}) = 0 (mod n^2) with {name} = {conjectured}")
        }
        MultiplierFamily::Weighted => {
            format!("{name} * sum_{{k<n}} k S_k^({exponent}) = 0 (mod n^2) with {name} = {conjectured}")
        }
    };
    let mut b = ReportBuilder::new(format!("multiplier-{name}"), ClaimKind::Conjecture, statement).range(1, n_max);
    let observed = minimal_multiplier(bank, family, r, n_max)?;
    let conj = BigInt::from(conjectured);
    let equal = observed == conj;
    b.detail("observed", &observed);
    b.detail("conjectured", conjectured);
    b.detail("equal", equal);
    if conj.is_multiple_of(&observed) {
        b.pass();
        if !equal {
            b.note(
                None,
                format!("observed minimum {observed} is a proper divisor of {conjectured} for n <= {n_max}"),
            );
        }
    } else {
        b.fail(Failure {
            index: n_max,
            reason: FailureReason::Mismatch,
            lhs: Some(ExactRational::from(observed.clone())),
            rhs: Some(ExactRational::from(conj)),
            residue: Some((BigInt::from(conjectured) % &observed).to_string()),
            message: Some(format!("{conjectured} is not a multiple of the observed minimum {observed}")),
        });
    }
    Ok(b.finish(timings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_divides_four() {
        let bank = SequenceBank::new();
        let m = minimal_multiplier(&bank, MultiplierFamily::Weighted, 1, 200).unwrap();
        assert!(BigInt::from(4).is_multiple_of(&m));
    }

    #[test]
    fn a1_is_one() {
        let bank = SequenceBank::new();
        assert_eq!(minimal_multiplier(&bank, MultiplierFamily::OddPower, 1, 100).unwrap(), BigInt::one());
    }

    #[test]
    fn small_table_values() {
        let bank = SequenceBank::new();
        assert_eq!(minimal_multiplier(&bank, MultiplierFamily::OddPower, 2, 200).unwrap(), BigInt::from(3));
        assert_eq!(minimal_multiplier(&bank, MultiplierFamily::Weighted, 2, 200).unwrap(), BigInt::from(12));
    }

    #[test]
    fn monotone_in_bound() {
        let bank = SequenceBank::new();
        let mut prev = BigInt::one();
        for n_max in [2, 5, 10, 20, 40, 80] {
            let m = minimal_multiplier(&bank, MultiplierFamily::Weighted, 4, n_max).unwrap();
            assert!(m.is_multiple_of(&prev));
            assert!(BigInt::from(60).is_multiple_of(&m));
            prev = m;
        }
    }

    #[test]
    fn unsupported_r() {
        let bank = SequenceBank::new();
        assert!(minimal_multiplier(&bank, MultiplierFamily::OddPower, 0, 10).is_err());
        assert!(minimal_multiplier(&bank, MultiplierFamily::OddPower, 9, 10).is_err());
        assert!(minimal_multiplier(&bank, MultiplierFamily::Weighted, 17, 10).is_err());
    }

    #[test]
    fn proper_divisor_is_a_note_not_a_failure() {
        let bank = SequenceBank::new();
        let r = multiplier_report(&bank, MultiplierFamily::OddPower, 2, 6, 50, false).unwrap();
        assert!(r.passed());
        assert_eq!(r.details["equal"], "false");
        assert_eq!(r.notes.len(), 1);
        let bad = multiplier_report(&bank, MultiplierFamily::OddPower, 2, 1, 50, false).unwrap();
        assert!(!bad.passed());
    }
}
