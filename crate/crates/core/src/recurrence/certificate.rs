use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RecurrenceOperator;
use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::sequences::{ExplicitSequence, Sequence};

/// An operator identity
/// `P(n) Big_n + Qshift(n) Small_{n+1} - Qzero(n) Small_n = 0`
/// showing that `Small` follows from `Big` by induction on `n`.
///
/// Here `Big_n` is the third-order operator applied at `n` and `Small_n` the
/// second-order one; `Small_{n+1}` reads `u(n+1)..u(n+3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationCertificate {
    pub name: String,
    pub big: RecurrenceOperator,
    pub small: RecurrenceOperator,
    pub big_multiplier: IntPolynomial,
    pub shift_multiplier: IntPolynomial,
    pub base_multiplier: IntPolynomial,
}

/// What an executable induction established on one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionOutcome {
    /// The big operator vanished on `1..=last`.
    pub big_annihilates: bool,
    /// The small operator vanished at the base index 1.
    pub base_holds: bool,
    /// Largest `n` for which `Small_n = 0` follows from the recursion,
    /// `None` when a hypothesis failed.
    pub proven_through: Option<u64>,
    /// The inductively derived values matched direct evaluation everywhere.
    pub agrees_with_direct: bool,
}

impl CombinationCertificate {
    pub fn new(
        name: impl Into<String>,
        big: RecurrenceOperator,
        small: RecurrenceOperator,
        big_multiplier: IntPolynomial,
        shift_multiplier: IntPolynomial,
        base_multiplier: IntPolynomial,
    ) -> Result<Self> {
        if big.order() != small.order() + 1 {
            return Err(Error::OrderMismatch(format!(
                "big operator has order {}, small operator order {}; expected a difference of one",
                big.order(),
                small.order()
            )));
        }
        Ok(CombinationCertificate {
            name: name.into(),
            big,
            small,
            big_multiplier,
            shift_multiplier,
            base_multiplier,
        })
    }

    /// Coefficient polynomials of `u(n)..u(n+order)` in the combined operator.
    pub fn expand(&self) -> Vec<IntPolynomial> {
        let small = self.small.coeffs();
        (0..=self.big.order())
            .map(|j| {
                let mut acc = &self.big_multiplier * &self.big.coeffs()[j];
                if j >= 1 {
                    acc = &acc + &(&self.shift_multiplier * &small[j - 1].shift(1));
                }
                if j < small.len() {
                    acc = &acc - &(&self.base_multiplier * &small[j]);
                }
                acc
            })
            .collect()
    }

    pub fn holds_symbolically(&self) -> bool {
        self.expand().iter().all(IntPolynomial::is_zero)
    }

    /// The combined value at `n` for a concrete sequence.
    pub fn combine_at(&self, seq: &dyn Sequence, n: u64) -> Result<ExactRational> {
        let at = |p: &IntPolynomial| ExactRational::from(p.eval(&BigInt::from(n)));
        let big = self.big.apply(seq, n)?;
        let shifted = self.small.apply(seq, n + 1)?;
        let base = self.small.apply(seq, n)?;
        Ok(&(&(&at(&self.big_multiplier) * &big) + &(&at(&self.shift_multiplier) * &shifted))
            - &(&at(&self.base_multiplier) * &base))
    }

    /// Evaluates the combination on `samples` seeded random integer sequences
    /// at `n = 1..=10`.
    pub fn holds_numerically(&self, samples: usize, seed: u64) -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = 10 + self.big.order() + 2;
        for s in 0..samples {
            let values = (0..len)
                .map(|_| ExactRational::from(rng.gen_range(-1_000_000i64..=1_000_000)))
                .collect();
            let seq = ExplicitSequence::new(format!("random#{s}"), 0, values);
            for n in 1..=10 {
                if !self.combine_at(&seq, n)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Symbolic check, cross-validated on 20 random sequences. A disagreement
    /// between the two means the operators were transcribed inconsistently and
    /// is reported as an internal error.
    pub fn check(&self) -> Result<bool> {
        let symbolic = self.holds_symbolically();
        let numeric = self.holds_numerically(20, 0x5eed_0000 ^ self.name.len() as u64)?;
        if symbolic != numeric {
            return Err(Error::Internal(format!(
                "certificate `{}`: symbolic check {symbolic}, numeric check {numeric}",
                self.name
            )));
        }
        Ok(symbolic)
    }

    /// Runs the induction `Small_{n+1} = (Qzero(n) Small_n - P(n) Big_n) / Qshift(n)`
    /// from the base `Small_1` up to `Small_last`, comparing every derived
    /// value with direct evaluation.
    pub fn induct(&self, seq: &dyn Sequence, last: u64) -> Result<InductionOutcome> {
        let big_annihilates = self.big.annihilates(seq, 1, last)?;
        let first = self.small.apply(seq, 1)?;
        let base_holds = first.is_zero();
        let mut outcome = InductionOutcome {
            big_annihilates,
            base_holds,
            proven_through: None,
            agrees_with_direct: true,
        };
        let mut derived = first;
        for n in 1..last {
            let nb = BigInt::from(n);
            let q_shift = self.shift_multiplier.eval(&nb);
            if q_shift.is_zero() {
                return Err(Error::Internal(format!(
                    "certificate `{}`: shift multiplier vanishes at n = {n}",
                    self.name
                )));
            }
            let big = self.big.apply(seq, n)?;
            let num = &(&ExactRational::from(self.base_multiplier.eval(&nb)) * &derived)
                - &(&ExactRational::from(self.big_multiplier.eval(&nb)) * &big);
            derived = &num / &ExactRational::from(q_shift);
            if derived != self.small.apply(seq, n + 1)? {
                outcome.agrees_with_direct = false;
            }
        }
        if big_annihilates && base_holds && outcome.agrees_with_direct {
            outcome.proven_through = Some(last);
        }
        Ok(outcome)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::registry;
    use crate::sequences::{SequenceHandle, SequenceId};

    #[test]
    fn trivial_self_difference_certificate() {
        let small = RecurrenceOperator::from_polynomials(&["n+1", "-(2n+3)", "n^2"]).unwrap();
        let mut padded = small.coeffs().to_vec();
        padded.push(IntPolynomial::zero());
        // small padded with a zero top coefficient; `new` would reject it
        let big = RecurrenceOperator {
            coeffs: padded,
        };
        let cert = CombinationCertificate::new(
            "self",
            big,
            small,
            IntPolynomial::constant(1),
            IntPolynomial::zero(),
            IntPolynomial::constant(1),
        )
        .unwrap();
        assert!(cert.check().unwrap());
    }

    #[test]
    fn perturbed_certificate_fails_both_ways() {
        let mut cert = registry::certificate("u").unwrap().certificate;
        assert!(cert.check().unwrap());
        let mut coeffs = cert.big.coeffs().to_vec();
        coeffs[1] = &coeffs[1] + &IntPolynomial::constant(1);
        cert.big = RecurrenceOperator::new(coeffs).unwrap();
        assert!(!cert.holds_symbolically());
        assert!(!cert.check().unwrap());
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = registry::operator("u3").unwrap().operator;
        let err = CombinationCertificate::new(
            "bad",
            a.clone(),
            a,
            IntPolynomial::constant(1),
            IntPolynomial::constant(1),
            IntPolynomial::constant(1),
        );
        assert!(matches!(err, Err(Error::OrderMismatch(_))));
    }

    #[test]
    fn induction_on_registry_instances() {
        for entry in registry::certificates() {
            let handle = SequenceHandle::standalone(entry.induction_target.clone()).unwrap();
            let out = entry.certificate.induct(&handle, 60).unwrap();
            assert!(out.big_annihilates && out.base_holds, "{}", entry.certificate.name);
            assert_eq!(out.proven_through, Some(60), "{}", entry.certificate.name);
        }
    }

    #[test]
    fn induction_detects_missing_base_case() {
        // S is not annihilated by the big u-operator, so nothing is proven.
        let cert = registry::certificate("u").unwrap().certificate;
        let s = SequenceHandle::standalone(SequenceId::S).unwrap();
        let out = cert.induct(&s, 20).unwrap();
        assert_eq!(out.proven_through, None);
    }
}
