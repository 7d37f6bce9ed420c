//! Recurrence guessing: fit `sum_i c_i(n) u(n+i) = 0` with `deg c_i <= d`
//! to a window of terms, then confirm on a holdout block.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::RecurrenceOperator;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::IntPolynomial;
use crate::sequences::Sequence;

pub const DEFAULT_HOLDOUT: u64 = 20;

/// Ansatz shape and fitting window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitOptions {
    pub order: usize,
    pub degree: usize,
    pub first: u64,
    pub last: u64,
    /// Indices after the window that the fitted operator must also annihilate.
    pub holdout: u64,
    /// Shuffle the equations before elimination.
    pub row_shuffle_seed: Option<u64>,
}

impl FitOptions {
    pub fn new(order: usize, degree: usize, first: u64, last: u64) -> Self {
        FitOptions {
            order,
            degree,
            first,
            last,
            holdout: DEFAULT_HOLDOUT,
            row_shuffle_seed: None,
        }
    }

    pub fn with_holdout(mut self, holdout: u64) -> Self {
        self.holdout = holdout;
        self
    }

    pub fn with_row_shuffle(mut self, seed: u64) -> Self {
        self.row_shuffle_seed = Some(seed);
        self
    }

    pub fn unknowns(&self) -> u64 {
        ((self.order + 1) * (self.degree + 1)) as u64
    }

    /// Rows the window must supply: the unknowns plus five.
    pub fn required_rows(&self) -> u64 {
        self.unknowns() + 5
    }

    pub fn holdout_range(&self) -> (u64, u64) {
        (self.last + 1, self.last + self.holdout)
    }
}

/// Fits a recurrence to `seq` on the window, returning the normalized
/// operator or `None` when the nullspace is trivial or the holdout fails.
///
/// The returned operator comes from the first free column of the
/// echelonized system with unknowns ordered by shift and then by degree,
/// so it has the lowest order the ansatz admits. Its top coefficients may
/// vanish, in which case the operator is returned at that lower order.
pub fn fit_recurrence(seq: &dyn Sequence, opts: &FitOptions) -> Result<Option<RecurrenceOperator>> {
    if opts.order == 0 {
        return Err(Error::UnsupportedParameter("fit order must be at least 1".into()));
    }
    let rows_available = (opts.last + 1).saturating_sub(opts.first);
    if opts.last < opts.first || rows_available < opts.required_rows() {
        return Err(Error::WindowTooSmall {
            rows: rows_available,
            required: opts.required_rows(),
        });
    }
    let width = opts.degree + 1;
    let mut rows = Vec::with_capacity(rows_available as usize);
    for n in opts.first..=opts.last {
        let terms = (0..=opts.order)
            .map(|i| seq.term(n + i as u64))
            .collect::<Result<Vec<_>>>()?;
        let scale = terms.iter().fold(BigInt::one(), |l, t| l.lcm(t.denom()));
        let mut row = Vec::with_capacity(opts.unknowns() as usize);
        for t in &terms {
            let scaled = t.numer() * (&scale / t.denom());
            let mut power = BigInt::one();
            for _ in 0..width {
                row.push(&scaled * &power);
                power *= n;
            }
        }
        rows.push(row);
    }
    if let Some(seed) = opts.row_shuffle_seed {
        rows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let basis = linalg::nullspace(&rows, opts.unknowns() as usize)?;
    let Some(vector) = basis.into_iter().next() else {
        return Ok(None);
    };
    let mut coeffs: Vec<IntPolynomial> = vector
        .chunks(width)
        .map(|c| IntPolynomial::new(c.to_vec()))
        .collect();
    while coeffs.last().is_some_and(IntPolynomial::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Ok(None);
    }
    let op = RecurrenceOperator::new(coeffs)?.normalized();
    let (lo, hi) = opts.holdout_range();
    if opts.holdout > 0 && !op.annihilates(seq, lo, hi)? {
        return Ok(None);
    }
    if !op.annihilates(seq, opts.first, opts.last)? {
        return Err(Error::Internal("fitted operator fails on its own window".into()));
    }
    Ok(Some(op))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ExactRational;
    use crate::sequences::{ExplicitSequence, SequenceHandle, SequenceId};
    use proptest::prelude::*;

    #[test]
    fn constant_sequence_gives_forward_difference() {
        let five = SequenceHandle::standalone(SequenceId::Constant(5)).unwrap();
        let op = fit_recurrence(&five, &FitOptions::new(1, 0, 0, 20)).unwrap().unwrap();
        assert_eq!(op, RecurrenceOperator::from_polynomials(&["-1", "1"]).unwrap());
    }

    #[test]
    fn s_order_three_fits_and_extends() {
        let s = SequenceHandle::standalone(SequenceId::S).unwrap();
        let op = fit_recurrence(&s, &FitOptions::new(3, 4, 1, 60)).unwrap().unwrap();
        assert!(op.order() <= 3);
        assert!(op.verify_annihilates(&s, 61, 120).passed());
    }

    #[test]
    fn s_has_no_first_order_recurrence() {
        let s = SequenceHandle::standalone(SequenceId::S).unwrap();
        assert_eq!(fit_recurrence(&s, &FitOptions::new(1, 2, 1, 40)).unwrap(), None);
    }

    #[test]
    fn window_too_small() {
        let s = SequenceHandle::standalone(SequenceId::S).unwrap();
        assert_eq!(
            fit_recurrence(&s, &FitOptions::new(3, 4, 1, 20)),
            Err(Error::WindowTooSmall { rows: 20, required: 25 })
        );
    }

    #[test]
    fn holdout_rejects_spurious_fit() {
        // 1, 2, 4, ... doubling inside the window, then broken afterwards
        let mut values: Vec<ExactRational> = (0..30).map(|i| ExactRational::from(1i64 << i)).collect();
        values.extend((0..25).map(|_| ExactRational::from(7)));
        let seq = ExplicitSequence::new("broken", 0, values);
        let opts = FitOptions::new(1, 0, 0, 20).with_holdout(20);
        assert_eq!(fit_recurrence(&seq, &opts).unwrap(), None);
        let op = fit_recurrence(&seq, &opts.clone().with_holdout(5)).unwrap().unwrap();
        assert_eq!(op, RecurrenceOperator::from_polynomials(&["-2", "1"]).unwrap());
    }

    #[test]
    fn row_order_does_not_change_the_result() {
        let s = SequenceHandle::standalone(SequenceId::LowerS).unwrap();
        let base = fit_recurrence(&s, &FitOptions::new(2, 3, 1, 40)).unwrap().unwrap();
        for seed in 0..3 {
            let shuffled = fit_recurrence(&s, &FitOptions::new(2, 3, 1, 40).with_row_shuffle(seed))
                .unwrap()
                .unwrap();
            assert_eq!(shuffled, base);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn fitted_operators_always_pass_their_holdout(
            first in 0u64..20,
            extra in 0u64..15,
            order in 1usize..3,
            degree in 0usize..3,
        ) {
            let s = SequenceHandle::standalone(SequenceId::SPlus).unwrap();
            let rows = ((order + 1) * (degree + 1)) as u64 + 5 + extra;
            let opts = FitOptions::new(order, degree, first, first + rows - 1);
            if let Some(op) = fit_recurrence(&s, &opts).unwrap() {
                let (lo, hi) = opts.holdout_range();
                prop_assert!(op.annihilates(&s, lo, hi).unwrap());
            }
        }
    }
}
