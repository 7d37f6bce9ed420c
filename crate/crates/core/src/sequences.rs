//! Memoized exact generators for the double-sum sequences, their auxiliary
//! right-hand sums, difference sequences and prefix sums.
//!
//! Every value is computed by direct term-by-term summation of its defining
//! sum. Terms carrying `1/(2k-1)` or `1/(k+1)` factors are formed as exact
//! rationals and summed; integrality is then asserted where the sequence is
//! known to be integer valued.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{odd_power, BinomialTable, ExactRational};
use crate::error::{Error, Result};

/// Largest exponent accepted by the `S_r` / `T_r` families.
pub const MAX_FAMILY_EXPONENT: u32 = 16;

/// Names every sequence the bank can generate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceId {
    /// `sum_k C(n,k)^2 C(2k,k) (2k+1)`
    S,
    /// `sum_k C(n,k)^2 C(2k,k) / (2k-1)`
    LowerS,
    /// `sum_k C(n,k)^2 C(2k,k) (2k+1)^2`
    SPlus,
    /// `sum_k C(n+k,2k) C(2k,k) / (2k-1)`
    R,
    /// `sum_k C(n,k)^2 C(2k,k) (2k+1)^r`
    SPow(u32),
    /// `sum_k C(n,k)^2 C(2k,k) (2k+1)^r (-1)^k`
    TPow(u32),
    /// `sum_k Cat(k) (6k C(n,k)^2 + C(n,k) C(n,k+1))`
    F,
    /// `sum_k Cat(k) (2 C(n,k) C(n,k+1) - C(n,k)^2)`
    G,
    /// `HSum(n) / (4n+3)`
    H,
    /// `sum_k C(n,k)^2 C(2k+1,k) 3 / (4k^2-1)`
    HSum,
    /// `sum_k (C(2k+1,k) C(n,k)^2 + Cat(k) C(n,k) C(n,k+1))`
    E,
    /// `sum_k C(n,k)^2 Cat(k)`
    CatalanSquares,
    /// `4n S(n)`
    U,
    /// `(n+1)^2 F(n) - n^2 F(n-1)`
    V,
    /// `(n+1)^2 G(n) - n^2 G(n-1)`
    W,
    /// `(n+1)^2 H(n) - n^2 H(n-1)`
    X,
    /// `(n+1)^2 E(n) - n^2 E(n-1)`
    Y,
    /// `sum_{k<n} inner(k)`
    PrefixSum(Box<SequenceId>),
    /// `sum_{k<n} k inner(k)`
    WeightedPrefixSum(Box<SequenceId>),
    Constant(i64),
}

impl SequenceId {
    pub fn prefix(inner: SequenceId) -> Self {
        SequenceId::PrefixSum(Box::new(inner))
    }

    pub fn weighted_prefix(inner: SequenceId) -> Self {
        SequenceId::WeightedPrefixSum(Box::new(inner))
    }

    /// First index at which the sequence is defined.
    pub fn first_index(&self) -> u64 {
        match self {
            SequenceId::V | SequenceId::W | SequenceId::X | SequenceId::Y => 1,
            _ => 0,
        }
    }

    pub fn integer_valued(&self) -> bool {
        match self {
            SequenceId::H | SequenceId::X => false,
            SequenceId::PrefixSum(inner) | SequenceId::WeightedPrefixSum(inner) => {
                inner.integer_valued()
            }
            _ => true,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SequenceId::SPow(r) | SequenceId::TPow(r) if *r > MAX_FAMILY_EXPONENT => {
                Err(Error::UnsupportedParameter(format!(
                    "exponent {r} exceeds {MAX_FAMILY_EXPONENT}"
                )))
            }
            SequenceId::PrefixSum(inner) | SequenceId::WeightedPrefixSum(inner) => {
                if inner.first_index() > 0 {
                    return Err(Error::UnsupportedParameter(format!(
                        "prefix sums need a sequence defined from 0, `{inner}` starts at {}",
                        inner.first_index()
                    )));
                }
                inner.validate()
            }
            _ => Ok(()),
        }
    }

    /// Sequences whose values this one reads, other than itself.
    fn dependencies(&self) -> Vec<SequenceId> {
        match self {
            SequenceId::U => vec![SequenceId::S],
            SequenceId::V => vec![SequenceId::F],
            SequenceId::W => vec![SequenceId::G],
            SequenceId::X => vec![SequenceId::H],
            SequenceId::Y => vec![SequenceId::E],
            SequenceId::H => vec![SequenceId::HSum],
            SequenceId::PrefixSum(inner) | SequenceId::WeightedPrefixSum(inner) => {
                vec![(**inner).clone()]
            }
            _ => vec![],
        }
    }

    fn is_running_sum(&self) -> bool {
        matches!(self, SequenceId::PrefixSum(_) | SequenceId::WeightedPrefixSum(_))
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::S => f.write_str("S"),
            SequenceId::LowerS => f.write_str("s"),
            SequenceId::SPlus => f.write_str("S_plus"),
            SequenceId::R => f.write_str("R"),
            SequenceId::SPow(r) => write!(f, "S_r({r})"),
            SequenceId::TPow(r) => write!(f, "T_r({r})"),
            SequenceId::F => f.write_str("f"),
            SequenceId::G => f.write_str("g"),
            SequenceId::H => f.write_str("h"),
            SequenceId::HSum => f.write_str("hsum"),
            SequenceId::E => f.write_str("e"),
            SequenceId::CatalanSquares => f.write_str("catalan_sq"),
            SequenceId::U => f.write_str("u"),
            SequenceId::V => f.write_str("v"),
            SequenceId::W => f.write_str("w"),
            SequenceId::X => f.write_str("x"),
            SequenceId::Y => f.write_str("y"),
            SequenceId::PrefixSum(inner) => write!(f, "prefix({inner})"),
            SequenceId::WeightedPrefixSum(inner) => write!(f, "wprefix({inner})"),
            SequenceId::Constant(c) => write!(f, "constant:{c}"),
        }
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownSequence(s.to_string());
        let wrapped = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|rest| rest.strip_suffix(')'))
        };
        let id = match s {
            "S" => SequenceId::S,
            "s" => SequenceId::LowerS,
            "S_plus" | "S+" => SequenceId::SPlus,
            "R" => SequenceId::R,
            "f" => SequenceId::F,
            "g" => SequenceId::G,
            "h" => SequenceId::H,
            "hsum" => SequenceId::HSum,
            "e" => SequenceId::E,
            "catalan_sq" => SequenceId::CatalanSquares,
            "u" => SequenceId::U,
            "v" => SequenceId::V,
            "w" => SequenceId::W,
            "x" => SequenceId::X,
            "y" => SequenceId::Y,
            _ => {
                if let Some(r) = wrapped("S_r(") {
                    SequenceId::SPow(r.trim().parse().map_err(|_| unknown())?)
                } else if let Some(r) = wrapped("T_r(") {
                    SequenceId::TPow(r.trim().parse().map_err(|_| unknown())?)
                } else if let Some(inner) = wrapped("prefix(") {
                    SequenceId::prefix(inner.parse()?)
                } else if let Some(inner) = wrapped("wprefix(") {
                    SequenceId::weighted_prefix(inner.parse()?)
                } else if let Some(c) = s.strip_prefix("constant:") {
                    SequenceId::Constant(c.trim().parse().map_err(|_| unknown())?)
                } else {
                    return Err(unknown());
                }
            }
        };
        id.validate()?;
        Ok(id)
    }
}

/// Anything that can be read term by term.
pub trait Sequence: Send + Sync {
    fn term(&self, n: u64) -> Result<ExactRational>;

    fn label(&self) -> String;
}

/// A finite table of values starting at `offset`.
#[derive(Debug, Clone)]
pub struct ExplicitSequence {
    label: String,
    offset: u64,
    values: Vec<ExactRational>,
}

impl ExplicitSequence {
    pub fn new(label: impl Into<String>, offset: u64, values: Vec<ExactRational>) -> Self {
        ExplicitSequence {
            label: label.into(),
            offset,
            values,
        }
    }
}

impl Sequence for ExplicitSequence {
    fn term(&self, n: u64) -> Result<ExactRational> {
        n.checked_sub(self.offset)
            .and_then(|i| self.values.get(i as usize))
            .cloned()
            .ok_or_else(|| Error::IndexOutOfDomain {
                sequence: self.label.clone(),
                index: n,
            })
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

#[derive(Default)]
struct Memo {
    values: RwLock<Vec<Option<ExactRational>>>,
}

impl Memo {
    fn get(&self, n: u64) -> Option<ExactRational> {
        self.values.read().unwrap().get(n as usize).cloned().flatten()
    }

    fn insert(&self, n: u64, value: ExactRational) {
        let mut values = self.values.write().unwrap();
        let idx = n as usize;
        if values.len() <= idx {
            values.resize(idx + 1, None);
        }
        values[idx].get_or_insert(value);
    }

    /// Largest cached index `<= n`.
    fn last_known_at_or_below(&self, n: u64) -> Option<u64> {
        let values = self.values.read().unwrap();
        let top = (n as usize).min(values.len().checked_sub(1)?);
        (0..=top).rev().find(|&i| values[i].is_some()).map(|i| i as u64)
    }

    fn missing(&self, lo: u64, hi: u64) -> Vec<u64> {
        let values = self.values.read().unwrap();
        (lo..=hi)
            .filter(|&i| values.get(i as usize).is_none_or(|v| v.is_none()))
            .collect()
    }
}

/// Shared memo tables for every [`SequenceId`].
///
/// Values are computed outside any lock and published once; concurrent
/// evaluation of the same index computes identical values, so whichever
/// insert lands first wins.
pub struct SequenceBank {
    table: &'static BinomialTable,
    memos: RwLock<HashMap<SequenceId, Arc<Memo>>>,
}

impl Default for SequenceBank {
    fn default() -> Self {
        Self::new()
    }
}

impl SequenceBank {
    pub fn new() -> Self {
        SequenceBank {
            table: BinomialTable::global(),
            memos: RwLock::new(HashMap::new()),
        }
    }

    pub fn shared() -> Arc<Self> {
        Arc::new(Self::new())
    }

    pub fn binomials(&self) -> &BinomialTable {
        self.table
    }

    fn memo(&self, id: &SequenceId) -> Arc<Memo> {
        if let Some(m) = self.memos.read().unwrap().get(id) {
            return Arc::clone(m);
        }
        let mut memos = self.memos.write().unwrap();
        Arc::clone(memos.entry(id.clone()).or_default())
    }

    /// Exact value of `id` at `n`.
    pub fn eval(&self, id: &SequenceId, n: u64) -> Result<ExactRational> {
        id.validate()?;
        if n < id.first_index() {
            return Err(Error::IndexOutOfDomain {
                sequence: id.to_string(),
                index: n,
            });
        }
        let memo = self.memo(id);
        if let Some(v) = memo.get(n) {
            return Ok(v);
        }
        if id.is_running_sum() {
            return self.extend_running_sum(id, &memo, n);
        }
        let value = self.compute(id, n)?;
        memo.insert(n, value.clone());
        Ok(value)
    }

    /// `sum_{k<n} id(k)`.
    pub fn prefix_sum(&self, id: &SequenceId, n: u64) -> Result<ExactRational> {
        self.eval(&SequenceId::prefix(id.clone()), n)
    }

    /// `sum_{k<n} k id(k)`.
    pub fn weighted_prefix_sum(&self, id: &SequenceId, n: u64) -> Result<ExactRational> {
        self.eval(&SequenceId::weighted_prefix(id.clone()), n)
    }

    /// Fills the memo for `id` on `0..=n_max` in parallel.
    pub fn prefill(&self, id: &SequenceId, n_max: u64) -> Result<()> {
        id.validate()?;
        for dep in id.dependencies() {
            let dep_max = if id.is_running_sum() { n_max.saturating_sub(1) } else { n_max };
            self.prefill(&dep, dep_max)?;
        }
        if id.is_running_sum() {
            self.eval(id, n_max)?;
            return Ok(());
        }
        let memo = self.memo(id);
        let missing = memo.missing(id.first_index(), n_max);
        let computed: Vec<(u64, ExactRational)> = missing
            .into_par_iter()
            .map(|n| self.compute(id, n).map(|v| (n, v)))
            .collect::<Result<_>>()?;
        for (n, v) in computed {
            memo.insert(n, v);
        }
        Ok(())
    }

    fn extend_running_sum(&self, id: &SequenceId, memo: &Memo, n: u64) -> Result<ExactRational> {
        let (inner, weighted) = match id {
            SequenceId::PrefixSum(inner) => (inner.as_ref(), false),
            SequenceId::WeightedPrefixSum(inner) => (inner.as_ref(), true),
            _ => unreachable!("not a running sum"),
        };
        let (mut i, mut acc) = match memo.last_known_at_or_below(n) {
            Some(i) => (i, memo.get(i).expect("published entry")),
            None => (0, ExactRational::zero()),
        };
        if i == 0 {
            memo.insert(0, ExactRational::zero());
        }
        while i < n {
            let term = self.eval(inner, i)?;
            if weighted {
                acc += &(&term * &ExactRational::from(i));
            } else {
                acc += &term;
            }
            i += 1;
            memo.insert(i, acc.clone());
        }
        Ok(acc)
    }

    fn compute(&self, id: &SequenceId, n: u64) -> Result<ExactRational> {
        let value = match id {
            SequenceId::S => self.weighted_square_sum(n, |k| odd_power(k, 1)),
            SequenceId::SPlus => self.weighted_square_sum(n, |k| odd_power(k, 2)),
            SequenceId::SPow(r) => self.weighted_square_sum(n, |k| odd_power(k, *r)),
            SequenceId::TPow(r) => self.weighted_square_sum(n, |k| {
                let p = odd_power(k, *r);
                if k % 2 == 0 { p } else { -p }
            }),
            SequenceId::LowerS => self.lower_s(n),
            SequenceId::R => self.r_sum(n),
            SequenceId::F => self.f_sum(n),
            SequenceId::G => self.g_sum(n),
            SequenceId::HSum => self.h_inner_sum(n),
            SequenceId::H => {
                let inner = self.eval(&SequenceId::HSum, n)?;
                let h = &inner * &ExactRational::new(1, 4 * n + 3);
                if !BigInt::from(4 * n + 3).is_multiple_of(h.denom()) {
                    return Err(Error::Internal(format!(
                        "h({n}) = {h} has denominator not dividing 4n+3"
                    )));
                }
                h
            }
            SequenceId::E => self.e_sum(n),
            SequenceId::CatalanSquares => self.catalan_square_sum(n),
            SequenceId::U => {
                &ExactRational::from(4 * n) * &self.eval(&SequenceId::S, n)?
            }
            SequenceId::V => self.step_difference(&SequenceId::F, n)?,
            SequenceId::W => self.step_difference(&SequenceId::G, n)?,
            SequenceId::X => self.step_difference(&SequenceId::H, n)?,
            SequenceId::Y => self.step_difference(&SequenceId::E, n)?,
            SequenceId::Constant(c) => ExactRational::from(*c),
            SequenceId::PrefixSum(_) | SequenceId::WeightedPrefixSum(_) => {
                unreachable!("running sums are extended incrementally")
            }
        };
        if id.integer_valued() && !value.is_integer() {
            return Err(Error::NonIntegral {
                sequence: id.to_string(),
                index: n,
                value: value.to_string(),
            });
        }
        Ok(value)
    }

    fn catalan_term(&self, k: u64) -> ExactRational {
        ExactRational::new(self.table.central(k), k + 1)
    }

    /// `sum_k C(n,k)^2 C(2k,k) weight(k)` for an integer weight.
    fn weighted_square_sum(&self, n: u64, weight: impl Fn(u64) -> BigInt) -> ExactRational {
        let row = self.table.row(n);
        let mut acc = BigInt::zero();
        for (k, c) in row.iter().enumerate() {
            let k = k as u64;
            acc += c * c * self.table.central(k) * weight(k);
        }
        ExactRational::from(acc)
    }

    fn lower_s(&self, n: u64) -> ExactRational {
        let row = self.table.row(n);
        row.iter()
            .enumerate()
            .map(|(k, c)| {
                let k = k as i64;
                ExactRational::new(c * c * self.table.central(k as u64), 2 * k - 1)
            })
            .sum()
    }

    fn r_sum(&self, n: u64) -> ExactRational {
        (0..=n as i64)
            .map(|k| {
                let b = self.table.get(n as i64 + k, 2 * k);
                ExactRational::new(b * self.table.central(k as u64), 2 * k - 1)
            })
            .sum()
    }

    fn f_sum(&self, n: u64) -> ExactRational {
        let row = self.table.row(n);
        let next = |k: usize| row.get(k + 1).cloned().unwrap_or_default();
        row.iter()
            .enumerate()
            .map(|(k, c)| {
                let inner = BigInt::from(6 * k) * c * c + c * next(k);
                &self.catalan_term(k as u64) * &ExactRational::from(inner)
            })
            .sum()
    }

    fn g_sum(&self, n: u64) -> ExactRational {
        let row = self.table.row(n);
        let next = |k: usize| row.get(k + 1).cloned().unwrap_or_default();
        row.iter()
            .enumerate()
            .map(|(k, c)| {
                let inner = BigInt::from(2) * c * next(k) - c * c;
                &self.catalan_term(k as u64) * &ExactRational::from(inner)
            })
            .sum()
    }

    /// The integer summand `C(2k+1,k) * 3 / (4k^2-1)`.
    pub fn h_summand(&self, k: u64) -> ExactRational {
        let k2 = k as i64;
        let b = self.table.get(2 * k2 + 1, k2);
        ExactRational::new(b * 3, 4 * k2 * k2 - 1)
    }

    fn h_inner_sum(&self, n: u64) -> ExactRational {
        let row = self.table.row(n);
        row.iter()
            .enumerate()
            .map(|(k, c)| &ExactRational::from(c * c) * &self.h_summand(k as u64))
            .sum()
    }

    fn e_sum(&self, n: u64) -> ExactRational {
        let row = self.table.row(n);
        let next = |k: usize| row.get(k + 1).cloned().unwrap_or_default();
        row.iter()
            .enumerate()
            .map(|(k, c)| {
                let k64 = k as i64;
                let first = ExactRational::from(self.table.get(2 * k64 + 1, k64) * c * c);
                let second =
                    &self.catalan_term(k as u64) * &ExactRational::from(c * next(k));
                &first + &second
            })
            .sum()
    }

    fn catalan_square_sum(&self, n: u64) -> ExactRational {
        let row = self.table.row(n);
        row.iter()
            .enumerate()
            .map(|(k, c)| &self.catalan_term(k as u64) * &ExactRational::from(c * c))
            .sum()
    }

    /// `(n+1)^2 a(n) - n^2 a(n-1)`.
    fn step_difference(&self, aux: &SequenceId, n: u64) -> Result<ExactRational> {
        let cur = self.eval(aux, n)?;
        let prev = self.eval(aux, n - 1)?;
        let a = ExactRational::from((n + 1) * (n + 1));
        let b = ExactRational::from(n * n);
        Ok(&(&a * &cur) - &(&b * &prev))
    }

    pub fn handle(self: &Arc<Self>, id: SequenceId) -> Result<SequenceHandle> {
        id.validate()?;
        Ok(SequenceHandle {
            id,
            bank: Arc::clone(self),
        })
    }
}

/// A named view onto one sequence of a shared [`SequenceBank`].
#[derive(Clone)]
pub struct SequenceHandle {
    id: SequenceId,
    bank: Arc<SequenceBank>,
}

impl SequenceHandle {
    /// Handle on a fresh private bank.
    pub fn standalone(id: SequenceId) -> Result<Self> {
        SequenceBank::shared().handle(id)
    }

    pub fn id(&self) -> &SequenceId {
        &self.id
    }

    pub fn bank(&self) -> &Arc<SequenceBank> {
        &self.bank
    }

    pub fn eval(&self, n: u64) -> Result<ExactRational> {
        self.bank.eval(&self.id, n)
    }

    pub fn prefix_sum(&self, n: u64) -> Result<ExactRational> {
        self.bank.prefix_sum(&self.id, n)
    }

    pub fn weighted_prefix_sum(&self, n: u64) -> Result<ExactRational> {
        self.bank.weighted_prefix_sum(&self.id, n)
    }

    pub fn prefill(&self, n_max: u64) -> Result<()> {
        self.bank.prefill(&self.id, n_max)
    }
}

impl fmt::Debug for SequenceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SequenceHandle({})", self.id)
    }
}

impl Sequence for SequenceHandle {
    fn term(&self, n: u64) -> Result<ExactRational> {
        self.eval(n)
    }

    fn label(&self) -> String {
        self.id.to_string()
    }
}

/// One line of the sequence dump format: `id, n, value`.
pub fn dump_line(id: &SequenceId, n: u64, value: &ExactRational) -> String {
    format!("{id}, {n}, {value}")
}

pub fn parse_dump_line(line: &str) -> Result<(SequenceId, u64, ExactRational)> {
    let mut parts = line.rsplitn(3, ',');
    let bad = || Error::Parse(format!("malformed dump line `{line}`"));
    let value = parts.next().ok_or_else(bad)?.trim().parse()?;
    let n = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let id = parts.next().ok_or_else(bad)?.parse()?;
    Ok((id, n, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent evaluation: machine integers for the binomials and a
    /// hand-rolled fraction sum, no memo and no shared table.
    mod oracle {
        pub fn binom(n: i128, k: i128) -> i128 {
            if k < 0 || n < 0 || k > n {
                return 0;
            }
            let mut acc = 1i128;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        }

        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 { a.abs() } else { gcd(b, a % b) }
        }

        /// Sum of fractions `(num, den)` reduced to lowest terms.
        pub fn frac_sum(terms: impl IntoIterator<Item = (i128, i128)>) -> (i128, i128) {
            let (mut n, mut d) = (0i128, 1i128);
            for (a, b) in terms {
                n = n * b + a * d;
                d *= b;
                let g = gcd(n, d).max(1);
                n /= g;
                d /= g;
                if d < 0 {
                    n = -n;
                    d = -d;
                }
            }
            (n, d)
        }

        pub fn s_pow(n: i128, r: u32, alt: bool) -> i128 {
            (0..=n)
                .map(|k| {
                    let sign = if alt && k % 2 == 1 { -1 } else { 1 };
                    sign * binom(n, k).pow(2) * binom(2 * k, k) * (2 * k + 1).pow(r)
                })
                .sum()
        }

        pub fn lower_s(n: i128) -> (i128, i128) {
            frac_sum((0..=n).map(|k| (binom(n, k).pow(2) * binom(2 * k, k), 2 * k - 1)))
        }

        pub fn r(n: i128) -> (i128, i128) {
            frac_sum((0..=n).map(|k| (binom(n + k, 2 * k) * binom(2 * k, k), 2 * k - 1)))
        }

        pub fn f(n: i128) -> (i128, i128) {
            frac_sum((0..=n).map(|k| {
                let c = binom(n, k);
                (binom(2 * k, k) * (6 * k * c * c + c * binom(n, k + 1)), k + 1)
            }))
        }

        pub fn g(n: i128) -> (i128, i128) {
            frac_sum((0..=n).map(|k| {
                let c = binom(n, k);
                (binom(2 * k, k) * (2 * c * binom(n, k + 1) - c * c), k + 1)
            }))
        }

        pub fn h(n: i128) -> (i128, i128) {
            let (a, b) = frac_sum(
                (0..=n).map(|k| (binom(n, k).pow(2) * binom(2 * k + 1, k) * 3, 4 * k * k - 1)),
            );
            frac_sum([(a, b * (4 * n + 3))])
        }

        pub fn e(n: i128) -> (i128, i128) {
            frac_sum((0..=n).flat_map(|k| {
                let c = binom(n, k);
                [
                    (binom(2 * k + 1, k) * c * c, 1),
                    (binom(2 * k, k) * c * binom(n, k + 1), k + 1),
                ]
            }))
        }
    }

    fn q(n: i128, d: i128) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn int(n: i64) -> ExactRational {
        ExactRational::from(n)
    }

    #[test]
    fn spec_examples() {
        let bank = SequenceBank::new();
        assert_eq!(bank.eval(&SequenceId::S, 0).unwrap(), int(1));
        assert_eq!(bank.eval(&SequenceId::LowerS, 0).unwrap(), int(-1));
        assert_eq!(bank.eval(&SequenceId::S, 1).unwrap(), int(oracle::s_pow(1, 1, false) as i64));
        assert_eq!(bank.eval(&SequenceId::S, 1).unwrap(), int(7));
        assert_eq!(bank.eval(&SequenceId::S, 2).unwrap(), int(55));
        assert_eq!(bank.eval(&SequenceId::SPlus, 1).unwrap(), int(19));
        assert_eq!(bank.eval(&SequenceId::R, 1).unwrap(), int(1));
        assert_eq!(bank.eval(&SequenceId::TPow(2), 1).unwrap(), int(-17));
        assert_eq!(bank.eval(&SequenceId::F, 0).unwrap(), int(0));
        assert_eq!(bank.eval(&SequenceId::G, 0).unwrap(), int(-1));
        assert_eq!(bank.eval(&SequenceId::E, 0).unwrap(), int(1));
        assert_eq!(bank.eval(&SequenceId::H, 0).unwrap(), int(-1));
    }

    #[test]
    fn prefix_sum_examples() {
        let bank = SequenceBank::new();
        assert_eq!(bank.prefix_sum(&SequenceId::SPlus, 2).unwrap(), int(20));
        assert_eq!(bank.prefix_sum(&SequenceId::LowerS, 2).unwrap(), int(0));
        assert_eq!(bank.prefix_sum(&SequenceId::S, 0).unwrap(), int(0));
        assert_eq!(bank.weighted_prefix_sum(&SequenceId::S, 2).unwrap(), int(7));
        assert_eq!(bank.weighted_prefix_sum(&SequenceId::S, 3).unwrap(), int(117));
        assert_eq!(bank.weighted_prefix_sum(&SequenceId::S, 1).unwrap(), int(0));
    }

    #[test]
    fn matches_oracle_on_small_indices() {
        let bank = SequenceBank::new();
        for n in 0..=14i128 {
            let m = n as u64;
            let of = |(a, b): (i128, i128)| q(a, b);
            assert_eq!(bank.eval(&SequenceId::S, m).unwrap(), q(oracle::s_pow(n, 1, false), 1));
            assert_eq!(bank.eval(&SequenceId::SPlus, m).unwrap(), q(oracle::s_pow(n, 2, false), 1));
            for r in 0..=4 {
                assert_eq!(bank.eval(&SequenceId::SPow(r), m).unwrap(), q(oracle::s_pow(n, r, false), 1));
                assert_eq!(bank.eval(&SequenceId::TPow(r), m).unwrap(), q(oracle::s_pow(n, r, true), 1));
            }
            assert_eq!(bank.eval(&SequenceId::LowerS, m).unwrap(), of(oracle::lower_s(n)));
            assert_eq!(bank.eval(&SequenceId::R, m).unwrap(), of(oracle::r(n)));
            assert_eq!(bank.eval(&SequenceId::F, m).unwrap(), of(oracle::f(n)));
            assert_eq!(bank.eval(&SequenceId::G, m).unwrap(), of(oracle::g(n)));
            assert_eq!(bank.eval(&SequenceId::H, m).unwrap(), of(oracle::h(n)));
            assert_eq!(bank.eval(&SequenceId::E, m).unwrap(), of(oracle::e(n)));
        }
    }

    #[test]
    fn family_cross_checks() {
        let bank = SequenceBank::new();
        for n in 0..=300 {
            assert_eq!(bank.eval(&SequenceId::SPow(1), n).unwrap(), bank.eval(&SequenceId::S, n).unwrap());
            assert_eq!(bank.eval(&SequenceId::SPow(2), n).unwrap(), bank.eval(&SequenceId::SPlus, n).unwrap());
        }
    }

    #[test]
    fn difference_sequences_follow_their_definitions() {
        let bank = SequenceBank::new();
        for n in 1..=300u64 {
            let sq = |m: u64| ExactRational::from(m * m);
            assert_eq!(
                bank.eval(&SequenceId::U, n).unwrap(),
                &ExactRational::from(4 * n) * &bank.eval(&SequenceId::S, n).unwrap()
            );
            for (diff, aux) in [
                (SequenceId::V, SequenceId::F),
                (SequenceId::W, SequenceId::G),
                (SequenceId::X, SequenceId::H),
                (SequenceId::Y, SequenceId::E),
            ] {
                let expect = &(&sq(n + 1) * &bank.eval(&aux, n).unwrap())
                    - &(&sq(n) * &bank.eval(&aux, n - 1).unwrap());
                assert_eq!(bank.eval(&diff, n).unwrap(), expect, "{diff} at {n}");
            }
        }
    }

    #[test]
    fn difference_sequences_reject_index_zero() {
        let bank = SequenceBank::new();
        for id in [SequenceId::V, SequenceId::W, SequenceId::X, SequenceId::Y] {
            assert!(matches!(bank.eval(&id, 0), Err(Error::IndexOutOfDomain { index: 0, .. })));
        }
    }

    #[test]
    fn catalan_square_prefix_identity() {
        // (1/n^2) sum_{k<n} S_k = sum_k C(n-1,k)^2 Cat(k)
        let bank = SequenceBank::new();
        for n in 1..=300u64 {
            let lhs = &bank.prefix_sum(&SequenceId::S, n).unwrap() * &ExactRational::new(1, n * n);
            assert_eq!(lhs, bank.eval(&SequenceId::CatalanSquares, n - 1).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn h_summand_is_integral_and_decomposes() {
        let bank = SequenceBank::new();
        for k in 0..=300u64 {
            let t = bank.h_summand(k);
            assert!(t.is_integer(), "k = {k}");
            let c = ExactRational::from(bank.binomials().central(k));
            let decomposed = &c
                * &(&ExactRational::new(2, 2 * k as i64 - 1) - &ExactRational::new(1, k + 1));
            assert_eq!(t, decomposed);
        }
    }

    #[test]
    fn exponent_bound_enforced() {
        assert!("S_r(16)".parse::<SequenceId>().is_ok());
        assert!(matches!("S_r(17)".parse::<SequenceId>(), Err(Error::UnsupportedParameter(_))));
        let bank = SequenceBank::new();
        assert!(bank.eval(&SequenceId::TPow(17), 1).is_err());
    }

    #[test]
    fn id_round_trip() {
        for s in [
            "S", "s", "S_plus", "R", "S_r(3)", "T_r(2)", "f", "g", "h", "hsum", "e",
            "catalan_sq", "u", "v", "w", "x", "y", "prefix(S)", "wprefix(S_r(4))",
            "prefix(prefix(s))", "constant:-5",
        ] {
            let id: SequenceId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert!("bogus".parse::<SequenceId>().is_err());
        assert!("prefix(v)".parse::<SequenceId>().is_err());
    }

    #[test]
    fn dump_lines_round_trip() {
        let bank = SequenceBank::new();
        for id in [SequenceId::H, SequenceId::prefix(SequenceId::H), SequenceId::S] {
            for n in 0..20 {
                let v = bank.eval(&id, n).unwrap();
                let line = dump_line(&id, n, &v);
                assert_eq!(parse_dump_line(&line).unwrap(), (id.clone(), n, v));
            }
        }
        assert!(parse_dump_line("S, x, 1").is_err());
    }

    #[test]
    fn parallel_prefill_matches_sequential() {
        let a = SequenceBank::new();
        let b = SequenceBank::new();
        a.prefill(&SequenceId::prefix(SequenceId::LowerS), 120).unwrap();
        a.prefill(&SequenceId::X, 120).unwrap();
        for n in 0..120 {
            assert_eq!(
                a.prefix_sum(&SequenceId::LowerS, n).unwrap(),
                b.prefix_sum(&SequenceId::LowerS, n).unwrap()
            );
            if n >= 1 {
                assert_eq!(a.eval(&SequenceId::X, n).unwrap(), b.eval(&SequenceId::X, n).unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn memo_is_order_independent(order in Just((0u64..80).collect::<Vec<_>>()).prop_shuffle()) {
            let fresh = SequenceBank::new();
            let shuffled = SequenceBank::new();
            for &n in &order {
                shuffled.eval(&SequenceId::prefix(SequenceId::SPlus), n).unwrap();
                shuffled.eval(&SequenceId::LowerS, n).unwrap();
            }
            for n in 0..80 {
                prop_assert_eq!(
                    shuffled.prefix_sum(&SequenceId::SPlus, n).unwrap(),
                    fresh.prefix_sum(&SequenceId::SPlus, n).unwrap()
                );
                prop_assert_eq!(
                    shuffled.eval(&SequenceId::LowerS, n).unwrap(),
                    fresh.eval(&SequenceId::LowerS, n).unwrap()
                );
            }
        }
    }
}
