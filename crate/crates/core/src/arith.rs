//! Exact integer and rational arithmetic plus the elementary number theory
//! the verifier needs: binomials, Catalan numbers, Legendre symbols,
//! deterministic primality and congruences of rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Greatest common divisor of the magnitudes of `a` and `b`.
///
/// One Euclidean step runs before the binary gcd. Most calls here pair a
/// large numerator with a small denominator, and plain Stein on that input
/// needs one iteration per bit of the large operand.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.magnitude().clone(), b.magnitude().clone());
    if x < y {
        std::mem::swap(&mut x, &mut y);
    }
    if y.is_zero() {
        return BigInt::from_biguint(Sign::Plus, x);
    }
    let r: BigUint = &x % &y;
    let g = if r.is_zero() { y } else { r.gcd(&y) };
    BigInt::from_biguint(Sign::Plus, g)
}

/// An exact rational number kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: BigInt,
    den: BigInt,
}

impl ExactRational {
    /// Builds `num / den` in lowest terms.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::try_new(num, den).expect("ExactRational with zero denominator")
    }

    pub fn try_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return None;
        }
        let mut r = ExactRational { num, den };
        r.normalize();
        Some(r)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.num = -std::mem::take(&mut self.num);
            self.den = -std::mem::take(&mut self.den);
        }
        if self.den.is_one() {
            return;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let mut r = ExactRational {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        if r.den.is_negative() {
            r.num = -r.num;
            r.den = -r.den;
        }
        Some(r)
    }

    pub fn abs(&self) -> Self {
        ExactRational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational {
            num: num_traits::pow(self.num.clone(), exp as usize),
            den: num_traits::pow(self.den.clone(), exp as usize),
        }
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRational({self})")
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))
        };
        match s.split_once('/') {
            None => Ok(Self::from_integer(parse_int(s)?)),
            Some((n, d)) => Self::try_new(parse_int(n)?, parse_int(d)?)
                .ok_or_else(|| Error::Parse(format!("zero denominator in `{s}`"))),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<&BigInt> for ExactRational {
    fn from(n: &BigInt) -> Self {
        Self::from_integer(n.clone())
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactRational {
            fn from(n: $t) -> Self {
                Self::from_integer(BigInt::from(n))
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, i128, u128, usize);

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl<'a> Add<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    fn add(self, rhs: &ExactRational) -> ExactRational {
        if self.den.is_one() && rhs.den.is_one() {
            return ExactRational::from_integer(&self.num + &rhs.num);
        }
        // an integer added to a reduced fraction stays reduced
        if rhs.den.is_one() {
            return ExactRational {
                num: &self.num + &rhs.num * &self.den,
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return ExactRational {
                num: &self.num * &rhs.den + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        let num = &self.num * &rhs.den + &rhs.num * &self.den;
        let den = &self.den * &rhs.den;
        let mut r = ExactRational { num, den };
        r.normalize();
        r
    }
}

impl<'a> Mul<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: &ExactRational) -> ExactRational {
        if self.den.is_one() && rhs.den.is_one() {
            return ExactRational::from_integer(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (g1, g2) = (
            if g1.is_zero() { BigInt::one() } else { g1 },
            if g2.is_zero() { BigInt::one() } else { g2 },
        );
        let mut r = ExactRational {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        };
        if r.num.is_zero() {
            r.den = BigInt::one();
        }
        r
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;

    fn neg(self) -> ExactRational {
        ExactRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;

    fn neg(self) -> ExactRational {
        ExactRational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<'a> Sub<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    fn sub(self, rhs: &ExactRational) -> ExactRational {
        self + &(-rhs)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;

    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &ExactRational) -> ExactRational {
        let inv = rhs.recip().expect("division of ExactRational by zero");
        self * &inv
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                self.$method(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        *self += &rhs;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Rows of Pascal's triangle and central binomials, grown on demand.
///
/// Rows up to `cap` are cached; rows above it are built fresh with the
/// multiplicative formula and handed out without being stored.
pub struct BinomialTable {
    cap: u64,
    rows: RwLock<Vec<Arc<[BigInt]>>>,
    central: RwLock<Vec<BigInt>>,
}

static GLOBAL_TABLE: LazyLock<BinomialTable> = LazyLock::new(|| BinomialTable::new(1024));

impl BinomialTable {
    pub fn new(cap: u64) -> Self {
        BinomialTable {
            cap,
            rows: RwLock::new(vec![Arc::from(vec![BigInt::one()])]),
            central: RwLock::new(vec![BigInt::one()]),
        }
    }

    /// Process-wide table shared by the free functions in this module.
    pub fn global() -> &'static BinomialTable {
        &GLOBAL_TABLE
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// The full row `C(n, 0..=n)`.
    pub fn row(&self, n: u64) -> Arc<[BigInt]> {
        if n > self.cap {
            return Arc::from(multiplicative_row(n));
        }
        let idx = n as usize;
        {
            let rows = self.rows.read().unwrap();
            if let Some(r) = rows.get(idx) {
                return Arc::clone(r);
            }
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= idx {
            let prev = rows.last().unwrap();
            let mut next = Vec::with_capacity(prev.len() + 1);
            next.push(BigInt::one());
            for w in prev.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            rows.push(Arc::from(next));
        }
        Arc::clone(&rows[idx])
    }

    /// `C(n, k)` with the out-of-range convention: zero when `k < 0`,
    /// `k > n`, or `n < 0`.
    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        let (n, k) = (n as u64, k as u64);
        if n <= self.cap {
            return self.row(n)[k as usize].clone();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc *= n - i;
            acc /= i + 1;
        }
        acc
    }

    /// The central binomial `C(2k, k)`.
    pub fn central(&self, k: u64) -> BigInt {
        let idx = k as usize;
        {
            let c = self.central.read().unwrap();
            if let Some(v) = c.get(idx) {
                return v.clone();
            }
        }
        let mut c = self.central.write().unwrap();
        while c.len() <= idx {
            let j = (c.len() - 1) as u64;
            // C(2j+2, j+1) = C(2j, j) * 2(2j+1) / (j+1)
            let next = c.last().unwrap() * (2 * (2 * j + 1)) / (j + 1);
            c.push(next);
        }
        c[idx].clone()
    }
}

fn multiplicative_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::one();
    row.push(acc.clone());
    for k in 0..n {
        acc = acc * (n - k) / (k + 1);
        row.push(acc.clone());
    }
    row
}

/// Binomial coefficient, zero outside `0 <= k <= n` and for negative `n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    BinomialTable::global().get(n, k)
}

/// Like [`binomial`] but rejects a negative upper argument.
pub fn binomial_strict(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeBinomial { n });
    }
    Ok(binomial(n, k))
}

/// The `k`-th Catalan number `C(2k, k) / (k + 1)`.
pub fn catalan(k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::NegativeCatalan(k));
    }
    let c = BinomialTable::global().central(k as u64);
    let (q, r) = c.div_rem(&BigInt::from(k + 1));
    if !r.is_zero() {
        return Err(Error::Internal(format!("C(2k,k) not divisible by k+1 at k={k}")));
    }
    Ok(q)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for every `u64`.
///
/// Miller-Rabin with the first twelve prime bases, which has no strong
/// pseudoprimes below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]` in increasing order.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    match pow_mod(r, (p - 1) / 2, p) {
        1 => Ok(1),
        x if x == p - 1 => Ok(-1),
        x => Err(Error::Internal(format!("Euler criterion gave {x} mod {p}"))),
    }
}

/// `(p / q)` for a prime `q`, evaluated as `legendre_symbol(p mod q, q)`,
/// so it is zero when `p == q`.
pub fn legendre_of_prime(p: u64, q: u64) -> Result<i8> {
    legendre_symbol((p % q) as i64, q)
}

/// Tests `a ≡ b (mod m)` for rationals whose difference is `m`-integral.
///
/// With `a - b = x / y` in lowest terms the congruence holds iff `m | x`.
/// It is an error for `y` to share a factor with `m`.
pub fn rational_congruent(a: &ExactRational, b: &ExactRational, m: &BigInt) -> Result<bool> {
    if m < &BigInt::one() {
        return Err(Error::UnsupportedParameter(format!("modulus {m} must be >= 1")));
    }
    let diff = a - b;
    check_invertible(diff.denom(), m)?;
    Ok(diff.numer().is_multiple_of(m))
}

fn check_invertible(den: &BigInt, m: &BigInt) -> Result<()> {
    if !gcd(den, m).is_one() {
        return Err(Error::DenominatorNotInvertible {
            denominator: den.to_string(),
            modulus: m.to_string(),
        });
    }
    Ok(())
}

/// The residue of `x / y` modulo `m` in `[0, m)`, i.e. `x * y^-1 mod m`.
pub fn residue(value: &ExactRational, m: &BigInt) -> Result<BigInt> {
    if m < &BigInt::one() {
        return Err(Error::UnsupportedParameter(format!("modulus {m} must be >= 1")));
    }
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    check_invertible(value.denom(), m)?;
    let inv = value
        .denom()
        .mod_floor(m)
        .modinv(m)
        .ok_or_else(|| Error::Internal("modular inverse failed".into()))?;
    Ok((value.numer() * inv).mod_floor(m))
}

/// `(2k + 1)^r` for small exponents.
pub(crate) fn odd_power(k: u64, r: u32) -> BigInt {
    num_traits::pow(BigInt::from(2 * k + 1), r as usize)
}

/// Converts a small exact integer to `i64`, if it fits.
pub fn to_i64(value: &ExactRational) -> Option<i64> {
    value.to_integer().and_then(|n| n.to_i64())
}
