//! Independent direct-summation oracles for the generators and a few claims.
//! Binomials here come from the multiplicative formula, not the cached table.

use binsum_core::{ExactRational, SequenceBank, SequenceId};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn c(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn cat(k: i64) -> BigRational {
    q(c(2 * k, k)) / q(k + 1)
}

fn sum(n: i64, term: impl Fn(i64) -> BigRational) -> BigRational {
    (0..=n).map(term).fold(BigRational::zero(), |a, b| a + b)
}

fn base(n: i64, k: i64) -> BigRational {
    q(c(n, k) * c(n, k) * c(2 * k, k))
}

fn f(n: i64) -> BigRational {
    sum(n, |k| cat(k) * q(c(n, k) * c(n, k) * 6 * k + c(n, k) * c(n, k + 1)))
}

fn g(n: i64) -> BigRational {
    sum(n, |k| cat(k) * q(c(n, k) * c(n, k + 1) * 2 - c(n, k) * c(n, k)))
}

fn hsum(n: i64) -> BigRational {
    sum(n, |k| q(c(n, k) * c(n, k) * c(2 * k + 1, k) * 3) / q(4 * k * k - 1))
}

fn e(n: i64) -> BigRational {
    sum(n, |k| q(c(2 * k + 1, k) * c(n, k) * c(n, k)) + cat(k) * q(c(n, k) * c(n, k + 1)))
}

fn step(n: i64, aux: fn(i64) -> BigRational) -> BigRational {
    q((n + 1) * (n + 1)) * aux(n) - q(n * n) * aux(n - 1)
}

fn oracle(id: &SequenceId, n: i64) -> BigRational {
    match id {
        SequenceId::S => sum(n, |k| base(n, k) * q(2 * k + 1)),
        SequenceId::LowerS => sum(n, |k| base(n, k) / q(2 * k - 1)),
        SequenceId::SPlus => sum(n, |k| base(n, k) * q((2 * k + 1) * (2 * k + 1))),
        SequenceId::R => sum(n, |k| q(c(n + k, 2 * k) * c(2 * k, k)) / q(2 * k - 1)),
        SequenceId::SPow(r) => sum(n, |k| base(n, k) * q(BigInt::from(2 * k + 1).pow(*r))),
        SequenceId::TPow(r) => sum(n, |k| base(n, k) * q(BigInt::from(2 * k + 1).pow(*r)) * q(if k % 2 == 0 { 1 } else { -1 })),
        SequenceId::F => f(n),
        SequenceId::G => g(n),
        SequenceId::HSum => hsum(n),
        SequenceId::H => hsum(n) / q(4 * n + 3),
        SequenceId::E => e(n),
        SequenceId::CatalanSquares => sum(n, |k| q(c(n, k) * c(n, k)) * cat(k)),
        SequenceId::U => q(4 * n) * oracle(&SequenceId::S, n),
        SequenceId::V => step(n, f),
        SequenceId::W => step(n, g),
        SequenceId::X => step(n, |m| hsum(m) / q(4 * m + 3)),
        SequenceId::Y => step(n, e),
        other => panic!("no oracle for {other}"),
    }
}

fn to_exact(r: &BigRational) -> ExactRational {
    ExactRational::new(r.numer().clone(), r.denom().clone())
}

#[test]
fn generators_match_direct_summation() {
    let bank = SequenceBank::new();
    let ids = [
        SequenceId::S,
        SequenceId::LowerS,
        SequenceId::SPlus,
        SequenceId::R,
        SequenceId::SPow(0),
        SequenceId::SPow(5),
        SequenceId::TPow(2),
        SequenceId::TPow(7),
        SequenceId::F,
        SequenceId::G,
        SequenceId::H,
        SequenceId::HSum,
        SequenceId::E,
        SequenceId::CatalanSquares,
        SequenceId::U,
        SequenceId::V,
        SequenceId::W,
        SequenceId::X,
        SequenceId::Y,
    ];
    for id in &ids {
        for n in id.first_index()..=40 {
            let want = to_exact(&oracle(id, n as i64));
            assert_eq!(bank.eval(id, n).unwrap(), want, "{id} at {n}");
        }
    }
}

#[test]
fn small_values() {
    let s: Vec<_> = (0..4).map(|n| oracle(&SequenceId::S, n)).collect();
    assert_eq!(s, vec![q(1), q(7), q(55), q(465)]);
    assert_eq!(oracle(&SequenceId::LowerS, 2), q(9));
    assert_eq!(oracle(&SequenceId::R, 1), q(1));
    assert_eq!(oracle(&SequenceId::H, 0), frac(-1, 1));
}

#[test]
fn prefix_sums_match() {
    let bank = SequenceBank::new();
    for id in [SequenceId::S, SequenceId::LowerS, SequenceId::SPlus, SequenceId::R] {
        let mut acc = BigRational::zero();
        let mut weighted = BigRational::zero();
        for n in 0..30u64 {
            assert_eq!(bank.prefix_sum(&id, n).unwrap(), to_exact(&acc));
            assert_eq!(bank.weighted_prefix_sum(&id, n).unwrap(), to_exact(&weighted));
            let v = oracle(&id, n as i64);
            weighted += q(n as i64) * &v;
            acc += v;
        }
    }
}

fn prefix(id: &SequenceId, n: i64, weight: bool) -> BigRational {
    (0..n).map(|k| oracle(id, k) * q(if weight { k } else { 1 })).fold(BigRational::zero(), |a, b| a + b)
}

#[test]
fn catalan_square_identity_directly() {
    for n in 1..=40 {
        let lhs = prefix(&SequenceId::S, n, false) / q(n * n);
        let rhs = sum(n - 1, |k| q(c(n - 1, k) * c(n - 1, k)) * cat(k));
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn n_squared_divisibility_directly() {
    for n in 1..=40 {
        let n2 = q(n * n);
        for (id, weight, scale) in [
            (SequenceId::S, true, 4),
            (SequenceId::LowerS, false, 1),
            (SequenceId::SPlus, false, 1),
        ] {
            let v = prefix(&id, n, weight) * q(scale) / &n2;
            assert!(v.is_integer(), "{id} at {n}: {v}");
        }
        assert!((hsum(n - 1) / q(4 * n - 1)).is_integer(), "hsum at {n}");
    }
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[test]
fn central_binomial_sum_mod_p() {
    for p in (5..200).filter(|&p| is_prime(p)) {
        let total = (0..p).map(|k| c(2 * k, k)).fold(BigInt::zero(), |a, b| a + b);
        let legendre: i64 = match p % 3 {
            1 => 1,
            _ => -1,
        };
        assert!(((total - legendre) % BigInt::from(p)).is_zero(), "p = {p}");
    }
}

#[test]
fn anchor_values() {
    let k_s = prefix(&SequenceId::S, 3, true);
    assert_eq!(k_s, q(117));
    assert_eq!((k_s - q(9)) % q(27), q(0));
    assert_eq!(prefix(&SequenceId::LowerS, 2, false), q(0));
    assert_eq!(prefix(&SequenceId::SPlus, 2, false), q(20));
}
