//! The claim registry and the suite runner.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::claims::{
    check_binomial_sign, check_congruence, check_identity, no_convention, CongruenceClaim, IdentityClaim,
    IndexSet, Modulus,
};
use super::multiplier::{multiplier_report, MultiplierFamily, CONJECTURED_A, CONJECTURED_B};
use super::report::{ClaimKind, Failure, FailureReason, ReportBuilder, VerificationReport};
use crate::arith::{legendre_of_prime, legendre_symbol, ExactRational};
use crate::error::{Error, Result};
use crate::recurrence::registry;
use crate::sequences::{SequenceBank, SequenceId};

/// Bounds for a run. Index claims go up to `n_max`, prime claims up to
/// `prime_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub n_max: u64,
    pub prime_max: u64,
    /// Record wall time in each report. Off by default so that reports are
    /// reproducible byte for byte.
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 300,
            prime_max: 199,
            timings: false,
        }
    }
}

pub const SUITES: &[&str] = &[
    "theorems",
    "lemmas",
    "identities",
    "recurrences",
    "certificates",
    "conjectures",
    "multipliers",
    "all",
];

#[derive(Clone)]
enum Runner {
    Identity(IdentityClaim),
    Congruence(CongruenceClaim),
    BinomialSign,
    Annihilation { operator: &'static str, target: SequenceId },
    Certificate(String),
    Multiplier { family: MultiplierFamily, r: u32, conjectured: u64 },
}

/// A registered claim.
#[derive(Clone)]
pub struct ClaimDef {
    pub id: String,
    pub kind: ClaimKind,
    suites: &'static [&'static str],
    runner: Runner,
}

impl ClaimDef {
    pub fn in_suite(&self, suite: &str) -> bool {
        suite == "all" || self.suites.contains(&suite)
    }

    pub fn run(&self, bank: &Arc<SequenceBank>, config: &SuiteConfig) -> Result<VerificationReport> {
        let n_max = config.n_max;
        match &self.runner {
            Runner::Identity(c) => {
                let mut r = check_identity(c, bank, n_max, config.timings)?;
                if c.id == "s-prefix-hsum" {
                    let top = n_max.saturating_sub(1);
                    let mut integral = 0;
                    for n in 0..=top {
                        if bank.eval(&SequenceId::H, n)?.is_integer() {
                            integral += 1;
                        }
                    }
                    r.details.insert("h-integral".into(), format!("{integral}/{}", top + 1));
                }
                Ok(r)
            }
            Runner::Congruence(c) => {
                let bound = match c.indices {
                    IndexSet::From(_) => n_max,
                    IndexSet::Primes => config.prime_max,
                };
                check_congruence(c, bank, bound, config.timings)
            }
            Runner::BinomialSign => Ok(check_binomial_sign(bank, config.prime_max, config.timings)),
            Runner::Annihilation { operator, target } => {
                let started = std::time::Instant::now();
                let entry = registry::operator(operator)?;
                let handle = bank.handle(target.clone())?;
                handle.prefill(n_max + entry.operator.order() as u64)?;
                let mut r = entry.operator.verify_annihilates(&handle, entry.first_index, n_max);
                r.claim = self.id.clone();
                r.statement = format!("{operator} annihilates {target}: {}", entry.description);
                if config.timings {
                    r.elapsed_ms = Some(started.elapsed().as_millis() as u64);
                }
                Ok(r)
            }
            Runner::Certificate(name) => certificate_report(&self.id, name, bank, config),
            Runner::Multiplier { family, r, conjectured } => {
                multiplier_report(bank, *family, *r, *conjectured, n_max, config.timings)
            }
        }
    }
}

fn certificate_report(
    id: &str,
    name: &str,
    bank: &Arc<SequenceBank>,
    config: &SuiteConfig,
) -> Result<VerificationReport> {
    let entry = registry::certificate(name)?;
    let cert = &entry.certificate;
    let big = registry::operators().iter().find(|e| e.operator == cert.big).map_or("?", |e| e.name);
    let small = registry::operators().iter().find(|e| e.operator == cert.small).map_or("?", |e| e.name);
    let mut b = ReportBuilder::new(
        id,
        ClaimKind::Certificate,
        format!(
            "({}) {big}(n) + ({}) {small}(n+1) - ({}) {small}(n) = 0",
            cert.big_multiplier, cert.shift_multiplier, cert.base_multiplier
        ),
    )
    .range(1, config.n_max);
    let holds = cert.check()?;
    b.detail("symbolic", holds);
    b.detail("random-sequences", 20);
    if holds {
        b.pass();
    } else {
        b.fail(Failure {
            index: 0,
            reason: FailureReason::Mismatch,
            lhs: None,
            rhs: None,
            residue: None,
            message: Some("expanded coefficients are not all zero".into()),
        });
    }
    let target = bank.handle(entry.induction_target.clone())?;
    target.prefill(config.n_max + cert.big.order() as u64)?;
    let out = cert.induct(&target, config.n_max)?;
    b.detail("induction-target", &entry.induction_target);
    b.detail(
        "proven-through",
        out.proven_through.map_or_else(|| "none".to_string(), |n| n.to_string()),
    );
    if out.proven_through == Some(config.n_max) {
        b.pass();
    } else {
        b.fail(Failure {
            index: config.n_max,
            reason: FailureReason::Mismatch,
            lhs: None,
            rhs: None,
            residue: None,
            message: Some(format!(
                "induction on {}: big annihilates {}, base holds {}, agrees with direct evaluation {}",
                entry.induction_target, out.big_annihilates, out.base_holds, out.agrees_with_direct
            )),
        });
    }
    Ok(b.finish(config.timings))
}

// Terms. Each takes the bank and the index.

type Value = Result<ExactRational>;

fn q(n: u64) -> ExactRational {
    ExactRational::from(n)
}

fn sq(n: u64) -> ExactRational {
    ExactRational::from(n * n)
}

fn zero(_: &SequenceBank, _: u64) -> Value {
    Ok(ExactRational::zero())
}

fn minus_one(_: &SequenceBank, _: u64) -> Value {
    Ok(ExactRational::from(-1))
}

fn prefix(b: &SequenceBank, id: SequenceId, n: u64) -> Value {
    b.prefix_sum(&id, n)
}

fn four_k_s_prefix(b: &SequenceBank, n: u64) -> Value {
    Ok(&q(4) * &b.weighted_prefix_sum(&SequenceId::S, n)?)
}

fn k_s_prefix(b: &SequenceBank, n: u64) -> Value {
    b.weighted_prefix_sum(&SequenceId::S, n)
}

fn s_prefix(b: &SequenceBank, n: u64) -> Value {
    prefix(b, SequenceId::LowerS, n)
}

fn splus_prefix(b: &SequenceBank, n: u64) -> Value {
    prefix(b, SequenceId::SPlus, n)
}

fn r_prefix(b: &SequenceBank, n: u64) -> Value {
    prefix(b, SequenceId::R, n)
}

fn hsum_prev(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::HSum, n - 1)
}

fn spow_prefix<const R: u32>(b: &SequenceBank, n: u64) -> Value {
    prefix(b, SequenceId::SPow(R), n)
}

fn tpow_prefix<const R: u32>(b: &SequenceBank, n: u64) -> Value {
    prefix(b, SequenceId::TPow(R), n)
}

fn central_sum(b: &SequenceBank, p: u64) -> Value {
    let t = b.binomials();
    Ok(ExactRational::from((0..p).map(|k| t.central(k)).sum::<BigInt>()))
}

fn catalan_sum(b: &SequenceBank, p: u64) -> Value {
    let t = b.binomials();
    Ok((0..p).map(|k| ExactRational::new(t.central(k), k + 1)).sum())
}

fn central_2p_2_over_p(b: &SequenceBank, p: u64) -> Value {
    Ok(ExactRational::new(b.binomials().central(p - 1), p))
}

/// `(p/3)` with the value 0 at `p = 3`.
fn leg3(p: u64) -> i64 {
    legendre_of_prime(p, 3).map(i64::from).unwrap_or(0)
}

fn leg5(p: u64) -> i64 {
    legendre_of_prime(p, 5).map(i64::from).unwrap_or(0)
}

/// `(-1/p)` with the value 0 at `p = 2`.
fn leg_minus_one(p: u64) -> i64 {
    legendre_symbol(-1, p).map(i64::from).unwrap_or(0)
}

fn k_s_p3_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(&sq(p) * &ExactRational::new(5 - 9 * leg3(p), 8))
}

fn s_p3_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(&sq(p) * &ExactRational::new(-(1 + 9 * leg3(p)), 2))
}

fn splus_p3_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(&sq(p) * &ExactRational::from(-leg3(p)))
}

fn r_p2_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(ExactRational::from(-(p as i64) - leg_minus_one(p)))
}

fn central_sum_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(ExactRational::from(leg3(p)))
}

fn catalan_sum_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(ExactRational::new(3 * leg3(p) - 1, 2))
}

fn t2_p3_rhs(_: &SequenceBank, p: u64) -> Value {
    Ok(&sq(p) * &ExactRational::new(5 - 3 * leg5(p), 2))
}

fn at_three(p: u64) -> Option<&'static str> {
    (p == 3).then_some("(p/3) taken as 0 at p = 3")
}

fn at_two(p: u64) -> Option<&'static str> {
    (p == 2).then_some("(-1/p) taken as 0 at p = 2")
}

fn at_two_or_five(p: u64) -> Option<&'static str> {
    match p {
        2 => Some("p = 2 is not an odd prime"),
        5 => Some("(p/5) taken as 0 at p = 5"),
        _ => None,
    }
}

// Identity sides.

fn s_prefix_over_n2(b: &SequenceBank, n: u64) -> Value {
    Ok(&prefix(b, SequenceId::S, n)? / &sq(n))
}

fn catalan_squares_prev(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::CatalanSquares, n - 1)
}

fn n2_prev(b: &SequenceBank, id: SequenceId, n: u64) -> Value {
    Ok(&sq(n) * &b.eval(&id, n - 1)?)
}

fn n2_f_prev(b: &SequenceBank, n: u64) -> Value {
    n2_prev(b, SequenceId::F, n)
}

fn n2_g_prev(b: &SequenceBank, n: u64) -> Value {
    n2_prev(b, SequenceId::G, n)
}

fn n2_e_prev(b: &SequenceBank, n: u64) -> Value {
    n2_prev(b, SequenceId::E, n)
}

fn n2_hsum_over_4n_1(b: &SequenceBank, n: u64) -> Value {
    Ok(&(&sq(n) / &q(4 * n - 1)) * &hsum_prev(b, n)?)
}

fn four_n_s(b: &SequenceBank, n: u64) -> Value {
    Ok(&q(4 * n) * &b.eval(&SequenceId::S, n)?)
}

fn f_step(b: &SequenceBank, n: u64) -> Value {
    let cur = b.eval(&SequenceId::F, n)?;
    let prev = b.eval(&SequenceId::F, n - 1)?;
    Ok(&(&sq(n + 1) * &cur) - &(&sq(n) * &prev))
}

fn seq_u(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::U, n)
}

fn seq_v(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::V, n)
}

fn seq_s(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::LowerS, n)
}

fn seq_w(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::W, n)
}

fn seq_x(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::X, n)
}

fn seq_splus(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::SPlus, n)
}

fn seq_y(b: &SequenceBank, n: u64) -> Value {
    b.eval(&SequenceId::Y, n)
}

fn needs_none() -> Vec<SequenceId> {
    vec![]
}

fn needs_k_s() -> Vec<SequenceId> {
    vec![SequenceId::weighted_prefix(SequenceId::S)]
}

fn needs_s() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::LowerS)]
}

fn needs_splus() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::SPlus)]
}

fn needs_r() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::R)]
}

fn needs_hsum() -> Vec<SequenceId> {
    vec![SequenceId::HSum]
}

fn needs_spow<const R: u32>() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::SPow(R))]
}

fn needs_tpow<const R: u32>() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::TPow(R))]
}

fn needs_catalan_squares() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::S), SequenceId::CatalanSquares]
}

fn needs_k_s_f() -> Vec<SequenceId> {
    vec![SequenceId::weighted_prefix(SequenceId::S), SequenceId::F]
}

fn needs_u_f() -> Vec<SequenceId> {
    vec![SequenceId::S, SequenceId::F]
}

fn needs_s_g() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::LowerS), SequenceId::G]
}

fn needs_s_h() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::LowerS), SequenceId::HSum, SequenceId::H]
}

fn needs_splus_e() -> Vec<SequenceId> {
    vec![SequenceId::prefix(SequenceId::SPlus), SequenceId::E]
}

fn needs_u_v() -> Vec<SequenceId> {
    vec![SequenceId::U, SequenceId::V]
}

fn needs_s_w() -> Vec<SequenceId> {
    vec![SequenceId::LowerS, SequenceId::W]
}

fn needs_s_x() -> Vec<SequenceId> {
    vec![SequenceId::LowerS, SequenceId::X]
}

fn needs_splus_y() -> Vec<SequenceId> {
    vec![SequenceId::SPlus, SequenceId::Y]
}

const THEOREMS: &[&str] = &["theorems"];
const LEMMAS: &[&str] = &["lemmas"];
const IDENTITIES: &[&str] = &["identities"];
const RECURRENCES: &[&str] = &["recurrences"];
const CERTIFICATES: &[&str] = &["recurrences", "certificates"];
const CONJECTURES: &[&str] = &["conjectures"];
const MULTIPLIERS: &[&str] = &["conjectures", "multipliers"];

fn divisibility(
    id: &'static str,
    kind: ClaimKind,
    statement: &'static str,
    lhs: fn(&SequenceBank, u64) -> Value,
    modulus: Modulus,
    needs: fn() -> Vec<SequenceId>,
) -> CongruenceClaim {
    CongruenceClaim {
        id,
        kind,
        statement,
        lhs,
        rhs: zero,
        modulus,
        indices: IndexSet::From(1),
        convention: no_convention,
        needs,
    }
}

#[allow(clippy::too_many_arguments)]
fn prime_claim(
    id: &'static str,
    kind: ClaimKind,
    statement: &'static str,
    lhs: fn(&SequenceBank, u64) -> Value,
    rhs: fn(&SequenceBank, u64) -> Value,
    modulus: Modulus,
    convention: fn(u64) -> Option<&'static str>,
    needs: fn() -> Vec<SequenceId>,
) -> CongruenceClaim {
    CongruenceClaim {
        id,
        kind,
        statement,
        lhs,
        rhs,
        modulus,
        indices: IndexSet::Primes,
        convention,
        needs,
    }
}

fn identity(
    id: &'static str,
    statement: &'static str,
    lhs: fn(&SequenceBank, u64) -> Value,
    rhs: fn(&SequenceBank, u64) -> Value,
    needs: fn() -> Vec<SequenceId>,
) -> IdentityClaim {
    IdentityClaim {
        id,
        statement,
        lhs,
        rhs,
        first: 1,
        needs,
    }
}

fn congruences() -> Vec<CongruenceClaim> {
    use ClaimKind::{Conjecture, Lemma, Theorem};
    use Modulus::*;
    vec![
        divisibility("kS-prefix-n2", Theorem, "4 sum_{k<n} k S_k = 0 (mod n^2)", four_k_s_prefix, NSquared, needs_k_s),
        prime_claim(
            "kS-prefix-p3",
            Theorem,
            "sum_{k<p} k S_k = p^2/8 (5 - 9 (p/3)) (mod p^3)",
            k_s_prefix,
            k_s_p3_rhs,
            PCubed,
            at_three,
            needs_k_s,
        ),
        divisibility("s-prefix-n2", Theorem, "sum_{k<n} s_k = 0 (mod n^2)", s_prefix, NSquared, needs_s),
        prime_claim(
            "s-prefix-p3",
            Theorem,
            "sum_{k<p} s_k = -p^2/2 (1 + 9 (p/3)) (mod p^3)",
            s_prefix,
            s_p3_rhs,
            PCubed,
            at_three,
            needs_s,
        ),
        divisibility("Splus-prefix-n2", Theorem, "sum_{k<n} S+_k = 0 (mod n^2)", splus_prefix, NSquared, needs_splus),
        prime_claim(
            "Splus-prefix-p3",
            Theorem,
            "sum_{k<p} S+_k = -p^2 (p/3) (mod p^3)",
            splus_prefix,
            splus_p3_rhs,
            PCubed,
            at_three,
            needs_splus,
        ),
        divisibility(
            "hsum-prefix-4n-1",
            Theorem,
            "sum_{k<n} C(n-1,k)^2 C(2k+1,k) 3/(4k^2-1) = 0 (mod 4n-1)",
            hsum_prev,
            FourNMinusOne,
            needs_hsum,
        ),
        prime_claim(
            "R-prefix-p2",
            Lemma,
            "sum_{k<p} R_k = -p - (-1/p) (mod p^2)",
            r_prefix,
            r_p2_rhs,
            PSquared,
            at_two,
            needs_r,
        ),
        prime_claim(
            "central-sum-p",
            Lemma,
            "sum_{k<p} C(2k,k) = (p/3) (mod p)",
            central_sum,
            central_sum_rhs,
            P,
            at_three,
            needs_none,
        ),
        prime_claim(
            "catalan-sum-p",
            Lemma,
            "sum_{k<p} C(2k,k)/(k+1) = (3 (p/3) - 1)/2 (mod p)",
            catalan_sum,
            catalan_sum_rhs,
            P,
            at_three,
            needs_none,
        ),
        prime_claim(
            "central-2p-2-p",
            Lemma,
            "C(2p-2,p-1)/p = -1 (mod p)",
            central_2p_2_over_p,
            minus_one,
            P,
            no_convention,
            needs_none,
        ),
        divisibility("S_r(2)-prefix-n2", Conjecture, "sum_{k<n} S_k^(2) = 0 (mod n^2)", spow_prefix::<2>, NSquared, needs_spow::<2>),
        divisibility("S_r(4)-prefix-n2", Conjecture, "sum_{k<n} S_k^(4) = 0 (mod n^2)", spow_prefix::<4>, NSquared, needs_spow::<4>),
        divisibility("S_r(6)-prefix-n2", Conjecture, "sum_{k<n} S_k^(6) = 0 (mod n^2)", spow_prefix::<6>, NSquared, needs_spow::<6>),
        divisibility("S_r(8)-prefix-n2", Conjecture, "sum_{k<n} S_k^(8) = 0 (mod n^2)", spow_prefix::<8>, NSquared, needs_spow::<8>),
        divisibility("T_r(2)-prefix-n2", Conjecture, "sum_{k<n} T_k^(2) = 0 (mod n^2)", tpow_prefix::<2>, NSquared, needs_tpow::<2>),
        divisibility("T_r(4)-prefix-n2", Conjecture, "sum_{k<n} T_k^(4) = 0 (mod n^2)", tpow_prefix::<4>, NSquared, needs_tpow::<4>),
        divisibility("T_r(6)-prefix-n2", Conjecture, "sum_{k<n} T_k^(6) = 0 (mod n^2)", tpow_prefix::<6>, NSquared, needs_tpow::<6>),
        divisibility("T_r(8)-prefix-n2", Conjecture, "sum_{k<n} T_k^(8) = 0 (mod n^2)", tpow_prefix::<8>, NSquared, needs_tpow::<8>),
        prime_claim(
            "T_r(2)-prefix-p3",
            Conjecture,
            "sum_{k<p} T_k^(2) = p^2/2 (5 - 3 (p/5)) (mod p^3)",
            tpow_prefix::<2>,
            t2_p3_rhs,
            PCubed,
            at_two_or_five,
            needs_tpow::<2>,
        ),
    ]
}

fn identities() -> Vec<IdentityClaim> {
    vec![
        identity(
            "catalan-square-prefix",
            "(1/n^2) sum_{k<n} S_k = sum_{k<n} C(n-1,k)^2 C(2k,k)/(k+1)",
            s_prefix_over_n2,
            catalan_squares_prev,
            needs_catalan_squares,
        ),
        identity("kS-prefix-f", "4 sum_{k<n} k S_k = n^2 f(n-1)", four_k_s_prefix, n2_f_prev, needs_k_s_f),
        identity("u-step-f", "4n S_n = (n+1)^2 f(n) - n^2 f(n-1)", four_n_s, f_step, needs_u_f),
        identity("s-prefix-g", "sum_{k<n} s_k = n^2 g(n-1)", s_prefix, n2_g_prev, needs_s_g),
        identity(
            "s-prefix-hsum",
            "sum_{k<n} s_k = n^2/(4n-1) sum_{k<n} C(n-1,k)^2 C(2k+1,k) 3/(4k^2-1)",
            s_prefix,
            n2_hsum_over_4n_1,
            needs_s_h,
        ),
        identity("Splus-prefix-e", "sum_{k<n} S+_k = n^2 e(n-1)", splus_prefix, n2_e_prev, needs_splus_e),
        identity("u-equals-v", "u(n) = v(n)", seq_u, seq_v, needs_u_v),
        identity("s-equals-w", "s(n) = w(n)", seq_s, seq_w, needs_s_w),
        identity("s-equals-x", "s(n) = x(n)", seq_s, seq_x, needs_s_x),
        identity("Splus-equals-y", "S+(n) = y(n)", seq_splus, seq_y, needs_splus_y),
    ]
}

/// Every registered claim, sorted by id.
pub fn claims() -> Vec<ClaimDef> {
    let mut out = Vec::new();
    for c in congruences() {
        let suites = match c.kind {
            ClaimKind::Theorem => THEOREMS,
            ClaimKind::Lemma => LEMMAS,
            _ => CONJECTURES,
        };
        out.push(ClaimDef {
            id: c.id.to_string(),
            kind: c.kind,
            suites,
            runner: Runner::Congruence(c),
        });
    }
    out.push(ClaimDef {
        id: "binom-p-1-sign".into(),
        kind: ClaimKind::Lemma,
        suites: LEMMAS,
        runner: Runner::BinomialSign,
    });
    for c in identities() {
        out.push(ClaimDef {
            id: c.id.to_string(),
            kind: ClaimKind::Identity,
            suites: IDENTITIES,
            runner: Runner::Identity(c),
        });
    }
    for (operator, target) in registry::annihilation_pairs() {
        out.push(ClaimDef {
            id: format!("annihilates:{operator}:{target}"),
            kind: ClaimKind::Recurrence,
            suites: RECURRENCES,
            runner: Runner::Annihilation { operator, target },
        });
    }
    for entry in registry::certificates() {
        let name = entry.certificate.name;
        out.push(ClaimDef {
            id: format!("certificate:{name}"),
            kind: ClaimKind::Certificate,
            suites: CERTIFICATES,
            runner: Runner::Certificate(name),
        });
    }
    for (family, table) in [(MultiplierFamily::OddPower, CONJECTURED_A), (MultiplierFamily::Weighted, CONJECTURED_B)] {
        for &(r, conjectured) in table {
            out.push(ClaimDef {
                id: format!("multiplier-{}", family.name(r)),
                kind: ClaimKind::Conjecture,
                suites: MULTIPLIERS,
                runner: Runner::Multiplier { family, r, conjectured },
            });
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn claim_ids() -> Vec<String> {
    claims().into_iter().map(|c| c.id).collect()
}

pub fn suite_claims(suite: &str) -> Result<Vec<String>> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    Ok(claims().into_iter().filter(|c| c.in_suite(suite)).map(|c| c.id).collect())
}

fn execute(selected: Vec<ClaimDef>, bank: &Arc<SequenceBank>, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    if config.n_max < 1 || config.prime_max < 2 {
        return Err(Error::UnsupportedParameter(format!(
            "need n_max >= 1 and prime_max >= 2, got {} and {}",
            config.n_max, config.prime_max
        )));
    }
    selected.par_iter().map(|c| c.run(bank, config)).collect()
}

/// Runs the named suites on a shared bank. Reports come back sorted by
/// claim id, each claim once.
pub fn run_suite_with(
    bank: &Arc<SequenceBank>,
    suites: &[impl AsRef<str>],
    config: &SuiteConfig,
) -> Result<Vec<VerificationReport>> {
    for s in suites {
        if !SUITES.contains(&s.as_ref()) {
            return Err(Error::UnknownSuite(s.as_ref().to_string()));
        }
    }
    let selected = claims()
        .into_iter()
        .filter(|c| suites.iter().any(|s| c.in_suite(s.as_ref())))
        .collect();
    execute(selected, bank, config)
}

pub fn run_suite(suites: &[impl AsRef<str>], config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    run_suite_with(&SequenceBank::shared(), suites, config)
}

/// Runs individual claims by id.
pub fn run_claims_with(
    bank: &Arc<SequenceBank>,
    ids: &[impl AsRef<str>],
    config: &SuiteConfig,
) -> Result<Vec<VerificationReport>> {
    let all = claims();
    for id in ids {
        if !all.iter().any(|c| c.id == id.as_ref()) {
            return Err(Error::UnknownClaim(id.as_ref().to_string()));
        }
    }
    let selected = all.into_iter().filter(|c| ids.iter().any(|i| i.as_ref() == c.id)).collect();
    execute(selected, bank, config)
}

pub fn run_claims(ids: &[impl AsRef<str>], config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    run_claims_with(&SequenceBank::shared(), ids, config)
}
