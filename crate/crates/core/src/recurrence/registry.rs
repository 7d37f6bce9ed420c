//! Built-in recurrence operators and combination certificates.
//!
//! Operator names follow the sequence they were derived for and their order:
//! `u3` is the third-order operator for `u`, `splus2` the second-order one for
//! `S_plus`, and so on. Each entry stores its coefficients at `n = 1` as a
//! transcription checksum.

use std::sync::LazyLock;

use num_bigint::BigInt;

use super::{CombinationCertificate, RecurrenceOperator};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::sequences::SequenceId;

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub operator: RecurrenceOperator,
    /// Sequences the operator annihilates from `first_index` on.
    pub targets: Vec<SequenceId>,
    pub first_index: u64,
    /// `c_0(1), ..., c_r(1)`.
    pub checksum_at_one: Vec<i64>,
}

impl RegistryEntry {
    pub fn checksum_matches(&self) -> bool {
        let expected: Vec<BigInt> = self.checksum_at_one.iter().map(|&c| BigInt::from(c)).collect();
        self.operator.values_at(1) == expected
    }
}

#[derive(Debug, Clone)]
pub struct CertificateEntry {
    pub certificate: CombinationCertificate,
    /// A sequence on which the executable induction is demonstrated.
    pub induction_target: SequenceId,
    /// The multiplier of the big operator as usually written, before the
    /// sign correction that makes the identity hold with the operators
    /// normalized as in this registry.
    pub printed_big_multiplier: IntPolynomial,
}

struct OperatorSpec {
    name: &'static str,
    description: &'static str,
    coeffs: &'static [&'static str],
    targets: &'static [SequenceId],
    checksum: &'static [i64],
}

const OPERATORS: &[OperatorSpec] = &[
    OperatorSpec {
        name: "u3",
        description: "third-order recurrence for u(n) = 4n S(n)",
        coeffs: &[
            "-9(n+1)^3(n+2)",
            "n(n+2)(19n^2+74n+87)",
            "-n(n+1)(n+3)(11n+29)",
            "n(n+1)(n+2)(n+3)",
        ],
        targets: &[SequenceId::U],
        checksum: &[-216, 540, -320, 24],
    },
    OperatorSpec {
        name: "u2",
        description: "second-order recurrence shared by u and v",
        coeffs: &[
            "9(n+1)^3(4n+11)(4n+7)",
            "-n(4n+3)(4n+11)(10n^2+30n+23)",
            "n(n+1)(n+2)(4n+3)(4n+7)",
        ],
        targets: &[SequenceId::U],
        checksum: &[11880, -6615, 462],
    },
    OperatorSpec {
        name: "v3",
        description: "third-order recurrence for v(n) = (n+1)^2 f(n) - n^2 f(n-1)",
        coeffs: &[
            "-9(n+1)^2(128n^4+1376n^3+5376n^2+9130n+5695)",
            "2432n^6+30880n^5+155712n^4+399646n^3+550013n^2+384657n+106920",
            "-(1408n^6+17696n^5+88512n^4+225582n^3+309049n^2+215886n+59535)",
            "(n+2)(n+3)(128n^4+864n^3+2016n^2+1994n+693)",
        ],
        targets: &[SequenceId::V],
        checksum: &[-781380, 1630260, -917668, 68340],
    },
    OperatorSpec {
        name: "v2",
        description: "second-order recurrence for v, identical to u2",
        coeffs: &[
            "9(n+1)^3(4n+11)(4n+7)",
            "-n(4n+3)(4n+11)(10n^2+30n+23)",
            "n(n+1)(n+2)(4n+3)(4n+7)",
        ],
        targets: &[SequenceId::V],
        checksum: &[11880, -6615, 462],
    },
    OperatorSpec {
        name: "s3",
        description: "third-order recurrence shared by s and w",
        coeffs: &["-9(n+1)^2", "19n^2+58n+63", "-(11n^2+46n+47)", "(n+3)^2"],
        targets: &[SequenceId::LowerS, SequenceId::W],
        checksum: &[-36, 140, -104, 16],
    },
    OperatorSpec {
        name: "s2",
        description: "second-order recurrence shared by s and x",
        coeffs: &["9(n+1)^2(8n+13)", "-(80n^3+234n^2+214n+63)", "(n+2)^2(8n+5)"],
        targets: &[SequenceId::LowerS],
        checksum: &[756, -591, 117],
    },
    OperatorSpec {
        name: "x3",
        description: "third-order recurrence for x(n) = (n+1)^2 h(n) - n^2 h(n-1)",
        coeffs: &[
            "-9(n+1)^2(4n-1)(512n^3+4288n^2+11544n+9837)",
            "38912n^6+453376n^5+2138848n^4+5339252n^3+7595337n^2+5794002n+1757133",
            "-(22528n^6+297728n^5+1584608n^4+4336564n^3+6403785n^2+4793214n+1395765)",
            "(n+3)^2(4n+15)(512n^3+2752n^2+4504n+2069)",
        ],
        targets: &[SequenceId::X],
        checksum: &[-2827548, 23116860, -18834192, 2990448],
    },
    OperatorSpec {
        name: "x2",
        description: "second-order recurrence for x, identical to s2",
        coeffs: &["9(n+1)^2(8n+13)", "-(80n^3+234n^2+214n+63)", "(n+2)^2(8n+5)"],
        targets: &[SequenceId::X],
        checksum: &[756, -591, 117],
    },
    OperatorSpec {
        name: "splus3",
        description: "third-order recurrence for S_plus",
        coeffs: &[
            "-9(n+1)^2(16n^2+101n+156)",
            "304n^4+2943n^3+10721n^2+18171n+12672",
            "-(176n^4+1911n^3+7600n^2+13101n+8217)",
            "(n+3)^2(16n^2+69n+71)",
        ],
        targets: &[SequenceId::SPlus],
        checksum: &[-9828, 44811, -31005, 2496],
    },
    OperatorSpec {
        name: "splus2",
        description: "second-order recurrence shared by S_plus and y",
        coeffs: &[
            "9(n+1)^2(256n^4+2304n^3+7552n^2+10704n+5563)",
            "-(2560n^6+25600n^5+100096n^4+194848n^3+198238n^2+99610n+19677)",
            "(n+2)^2(256n^4+1280n^3+2176n^2+1488n+363)",
        ],
        targets: &[SequenceId::SPlus, SequenceId::Y],
        checksum: &[949644, -640629, 50067],
    },
    OperatorSpec {
        name: "y3",
        description: "third-order recurrence for y(n) = (n+1)^2 e(n) - n^2 e(n-1)",
        coeffs: &[
            "-9(n+1)^2(1024n^5+15104n^4+86912n^3+244352n^2+336500n+182037)",
            "19456n^7+324864n^6+2232448n^5+8173312n^4+17192092n^3+20752931n^2+13332438n+3555639",
            "-(11264n^7+186624n^6+1275008n^5+4648064n^4+9750908n^3+11764759n^2+7570338n+2011779)",
            "(n+3)^2(1024n^5+9984n^4+36736n^3+64000n^2+53236n+17057)",
        ],
        targets: &[SequenceId::Y],
        checksum: &[-31173444, 65583180, -37218744, 2912592],
    },
];

struct CertificateSpec {
    name: &'static str,
    big: &'static str,
    small: &'static str,
    printed_big_multiplier: &'static str,
    flip_sign: bool,
    shift_multiplier: &'static str,
    base_multiplier: &'static str,
    induction_target: SequenceId,
}

const CERTIFICATES: &[CertificateSpec] = &[
    CertificateSpec {
        name: "u",
        big: "u3",
        small: "u2",
        printed_big_multiplier: "(4n+11)(4n+7)",
        flip_sign: true,
        shift_multiplier: "n",
        base_multiplier: "n+2",
        induction_target: SequenceId::U,
    },
    CertificateSpec {
        name: "v",
        big: "v3",
        small: "v2",
        printed_big_multiplier: "(4n+11)(4n+7)(n+1)",
        flip_sign: true,
        shift_multiplier: "128n^4+864n^3+2016n^2+1994n+693",
        base_multiplier: "128n^4+1376n^3+5376n^2+9130n+5695",
        induction_target: SequenceId::V,
    },
    CertificateSpec {
        name: "s",
        big: "s3",
        small: "s2",
        printed_big_multiplier: "8n+13",
        flip_sign: true,
        shift_multiplier: "1",
        base_multiplier: "1",
        induction_target: SequenceId::LowerS,
    },
    CertificateSpec {
        name: "x",
        big: "x3",
        small: "x2",
        printed_big_multiplier: "8n+13",
        flip_sign: false,
        shift_multiplier: "-(4n+15)(512n^3+2752n^2+4504n+2069)",
        base_multiplier: "-(4n-1)(512n^3+4288n^2+11544n+9837)",
        induction_target: SequenceId::X,
    },
    CertificateSpec {
        name: "splus",
        big: "splus3",
        small: "splus2",
        printed_big_multiplier: "256n^4+2304n^3+7552n^2+10704n+5563",
        flip_sign: true,
        shift_multiplier: "16n^2+69n+71",
        base_multiplier: "16n^2+101n+156",
        induction_target: SequenceId::SPlus,
    },
    CertificateSpec {
        name: "y",
        big: "y3",
        small: "splus2",
        printed_big_multiplier: "256n^4+2304n^3+7552n^2+10704n+5563",
        flip_sign: true,
        shift_multiplier: "1024n^5+9984n^4+36736n^3+64000n^2+53236n+17057",
        base_multiplier: "1024n^5+15104n^4+86912n^3+244352n^2+336500n+182037",
        induction_target: SequenceId::Y,
    },
];

fn poly(text: &str) -> IntPolynomial {
    text.parse().unwrap_or_else(|e| panic!("registry polynomial `{text}`: {e}"))
}

static OPERATOR_ENTRIES: LazyLock<Vec<RegistryEntry>> = LazyLock::new(|| {
    OPERATORS
        .iter()
        .map(|spec| RegistryEntry {
            name: spec.name,
            description: spec.description,
            operator: RecurrenceOperator::from_polynomials(spec.coeffs)
                .unwrap_or_else(|e| panic!("registry operator {}: {e}", spec.name)),
            targets: spec.targets.to_vec(),
            first_index: 1,
            checksum_at_one: spec.checksum.to_vec(),
        })
        .collect()
});

static CERTIFICATE_ENTRIES: LazyLock<Vec<CertificateEntry>> = LazyLock::new(|| {
    CERTIFICATES
        .iter()
        .map(|spec| {
            let printed = poly(spec.printed_big_multiplier);
            let big_multiplier = if spec.flip_sign { -&printed } else { printed.clone() };
            let certificate = CombinationCertificate::new(
                spec.name,
                operator(spec.big).expect("registered").operator,
                operator(spec.small).expect("registered").operator,
                big_multiplier,
                poly(spec.shift_multiplier),
                poly(spec.base_multiplier),
            )
            .unwrap_or_else(|e| panic!("certificate {}: {e}", spec.name));
            CertificateEntry {
                certificate,
                induction_target: spec.induction_target.clone(),
                printed_big_multiplier: printed,
            }
        })
        .collect()
});

pub fn operators() -> &'static [RegistryEntry] {
    &OPERATOR_ENTRIES
}

pub fn operator(name: &str) -> Result<RegistryEntry> {
    OPERATOR_ENTRIES
        .iter()
        .find(|e| e.name == name)
        .cloned()
        .ok_or_else(|| Error::UnsupportedParameter(format!("no registered operator `{name}`")))
}

pub fn certificates() -> Vec<CertificateEntry> {
    CERTIFICATE_ENTRIES.clone()
}

pub fn certificate(name: &str) -> Result<CertificateEntry> {
    CERTIFICATE_ENTRIES
        .iter()
        .find(|e| e.certificate.name == name)
        .cloned()
        .ok_or_else(|| Error::UnsupportedParameter(format!("no registered certificate `{name}`")))
}

/// Every (operator, sequence) pair the registry asserts.
pub fn annihilation_pairs() -> Vec<(&'static str, SequenceId)> {
    OPERATOR_ENTRIES
        .iter()
        .flat_map(|e| e.targets.iter().map(move |t| (e.name, t.clone())))
        .collect()
}
