//! Claim registry, suite runner, reports and the multiplier explorer.

pub mod claims;
pub mod multiplier;
pub mod report;
mod suite;

pub use claims::{check_congruence, check_identity, CongruenceClaim, IdentityClaim, IndexSet, Modulus};
pub use multiplier::{minimal_multiplier, multiplier_report, MultiplierFamily, CONJECTURED_A, CONJECTURED_B};
pub use report::{ClaimKind, Failure, FailureReason, Note, Status, VerificationReport};
pub use suite::{
    claim_ids, claims, run_claims, run_claims_with, run_suite, run_suite_with, suite_claims, ClaimDef,
    SuiteConfig, SUITES,
};
