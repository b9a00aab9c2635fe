//! The proof kernel: derivations, rule schemas, and the split-mode decision
//! procedure.

pub mod check;
pub mod derivation;
pub mod rewrite;
pub mod rules;
pub(crate) mod rules_formers;

pub use check::{check_eq, check_judgment, CheckReport, Verdict};
pub use derivation::{EqDerivation, Inst};
pub use rewrite::{decide_eq_split, RewriteStep, RewriteTrace, SplitVerdict};
