//! Error codes shared by synthesis, the kernel, and theory loading.

use thiserror::Error;

use crate::syntax::judgment::Judgment;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CheckError {
    #[error("ill-formed type at {path}: {reason}")]
    IllFormedType { path: String, reason: String },

    #[error("context mismatch at {path}: expected {expected}, found {found}")]
    ContextMismatch {
        expected: String,
        found: String,
        path: String,
    },

    #[error("ill-formed subterm at {path}: {reason}")]
    IllFormedSubterm { path: String, reason: String },

    #[error("missing side condition for rule {rule}: {judgment}")]
    MissingSideCondition { rule: String, judgment: String },

    #[error("not an MLTT term (section) at {path}: {reason}")]
    NotASection { path: String, reason: String },

    #[error("variance error at {path}: {reason}")]
    VarianceError { path: String, reason: String },

    #[error("stale evidence on i-sub node: {0}")]
    StaleEvidence(String),

    #[error("unknown rule {0}")]
    UnknownRule(String),

    #[error("schema mismatch in rule {rule}: metavariable {metavar} expected {expected}, found {found}")]
    SchemaMismatch {
        rule: String,
        metavar: String,
        expected: String,
        found: String,
    },

    #[error("boundary mismatch at {path}: {reason}")]
    BoundaryMismatch { path: String, reason: String },

    #[error("goal requires split mode")]
    NotSplitMode,

    #[error("equality goal in non-split mode needs a derivation: {0}")]
    EvidenceRequired(String),

    #[error("feature {0} is not enabled in this theory")]
    MissingFeature(&'static str),

    #[error("unbound constant {0}")]
    UnboundConstant(String),

    #[error("unknown axiom {0}")]
    UnknownAxiom(String),

    #[error("rewrite fuel exhausted")]
    FuelExhausted,

    #[error("declaration error: {0}")]
    Declaration(String),
}

impl CheckError {
    pub fn code(&self) -> &'static str {
        match self {
            CheckError::IllFormedType { .. } => "IllFormedType",
            CheckError::ContextMismatch { .. } => "ContextMismatch",
            CheckError::IllFormedSubterm { .. } => "IllFormedSubterm",
            CheckError::MissingSideCondition { .. } => "MissingSideCondition",
            CheckError::NotASection { .. } => "NotASection",
            CheckError::VarianceError { .. } => "VarianceError",
            CheckError::StaleEvidence(_) => "StaleEvidence",
            CheckError::UnknownRule(_) => "UnknownRule",
            CheckError::SchemaMismatch { .. } => "SchemaMismatch",
            CheckError::BoundaryMismatch { .. } => "BoundaryMismatch",
            CheckError::NotSplitMode => "NotSplitMode",
            CheckError::EvidenceRequired(_) => "EvidenceRequired",
            CheckError::MissingFeature(_) => "MissingFeature",
            CheckError::UnboundConstant(_) => "UnboundConstant",
            CheckError::UnknownAxiom(_) => "UnknownAxiom",
            CheckError::FuelExhausted => "FuelExhausted",
            CheckError::Declaration(_) => "Declaration",
        }
    }

    pub fn missing_side_condition(rule: &str, j: &Judgment) -> CheckError {
        CheckError::MissingSideCondition {
            rule: rule.to_string(),
            judgment: j.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CheckError>;
