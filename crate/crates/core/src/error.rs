use thiserror::Error;

use crate::term::{ArrowType, Path, Sig};
use crate::text::SourceSpan;

fn show_path(path: &Path) -> String {
    crate::theory::proof::format_path(path)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error(
        "constructor at {} does not belong to the {sig} signature",
        show_path(path)
    )]
    SignatureViolation { sig: Sig, path: Path },
    #[error(
        "cannot compose at {}: left operand has type {left}, right operand has type {right}",
        show_path(path)
    )]
    CompositionMismatch {
        path: Path,
        left: ArrowType,
        right: ArrowType,
    },
}

impl TypeError {
    pub fn path(&self) -> &Path {
        match self {
            TypeError::SignatureViolation { path, .. } => path,
            TypeError::CompositionMismatch { path, .. } => path,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("`{token}` at {span} is not part of the {sig} signature")]
    SignatureViolation {
        span: SourceSpan,
        token: String,
        sig: Sig,
    },
    #[error("type error at {span}: {source}")]
    Type {
        span: SourceSpan,
        #[source]
        source: TypeError,
    },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::SignatureViolation { span, .. }
            | ParseError::Type { span, .. } => *span,
        }
    }
}

/// Errors of an equality query that is ill-posed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("terms have different types: {left} vs {right}")]
    TypeMismatch { left: ArrowType, right: ArrowType },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("cannot stack diagrams: upper diagram has {upper} bottom points, lower diagram has {lower} top points")]
    BoundaryMismatch { upper: usize, lower: usize },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
}

/// The first failing step of a proof that does not check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct ProofFailure {
    /// The failing step, or `StepIndex::Start` for problems with the start term.
    pub step: StepIndex,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepIndex {
    Start,
    Step(usize),
}

impl std::fmt::Display for StepIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepIndex::Start => f.write_str("START"),
            StepIndex::Step(i) => write!(f, "{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Term {
        line: usize,
        #[source]
        source: ParseError,
    },
}
