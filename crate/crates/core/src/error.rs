use thiserror::Error;

use crate::algebra::BasisSymbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no negative powers")]
    NonInvertible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("polynomial lives in {found} variables, expected {expected}")]
    VariableCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{symbol} is excluded: {reason}")]
    ExcludedSymbol { symbol: BasisSymbol, reason: String },
    #[error("{symbol} has a negative second index")]
    NegativeSecondIndex { symbol: BasisSymbol },
    #[error("{symbol} lies outside the truncation range {k}..={l}")]
    TruncationRange { symbol: BasisSymbol, k: i64, l: i64 },
    #[error("{symbol} has the wrong arity for {algebra}")]
    Arity {
        symbol: BasisSymbol,
        algebra: String,
    },
    #[error("elements belong to different algebras")]
    KindMismatch,
    #[error("invalid algebra: {0}")]
    InvalidKind(String),
    /// Internal invariant: a derived-algebra bracket produced a symbol that
    /// is not in its basis.
    #[error("bracket emitted the excluded symbol {symbol}")]
    ExcludedSymbolEmitted { symbol: BasisSymbol },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("invalid module: {0}")]
    InvalidSpec(String),
    #[error("vector or symbol does not fit the module: {0}")]
    KindMismatch(String),
    #[error("{0} is not in the submodule tΩ (nonzero constant term)")]
    NotInSubmodule(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the window {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("invalid probe configuration: {0}")]
    InvalidConfig(String),
    #[error("closure did not stabilise within {0} rounds")]
    MaxRoundsExceeded(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    ZeroDenominator,
    Overflow,
    Arity,
    Symbol(AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax,
            offset,
            message: message.into(),
        }
    }
}

/// Umbrella error for callers that mix several subsystems.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error(transparent)]
    Derive(#[from] crate::module::DeriveError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed table: {0}")]
    Table(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
