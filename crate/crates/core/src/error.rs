use thiserror::Error;

use crate::automaton::{PostulateViolation, StochasticViolation};
use crate::monoid::{Generator, MonoidError};
use crate::numerics::NumericsError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("no matrix for generator `{0}`")]
    MissingMatrix(Generator),
    #[error("matrix given for `{0}`, which is not a generator of the monoid")]
    ForeignMatrix(Generator),
    #[error("{what} has dimension {found}, expected {expected}")]
    Shape {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("extension postulate violated: {0}")]
    Postulate(Box<PostulateViolation>),
    #[error("not a stochastic automaton: {}", describe_violations(.0))]
    NotStochastic(Vec<StochasticViolation>),
    #[error("cut point must be positive, got {0}")]
    NonPositiveCut(String),
    #[error("cut point {0} lies outside [0, 1]")]
    CutOutOfRange(String),
    #[error("isolation gap must be positive, got {0}")]
    NonPositiveGap(String),
    #[error("isolation witness is for cut point {witness}, not {requested}")]
    IsolationMismatch { witness: String, requested: String },
    #[error("stage `{found}` cannot feed this step, it needs `{expected}`")]
    StageMisuse { expected: String, found: String },
    #[error("operands use different monoids")]
    MonoidMismatch,
    #[error("{what} has a negative entry {value}")]
    Negative { what: String, value: String },
    #[error("regular operand is not a deterministic complete acceptor: {0}")]
    NotDeterministic(String),
    #[error("state {state} is out of range for {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error("{0} needs the exact rational backend")]
    ExactBackendRequired(&'static str),
    #[error("{0} needs the float backend")]
    FloatBackendRequired(&'static str),
    #[error("document: {0}")]
    Document(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn describe_violations(v: &[StochasticViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
