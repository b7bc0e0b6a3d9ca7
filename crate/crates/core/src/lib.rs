//! Stochastic and generalized automata over finitely generated monoids.

pub mod automaton;
pub mod boolean;
pub mod cli;
pub mod closures;
pub mod document;
pub mod error;
pub mod gallery;
pub mod monoid;
pub mod numerics;
pub mod turakainen;

pub use automaton::{GeneralizedAutomaton, StochasticAutomaton};
pub use error::{Error, Result};
pub use monoid::{Generator, MonoidMap, MonoidSpec, Word};
pub use numerics::{ratio, Backend, ColVec, Matrix, Rational, RowVec, Scalar};
