//! Exact scalar, Laurent-series, polynomial and dense-matrix arithmetic.
//!
//! Nothing in here touches floating point; every identity checked by the
//! rest of the crate is an exact equality.

mod eps;
mod matrix;
mod scalar;
mod sparse;
mod vpoly;

pub use eps::EpsSeries;
pub use matrix::{commutator, eps_limit, ExactMatrix};
pub use scalar::{rat, ExactDiv, Field, GaussianRational, Rational, Ring};
pub use sparse::SparseEchelon;
pub use vpoly::{VPoly, VPOLY_MAX_DEGREE};

use thiserror::Error;

/// Shorthand used throughout the crate.
pub type GR = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row},{col}) has a negative power of eps (lowest exponent {exponent})")]
    NegativePower {
        row: usize,
        col: usize,
        exponent: i32,
    },
    #[error("parse error: {0}")]
    Parse(String),
}
