//! Exact-arithmetic toolkit for the homogeneous Galilei algebra hg(1,3):
//! its ten indecomposable vector/scalar representations, Inönü–Wigner
//! contractions of Lorentz representations, and machine-checked Galilei
//! covariance of Galilean electromagnetic field systems.

// Index loops below mirror tensor index notation (a, b, c over x, y, z).
#![allow(clippy::needless_range_loop)]

pub mod contraction;
pub mod exactmath;
pub mod fieldsys;
pub mod limits;
pub mod par;
pub mod reps;

pub use exactmath::{ExactMatrix, GaussianRational, MathError, GR};
