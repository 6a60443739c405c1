//! Exact decision procedures for positivity of hermiticity-preserving maps:
//! polynomial arithmetic, Sturm-Tarski queries, Choi matrices and positivity
//! polynomials, and a specialized quantifier-elimination pipeline.

pub mod error;
pub mod numkernel;
pub mod choi;
pub mod sturm;
pub mod renegar;
pub mod pipeline;

pub use error::{Error, Result};
pub use numkernel::{ComplexRational, MultiPoly, Rational, UniPoly};
