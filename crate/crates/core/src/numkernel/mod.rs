//! Exact scalars, polynomials and determinants.

pub mod det;
pub mod modular;
pub mod mpoly;
pub mod parse;
pub mod rational;
pub mod upoly;

pub use det::fraction_free_det;
pub use mpoly::{indexed_vars, vars, Monomial, MultiPoly, Vars};
pub use parse::{parse_poly, parse_upoly};
pub use rational::{format_rational, int, parse_rational, rat, ComplexRational, Rational};
pub use upoly::{Degree, UniPoly};
