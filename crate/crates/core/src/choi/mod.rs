//! Hermiticity-preserving maps, their Choi operators and positivity
//! polynomials.

mod map;
mod operator;
mod poly;
pub mod random;

pub use map::{apply_map, CMatrix, HermMap, KrausTerm};
pub use operator::{choi_matrix, ChoiOperator};
pub use poly::{
    cross_check_routes, positivity_poly, positivity_poly_double_sum, positivity_poly_from_choi,
    positivity_poly_from_kraus, positivity_vars, PositivityPolynomial, Route,
};
