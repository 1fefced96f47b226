//! Sparse polynomials in the variables `z_γ`, determinants of matrices of
//! variables, evaluation, and coordinates in graded monomial bases.

mod basis;
mod json;
mod matrix;
mod poly;

pub use basis::{from_vector, to_vector, MonomialBasis};
pub use json::{poly_from_json, poly_to_json};
pub use matrix::{minor_det, SymbolicMatrix};
pub use poly::{poly_add, poly_mul, poly_sub, Poly, PolyMonomial, VarIndex, VarSpace};
