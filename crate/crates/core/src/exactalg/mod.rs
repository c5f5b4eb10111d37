//! Exact algebra over ℚ(i): coefficients, polynomials, rational functions,
//! finite Laurent series in ζ, and matrices.

mod context;
mod laurent;
mod matrix;
mod parse;
mod poly;
mod rational;
mod ratfunc;
mod scalar;

pub use context::{Context, HEISENBERG_VARS, REAL_VARS};
pub use laurent::{zeta_split, ZetaLaurent};
pub use matrix::{Mat, MatRF};
pub use parse::{parse_poly, parse_rational_function};
pub use poly::{Monomial, MultiPoly};
pub use rational::CRational;
pub use ratfunc::RationalFunction;
pub use scalar::Scalar;

/// Polynomials in named commuting symbols; a Laurent pair in the context
/// supplies the rewrite `ζ·ζ⁻¹ = 1`.
pub type SymbolPoly = MultiPoly;

/// `a.num·b.den == b.num·a.den`.
pub fn rf_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.rf_equal(b)
}
