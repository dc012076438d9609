//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Ring`] pairs an ordered [`VarSet`] with a coefficient [`Domain`]. The
//! variable order fixes the monomial order (graded reverse lexicographic, the
//! first declared variable largest), which in turn fixes the canonical text
//! form produced by `Display` and accepted back by [`parse_poly`].

mod coeff;
mod monomial;
mod parse;
mod poly;

pub(crate) use coeff::mod_inverse;
pub use coeff::{Coeff, Domain, DEFAULT_PRIME};
pub use monomial::{monomials_of_degree, Monomial, VarSet};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{arith, ArithKind, Polynomial, Ring};
