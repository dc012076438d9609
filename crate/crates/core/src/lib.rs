//! Exact construction and certification of the determinantal free complexes
//! attached to four elements `f1, f2, f3, f4` of a polynomial ring.
//!
//! The crate is organised bottom-up:
//!
//! - [`polyring`]: sparse multivariate polynomials over ℤ, ℚ and prime fields,
//!   with a text parser and a canonical printer.
//! - [`constructions`]: the eight `a × (a+1)` blocks, the assembled matrices
//!   `A, B, A', A'', B', B'', C, D`, the sign-swapping substitution and a
//!   signed-permutation equivalence search.
//! - [`complexes`]: graded free complexes built from those matrices, with
//!   composition checks, duals, Betti tables and gap classification.
//! - [`gradedla`]: degreewise linear algebra over a field: graded pieces of
//!   maps, ranks, homology, Hilbert functions, minors, regular sequences and
//!   saturation.
//! - [`curve`]: the monomial curves `(s^d : s^a t^b : s^b t^a : t^d)` on the
//!   quadric `x0*x3 - x1*x2` and their Hartshorne–Rao modules.

pub mod complexes;
pub mod constructions;
pub mod curve;
pub mod error;
pub mod gradedla;
pub mod polyring;

pub use error::{Error, Result};
