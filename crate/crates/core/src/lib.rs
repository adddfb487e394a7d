//! Exact generalized Macdonald polynomials for graded Lie algebras.
//!
//! The crate computes the constant-term pairing attached to the weight data
//! of a graded Lie (super)algebra, orthogonalizes the monomial basis of
//! Weyl-invariant characters against it, and runs BGG-reciprocity
//! diagnostics on the result. An independent route through exact
//! Chevalley–Eilenberg cohomology of finite-dimensional truncations checks
//! that the pairing is the graded Euler characteristic of relative Ext.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and series in `q`, `t` are truncated at explicit bounds.

pub mod charring;
pub mod config;
pub mod error;
pub mod homology;
pub mod liedata;
pub mod macdonald;
pub mod pairing;
pub mod rootsys;
pub mod series;

pub use charring::CharElement;
pub use error::{Error, Result};
pub use liedata::{CoefficientSpec, GradedLieData};
pub use macdonald::{MacdonaldEngine, MacdonaldResult};
pub use rootsys::{LieType, RootSystem, Weight};
pub use series::{SeriesQT, Trunc};

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
