//! Exact-arithmetic models of hom-Lie, hom-associative, hom-Poisson and
//! hom-Gerstenhaber algebras, and of hom-Lie algebroids over polynomial
//! coordinate rings.
//!
//! Every structure is stored with rational coefficients and every axiom has a
//! checker that returns a [`CheckReport`] with reproducible counterexamples.
//!
//! Indices are 0-based throughout: the basis of a Lie algebra is `e0, e1, ...`
//! and the coordinates of the base space are `x0, x1, ...`.

pub mod error;
pub mod fixtures;
pub mod graded;
pub mod hom_algebras;
pub mod hom_algebroids;
pub mod hom_gerstenhaber;
pub mod multilinear;
pub mod poly;
pub mod poly_geometry;
pub mod random;
pub mod rational;
pub mod report;

pub use error::{HomError, Result};
pub use graded::MixedElement;
pub use multilinear::{ExtIndex, GradedElement, QMatrix, QVec, StructureConstants};
pub use poly::{MultiIndex, PolySubstitution, Polynomial};
pub use rational::Rational;
pub use report::{CheckReport, Violation};
