//! Exact arithmetic substrate: rationals, finite fields, dense matrices,
//! polynomials and small-field subspace enumeration.

pub mod csv;
pub mod field;
pub mod intmat;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod subspace;

pub use field::{Field, FiniteField, Gf, Rationals};
pub use matrix::Matrix;
pub use rational::Rational;
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace};
