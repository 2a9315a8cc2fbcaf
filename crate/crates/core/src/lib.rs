//! Exact-arithmetic verification toolkit.
//!
//! Every quantity here is computed exactly (big integers, rationals, finite
//! fields) apart from the trigonometric sums in [`frobcount`], which use a
//! fixed-point evaluator with explicit slack.

pub mod affq;
pub mod algebra;
pub mod error;
pub mod flatseries;
pub mod frobcount;
pub mod hodge;
pub mod rng;
pub mod rootfilt;
pub mod semilinear;
pub mod ser;
pub mod symplectic;

pub use error::{Error, Result};
