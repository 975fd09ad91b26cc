//! Newton polyhedra, loose edges and graded lifting of factorizations of
//! multivariate power series, in exact arithmetic.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod geometry;
pub mod grading;
pub mod lifting;
pub mod screen;
pub mod series;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{Field, FieldValue};
pub use series::{Exponent, Series};
