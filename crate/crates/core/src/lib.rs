//! Exact arithmetic for Lie conformal algebras, their modules and gradings.

pub mod annih;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod exactpoly;
pub mod funceq;
pub mod grading;
pub mod linalg;
pub mod report;
pub mod repr;

pub use error::{Error, Result};
