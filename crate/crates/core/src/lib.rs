//! Worst-case and average-case hyperbolicity measures on graphs and point clouds.

pub mod diagnostics;
pub mod error;
pub mod estimators;
pub mod euclidean;
pub mod experiments;
pub mod generators;
pub mod geodesics;
pub mod metric;
pub mod triangle;

pub use error::{Error, Result};
