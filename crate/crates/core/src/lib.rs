//! Monte Carlo goodness-of-fit testing for planar spatial point patterns.

pub mod error;
pub mod geometry;
pub mod gof;
pub mod homology;
pub mod models;
pub mod study;
pub mod summaries;

pub use error::{Error, Result};
