//! Persistent homology of alpha filtrations and the topological summary
//! curves derived from it.

pub mod curves;
pub mod persistence;

pub use curves::{apf, betti_curve, euler_curve};
pub use persistence::{persistence, Feature, PersistenceDiagram};
