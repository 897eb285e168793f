//! Functional summary statistics of point patterns: second-order (K, L,
//! pcf), distance-based (F, G, J) and the shared evaluation-grid types.
//! The topological curves live in the homology module.

pub mod distance;
pub mod edge;
pub mod grid;
pub mod second_order;

pub use distance::{f_est, f_est_with_lattice, g_est, j_est, j_est_with_lattice, DEFAULT_F_LATTICE};
pub use edge::iso_weight;
pub use grid::{EvalGrid, SummaryCurve, SummaryId, DEFAULT_GRID_POINTS};
pub use second_order::{k_est, l_est, l_from_k, pcf_est, stoyan_bandwidth};
