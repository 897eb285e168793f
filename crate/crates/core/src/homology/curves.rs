//! The five topological summary curves built from the alpha filtration:
//! Betti curves, accumulated persistence functions and the Euler
//! characteristic curve.
//!
//! Grid conventions follow the defining indicators exactly: a feature with
//! `birth == r` counts as born at `r`, one with `death == r` is no longer
//! alive at `r` (the alive condition is `birth <= r < death`).

use crate::geometry::AlphaFiltration;
use crate::summaries::{EvalGrid, SummaryCurve, SummaryId};

use super::persistence::PersistenceDiagram;

/// Betti curve of one dimension: number of features alive at each radius.
pub fn betti_curve(diagram: &PersistenceDiagram, dim: u8, grid: &EvalGrid) -> SummaryCurve {
    let id = if dim == 0 { SummaryId::Beta0 } else { SummaryId::Beta1 };
    let mut delta = vec![0i64; grid.len() + 1];
    for f in diagram.features_of_dim(dim) {
        let start = grid.first_at_least(f.birth);
        if start >= grid.len() {
            continue;
        }
        let stop = if f.death.is_finite() {
            grid.first_at_least(f.death)
        } else {
            grid.len()
        };
        if stop > start {
            delta[start] += 1;
            delta[stop] -= 1;
        }
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut acc = 0i64;
    for d in &delta[..grid.len()] {
        acc += d;
        values.push(acc as f64);
    }
    SummaryCurve::new(id, grid.clone(), values)
}

/// Accumulated persistence function.
///
/// Dimension 0 accumulates death times of finite features (`sum d_j` over
/// `d_j <= r`); dimension 1 accumulates lifetimes from the birth on
/// (`sum (d_j - b_j)` over `b_j <= r`).
pub fn apf(diagram: &PersistenceDiagram, dim: u8, grid: &EvalGrid) -> SummaryCurve {
    let id = if dim == 0 { SummaryId::Apf0 } else { SummaryId::Apf1 };
    let mut delta = vec![0.0f64; grid.len() + 1];
    for f in diagram.features_of_dim(dim) {
        if dim == 0 {
            if !f.death.is_finite() {
                continue;
            }
            let start = grid.first_at_least(f.death);
            if start < grid.len() {
                delta[start] += f.death;
            }
        } else {
            debug_assert!(f.death.is_finite());
            let start = grid.first_at_least(f.birth);
            if start < grid.len() {
                delta[start] += f.death - f.birth;
            }
        }
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    for d in &delta[..grid.len()] {
        acc += d;
        values.push(acc);
    }
    SummaryCurve::new(id, grid.clone(), values)
}

/// Euler characteristic curve computed directly from simplex counts:
/// `chi(r) = V(r) - E(r) + T(r)` over simplices with radius `<= r`.
///
/// This is an implementation path independent of the persistence pairing,
/// so `chi = beta0 - beta1` is a meaningful cross-check.
pub fn euler_curve(filtration: &AlphaFiltration, grid: &EvalGrid) -> SummaryCurve {
    let radii = [
        filtration.sorted_radii(0),
        filtration.sorted_radii(1),
        filtration.sorted_radii(2),
    ];
    let mut cursor = [0usize; 3];
    let mut values = Vec::with_capacity(grid.len());
    for &r in grid.values() {
        for d in 0..3 {
            while cursor[d] < radii[d].len() && radii[d][cursor[d]] <= r {
                cursor[d] += 1;
            }
        }
        values.push(cursor[0] as f64 - cursor[1] as f64 + cursor[2] as f64);
    }
    SummaryCurve::new(SummaryId::Euler, grid.clone(), values)
}
