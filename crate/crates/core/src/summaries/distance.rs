//! Distance-based summary estimators with Kaplan-Meier style edge
//! correction: the empty space function F, the nearest neighbor distance
//! distribution G and their ratio J.
//!
//! Each observation is the failure distance `t = min(d_nn, d_boundary)`,
//! censored when the boundary is closer than the nearest neighbor. Ties are
//! grouped by exact equality of distances.

use crate::error::{Error, Result};
use crate::geometry::bucket::BucketGrid;
use crate::geometry::PointPattern;

use super::grid::{EvalGrid, SummaryCurve, SummaryId};

/// Default side length of the lattice of test locations for F.
pub const DEFAULT_F_LATTICE: usize = 128;

/// Product-limit estimate of the failure distribution, evaluated on a grid.
fn kaplan_meier(mut events: Vec<(f64, bool)>, grid: &EvalGrid) -> Vec<f64> {
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // Steps of the estimated cdf at each distinct uncensored distance.
    let mut steps: Vec<(f64, f64)> = Vec::new();
    let mut survival = 1.0;
    let mut i = 0;
    while i < events.len() {
        let s = events[i].0;
        let at_risk = (events.len() - i) as f64;
        let mut deaths = 0.0;
        let mut j = i;
        while j < events.len() && events[j].0 == s {
            if events[j].1 {
                deaths += 1.0;
            }
            j += 1;
        }
        if deaths > 0.0 {
            survival *= 1.0 - deaths / at_risk;
            steps.push((s, 1.0 - survival));
        }
        i = j;
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut cursor = 0;
    let mut current = 0.0;
    for &r in grid.values() {
        while cursor < steps.len() && steps[cursor].0 <= r {
            current = steps[cursor].1;
            cursor += 1;
        }
        values.push(current);
    }
    values
}

/// Nearest neighbor distance distribution function G.
pub fn g_est(pattern: &PointPattern, grid: &EvalGrid) -> Result<SummaryCurve> {
    if pattern.len() < 2 {
        return Err(Error::TooFewPoints { n: pattern.len(), needed: 2 });
    }
    let window = pattern.window();
    let pts = pattern.points();
    let lookup = BucketGrid::new(pts, window, 2.0);
    let events: Vec<(f64, bool)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let d_nn = lookup
                .nearest_distance(p.x, p.y, i as u32)
                .expect("n >= 2 guarantees a neighbor");
            let border = window.boundary_distance(p.x, p.y);
            (d_nn.min(border), d_nn <= border)
        })
        .collect();
    Ok(SummaryCurve::new(SummaryId::G, grid.clone(), kaplan_meier(events, grid)))
}

/// Empty space function F on the default 128 x 128 lattice.
pub fn f_est(pattern: &PointPattern, grid: &EvalGrid) -> Result<SummaryCurve> {
    f_est_with_lattice(pattern, grid, DEFAULT_F_LATTICE)
}

/// Empty space function F with test locations at the cell centers of an
/// `n_lattice x n_lattice` grid spanning the window.
///
/// Nearest-pattern distances are only needed exactly up to the grid
/// maximum: larger failure distances never step the product-limit estimate
/// inside the grid and keep their locations in every risk set, so they are
/// capped. Distances are gathered by scattering from the pattern points
/// onto the lattice cells within the cap.
pub fn f_est_with_lattice(
    pattern: &PointPattern,
    grid: &EvalGrid,
    n_lattice: usize,
) -> Result<SummaryCurve> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern { needed: 1 });
    }
    if n_lattice == 0 {
        return Err(Error::InvalidParameter {
            name: "n_lattice",
            message: "lattice must have at least one location".into(),
        });
    }
    let window = pattern.window();
    let step_x = window.width() / n_lattice as f64;
    let step_y = window.height() / n_lattice as f64;
    let cap = grid.r_max();
    let cap_sq = cap * cap;
    let beyond = (cap + step_x.max(step_y) + 1.0) * 2.0;
    let mut dist_sq = vec![f64::INFINITY; n_lattice * n_lattice];
    let lattice_x = |ix: usize| window.x0 + (ix as f64 + 0.5) * step_x;
    let lattice_y = |iy: usize| window.y0 + (iy as f64 + 0.5) * step_y;
    // Lattice index range whose cell centers lie within `cap` of `c` along
    // one axis, clamped to the lattice.
    let index_range = |c: f64, origin: f64, step: f64| -> std::ops::Range<usize> {
        let lo = ((c - cap - origin) / step - 0.5).ceil().max(0.0) as usize;
        let hi = ((c + cap - origin) / step - 0.5).floor();
        if hi < 0.0 {
            return 0..0;
        }
        lo.min(n_lattice)..(hi as usize + 1).min(n_lattice)
    };
    for p in pattern.points() {
        let ix_range = index_range(p.x, window.x0, step_x);
        for iy in index_range(p.y, window.y0, step_y) {
            let dy = lattice_y(iy) - p.y;
            let dy_sq = dy * dy;
            if dy_sq > cap_sq {
                continue;
            }
            let row = iy * n_lattice;
            for ix in ix_range.clone() {
                let dx = lattice_x(ix) - p.x;
                let d_sq = dx * dx + dy_sq;
                let slot = &mut dist_sq[row + ix];
                if d_sq < *slot {
                    *slot = d_sq;
                }
            }
        }
    }
    let mut events = Vec::with_capacity(n_lattice * n_lattice);
    for iy in 0..n_lattice {
        let y = lattice_y(iy);
        for ix in 0..n_lattice {
            let d_sq = dist_sq[iy * n_lattice + ix];
            let d_nn = if d_sq <= cap_sq { d_sq.sqrt() } else { beyond };
            let border = window.boundary_distance(lattice_x(ix), y);
            events.push((d_nn.min(border), d_nn <= border));
        }
    }
    Ok(SummaryCurve::new(SummaryId::F, grid.clone(), kaplan_meier(events, grid)))
}

/// J-function `(1 - G) / (1 - F)`, NaN wherever the F estimate reaches 1.
pub fn j_est(pattern: &PointPattern, grid: &EvalGrid) -> Result<SummaryCurve> {
    j_est_with_lattice(pattern, grid, DEFAULT_F_LATTICE)
}

pub fn j_est_with_lattice(
    pattern: &PointPattern,
    grid: &EvalGrid,
    n_lattice: usize,
) -> Result<SummaryCurve> {
    let f = f_est_with_lattice(pattern, grid, n_lattice)?;
    let g = g_est(pattern, grid)?;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&fv, &gv)| {
            let denom = 1.0 - fv;
            if denom == 0.0 {
                f64::NAN
            } else {
                (1.0 - gv) / denom
            }
        })
        .collect();
    Ok(SummaryCurve::new(SummaryId::J, grid.clone(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, Window};

    fn grid01() -> EvalGrid {
        EvalGrid::new(0.0, 1.0, 101).unwrap()
    }

    #[test]
    fn two_isolated_points_g_step() {
        // Two points 0.5 apart, both at least 0.5 from the boundary: a
        // single risk group fails at 0.5, so G jumps from 0 to 1 there.
        let w = Window::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let pat = PointPattern::new(
            vec![Point::new(0.75, 1.0), Point::new(1.25, 1.0)],
            w,
        )
        .unwrap();
        let g = g_est(&pat, &grid01()).unwrap();
        for (r, v) in g.grid.values().iter().zip(&g.values) {
            if *r >= 0.5 {
                assert_eq!(*v, 1.0);
            } else {
                assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn f_and_g_start_at_zero() {
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let pts = vec![
            Point::new(0.21, 0.33),
            Point::new(0.68, 0.45),
            Point::new(0.52, 0.81),
            Point::new(0.13, 0.74),
        ];
        let pat = PointPattern::new(pts, w).unwrap();
        let g = g_est(&pat, &grid01()).unwrap();
        let f = f_est_with_lattice(&pat, &grid01(), 32).unwrap();
        assert_eq!(g.values[0], 0.0);
        assert_eq!(f.values[0], 0.0);
        assert!(g.values.windows(2).all(|p| p[1] >= p[0]));
        assert!(f.values.windows(2).all(|p| p[1] >= p[0]));
        assert!(f.values.iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn j_is_nan_beyond_f_saturation() {
        // A dense grid of points makes every lattice location fail within
        // the range, driving the F estimate to exactly 1.
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let mut pts = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                pts.push(Point::new(0.05 + 0.1 * i as f64, 0.05 + 0.1 * j as f64));
            }
        }
        let pat = PointPattern::new(pts, w).unwrap();
        let j = j_est_with_lattice(&pat, &grid01(), 16).unwrap();
        assert!(j.values.last().unwrap().is_nan());
        let first_nan = j.values.iter().position(|v| v.is_nan()).unwrap();
        assert!(first_nan > 0);
        for v in &j.values[..first_nan] {
            assert!(v.is_finite() && *v >= 0.0);
        }
    }

    #[test]
    fn censored_points_reduce_risk_set() {
        // The corner point is censored by the boundary at 0.02, so the risk
        // set at the first failure has 3 members, not 4: the KM estimate is
        // 2/3 there, while the raw empirical cdf would give 1/2.
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let pat = PointPattern::new(
            vec![
                Point::new(0.02, 0.02),
                Point::new(0.5, 0.5),
                Point::new(0.5, 0.62),
                Point::new(0.35, 0.5),
            ],
            w,
        )
        .unwrap();
        let g = g_est(&pat, &grid01()).unwrap();
        // Failures: 0.12 (twice, risk set 3) then 0.15 (risk set 1).
        let at_013 = g.grid.first_at_least(0.13);
        assert!((g.values[at_013] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(*g.values.last().unwrap(), 1.0);
    }
}
