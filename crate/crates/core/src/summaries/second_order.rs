//! Second-order summary estimators: Ripley's K, the L-function and the
//! pair correlation function with Ripley's isotropic edge correction.

use crate::error::{Error, Result};
use crate::geometry::bucket::for_pairs_within;
use crate::geometry::PointPattern;

use super::edge::iso_weight;
use super::grid::{EvalGrid, SummaryCurve, SummaryId};

fn check_second_order(pattern: &PointPattern, grid: &EvalGrid) -> Result<()> {
    if pattern.len() < 2 {
        return Err(Error::TooFewPoints { n: pattern.len(), needed: 2 });
    }
    let bound = pattern.window().shorter_side() / 4.0;
    if grid.r_max() > bound {
        return Err(Error::RangeTooLarge { r_max: grid.r_max(), bound });
    }
    Ok(())
}

/// Ripley's K-function estimator: the edge-corrected count of ordered pairs
/// within distance `r`, scaled by `|W| / (n (n - 1))`.
pub fn k_est(pattern: &PointPattern, grid: &EvalGrid) -> Result<SummaryCurve> {
    check_second_order(pattern, grid)?;
    let pts = pattern.points();
    let window = pattern.window();
    let mut increments = vec![0.0f64; grid.len()];
    let mut error = None;
    for_pairs_within(pts, window, grid.r_max(), |i, j, d| {
        if error.is_some() || d == 0.0 {
            return;
        }
        let idx = grid.first_at_least(d);
        if idx >= grid.len() {
            return;
        }
        match (iso_weight(&pts[i], d, window), iso_weight(&pts[j], d, window)) {
            (Ok(wi), Ok(wj)) => increments[idx] += wi + wj,
            (Err(e), _) | (_, Err(e)) => error = Some(e),
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    let n = pattern.len() as f64;
    let scale = window.area() / (n * (n - 1.0));
    let mut acc = 0.0;
    let values = increments
        .iter()
        .map(|inc| {
            acc += inc;
            acc * scale
        })
        .collect();
    Ok(SummaryCurve::new(SummaryId::K, grid.clone(), values))
}

/// L-function: the variance-stabilizing transform `sqrt(K / pi)`.
pub fn l_est(pattern: &PointPattern, grid: &EvalGrid) -> Result<SummaryCurve> {
    Ok(l_from_k(&k_est(pattern, grid)?))
}

/// Transform a K curve into the corresponding L curve.
pub fn l_from_k(k: &SummaryCurve) -> SummaryCurve {
    let values = k.values.iter().map(|&v| (v / std::f64::consts::PI).sqrt()).collect();
    SummaryCurve::new(SummaryId::L, k.grid.clone(), values)
}

/// Epanechnikov kernel bandwidth from the Stoyan rule: the kernel's standard
/// deviation is `0.15 / sqrt(intensity)`, i.e. half-width `sqrt(5) * sd`.
pub fn stoyan_bandwidth(intensity: f64) -> f64 {
    5.0f64.sqrt() * 0.15 / intensity.sqrt()
}

/// Pair correlation function estimator: kernel-smoothed, edge-corrected pair
/// density scaled by `|W| / (2 pi r n (n - 1))`.
pub fn pcf_est(pattern: &PointPattern, grid: &EvalGrid) -> Result<SummaryCurve> {
    if pattern.len() < 2 {
        return Err(Error::TooFewPoints { n: pattern.len(), needed: 2 });
    }
    if grid.r_min() <= 0.0 {
        return Err(Error::InvalidGrid(
            "pair correlation grid must start above zero".into(),
        ));
    }
    let pts = pattern.points();
    let window = pattern.window();
    let h = stoyan_bandwidth(pattern.intensity());
    let kernel = |t: f64| -> f64 {
        let u = t / h;
        if u.abs() < 1.0 {
            0.75 * (1.0 - u * u) / h
        } else {
            0.0
        }
    };
    let mut sums = vec![0.0f64; grid.len()];
    let mut error = None;
    for_pairs_within(pts, window, grid.r_max() + h, |i, j, d| {
        if error.is_some() || d == 0.0 {
            return;
        }
        let w = match (iso_weight(&pts[i], d, window), iso_weight(&pts[j], d, window)) {
            (Ok(wi), Ok(wj)) => wi + wj,
            (Err(e), _) | (_, Err(e)) => {
                error = Some(e);
                return;
            }
        };
        let lo = grid.first_at_least(d - h);
        for g in lo..grid.len() {
            let t = grid.values()[g] - d;
            if t >= h {
                break;
            }
            sums[g] += w * kernel(t);
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    let n = pattern.len() as f64;
    let base = window.area() / (std::f64::consts::TAU * n * (n - 1.0));
    let values = sums
        .iter()
        .zip(grid.values())
        .map(|(s, r)| s * base / r)
        .collect();
    Ok(SummaryCurve::new(SummaryId::Pcf, grid.clone(), values))
}
