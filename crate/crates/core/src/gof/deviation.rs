//! Scalar test statistics: deviation-based (MAD, DCLF, ST, QDIR, CRPS,
//! ordered by "larger is extreme") and the raw scalars INT and POINT
//! (two-sided extremeness).
//!
//! The reference curve for MAD and DCLF is the leave-one-out pointwise mean,
//! so each pattern is compared against the mean of the other `m`; ST and
//! QDIR standardize with the pointwise mean, standard deviation and
//! quantiles of all `m + 1` curves. Both constructions are symmetric in the
//! patterns and keep the Monte Carlo test exchangeable.

use crate::error::{Error, Result};

use super::ensemble::{trapezoid, CurveEnsemble};

/// Denominators below this are dropped from scaled suprema.
const DENOMINATOR_FLOOR: f64 = 1e-12;

fn leave_one_out_deviations(ens: &CurveEnsemble, len: usize) -> Vec<Vec<f64>> {
    let curves = ens.curves();
    let n = curves.len() as f64;
    let mut sums = vec![0.0f64; len];
    for curve in curves {
        for (s, v) in sums.iter_mut().zip(curve) {
            *s += v;
        }
    }
    curves
        .iter()
        .map(|curve| {
            (0..len)
                .map(|g| {
                    let reference = (sums[g] - curve[g]) / (n - 1.0);
                    curve[g] - reference
                })
                .collect()
        })
        .collect()
}

/// Maximum absolute deviation from the leave-one-out mean.
pub fn mad(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 2 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 2 });
    }
    let len = ens.valid_prefix(r_upper)?;
    Ok(leave_one_out_deviations(ens, len)
        .iter()
        .map(|dev| dev.iter().fold(0.0f64, |acc, d| acc.max(d.abs())))
        .collect())
}

/// Integrated squared deviation from the leave-one-out mean.
pub fn dclf(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 2 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 2 });
    }
    let len = ens.valid_prefix(r_upper)?;
    Ok(leave_one_out_deviations(ens, len)
        .iter()
        .map(|dev| {
            let sq: Vec<f64> = dev.iter().map(|d| d * d).collect();
            trapezoid(ens.grid(), &sq, len)
        })
        .collect())
}

struct PointwiseStats {
    mean: Vec<f64>,
    sd: Vec<f64>,
    q_low: Vec<f64>,
    q_high: Vec<f64>,
}

/// Linear-interpolation quantile of already sorted values.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

fn pointwise_stats(ens: &CurveEnsemble, len: usize) -> PointwiseStats {
    let curves = ens.curves();
    let n = curves.len() as f64;
    let mut mean = Vec::with_capacity(len);
    let mut sd = Vec::with_capacity(len);
    let mut q_low = Vec::with_capacity(len);
    let mut q_high = Vec::with_capacity(len);
    let mut column = vec![0.0f64; curves.len()];
    for g in 0..len {
        for (slot, curve) in column.iter_mut().zip(curves) {
            *slot = curve[g];
        }
        let mu = column.iter().sum::<f64>() / n;
        let var = column.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (n - 1.0);
        mean.push(mu);
        sd.push(var.sqrt());
        column.sort_by(|a, b| a.partial_cmp(b).unwrap());
        q_low.push(quantile_sorted(&column, 0.025));
        q_high.push(quantile_sorted(&column, 0.975));
    }
    PointwiseStats { mean, sd, q_low, q_high }
}

/// Studentised maximum absolute deviation.
pub fn st(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 20 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 20 });
    }
    let len = ens.valid_prefix(r_upper)?;
    let stats = pointwise_stats(ens, len);
    let usable: Vec<usize> = (0..len).filter(|&g| stats.sd[g] >= DENOMINATOR_FLOOR).collect();
    if usable.is_empty() {
        return Err(Error::DegenerateEnsemble(
            "all grid points excluded: pointwise standard deviation vanishes".into(),
        ));
    }
    if usable.len() < len {
        log::warn!(
            "st: dropped {} grid points with vanishing standard deviation",
            len - usable.len()
        );
    }
    Ok(ens
        .curves()
        .iter()
        .map(|curve| {
            usable
                .iter()
                .map(|&g| ((curve[g] - stats.mean[g]) / stats.sd[g]).abs())
                .fold(0.0f64, f64::max)
        })
        .collect())
}

/// Directional-quantile scaled maximum deviation.
pub fn qdir(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 20 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 20 });
    }
    let len = ens.valid_prefix(r_upper)?;
    let stats = pointwise_stats(ens, len);
    // A grid point is kept only when both directional denominators are
    // usable; the rule is a symmetric function of the ensemble.
    let usable: Vec<(usize, f64, f64)> = (0..len)
        .filter_map(|g| {
            let up = stats.q_high[g] - stats.mean[g];
            let down = stats.mean[g] - stats.q_low[g];
            if up.abs() >= DENOMINATOR_FLOOR && down.abs() >= DENOMINATOR_FLOOR {
                Some((g, up.abs(), down.abs()))
            } else {
                None
            }
        })
        .collect();
    if usable.is_empty() {
        return Err(Error::DegenerateEnsemble(
            "all grid points excluded: quantile denominators vanish".into(),
        ));
    }
    if usable.len() < len {
        log::warn!(
            "qdir: dropped {} grid points with vanishing quantile denominators",
            len - usable.len()
        );
    }
    Ok(ens
        .curves()
        .iter()
        .map(|curve| {
            usable
                .iter()
                .map(|&(g, up, down)| {
                    let dev = curve[g] - stats.mean[g];
                    if dev >= 0.0 {
                        dev / up
                    } else {
                        -dev / down
                    }
                })
                .fold(f64::MIN, f64::max)
        })
        .collect())
}

/// Continuous ranked probability score, estimated by the leave-one-out
/// U-statistic over pairwise integrated absolute curve distances.
pub fn crps(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 2 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 2 });
    }
    let len = ens.valid_prefix(r_upper)?;
    let curves = ens.curves();
    let n = curves.len();
    let m = ens.m() as f64;
    // Pairwise integrated absolute distances.
    let mut row_sum = vec![0.0f64; n];
    let mut total = 0.0f64;
    let mut diff = vec![0.0f64; len];
    for i in 0..n {
        for j in (i + 1)..n {
            for g in 0..len {
                diff[g] = (curves[i][g] - curves[j][g]).abs();
            }
            let a = trapezoid(ens.grid(), &diff, len);
            row_sum[i] += a;
            row_sum[j] += a;
            total += a;
        }
    }
    Ok((0..n)
        .map(|i| row_sum[i] / m - (total - row_sum[i]) / (m * (m - 1.0)))
        .collect())
}

/// Integral of the curve over the prefix (two-sided extremeness).
pub fn int_stat(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    let len = ens.valid_prefix(r_upper)?;
    Ok(ens
        .curves()
        .iter()
        .map(|curve| trapezoid(ens.grid(), curve, len))
        .collect())
}

/// Point evaluation at the grid point nearest to `r_star` (two-sided
/// extremeness). The snap to the grid, and any clamp into the valid prefix,
/// is logged.
pub fn point_stat(ens: &CurveEnsemble, r_star: f64) -> Result<Vec<f64>> {
    let len = ens.valid_prefix(ens.grid().r_max())?;
    let mut idx = ens.grid().nearest_index(r_star);
    if idx >= len {
        log::warn!(
            "point: r* = {r_star} beyond the valid prefix; clamped to r = {}",
            ens.grid().values()[len - 1]
        );
        idx = len - 1;
    } else if ens.grid().values()[idx] != r_star {
        log::debug!("point: r* = {r_star} snapped to grid point {}", ens.grid().values()[idx]);
    }
    Ok(ens.curves().iter().map(|curve| curve[idx]).collect())
}
