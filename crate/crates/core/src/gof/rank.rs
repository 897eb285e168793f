//! Depth-like orderings for curve-valued test statistics: the extreme rank
//! length (erl), continuous rank (cont) and area measures. All three return
//! one measure value per curve where small means extreme.

use crate::error::{Error, Result};

use super::ensemble::CurveEnsemble;

/// Pointwise extremeness direction for rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    /// Small values are extreme.
    One,
    /// Both tails are extreme.
    Two,
}

/// Pointwise ranks of every curve at every grid point of the prefix.
///
/// Two-sided: `R = min(#{values <= v}, #{values >= v})`; one-sided (small
/// extreme): `R = #{values <= v}`. Counts include the curve itself, so the
/// most extreme rank is 1; ties share ranks.
fn pointwise_ranks(curves: &[Vec<f64>], len: usize, sidedness: Sidedness) -> Vec<Vec<u32>> {
    let n = curves.len();
    let mut ranks = vec![Vec::with_capacity(len); n];
    let mut column = vec![0.0f64; n];
    for g in 0..len {
        for (slot, curve) in column.iter_mut().zip(curves) {
            *slot = curve[g];
        }
        let mut sorted = column.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, &v) in column.iter().enumerate() {
            let le = sorted.partition_point(|&x| x <= v) as u32;
            let rank = match sidedness {
                Sidedness::One => le,
                Sidedness::Two => {
                    let ge = (n - sorted.partition_point(|&x| x < v)) as u32;
                    le.min(ge)
                }
            };
            ranks[i].push(rank);
        }
    }
    ranks
}

/// Extreme rank length measure over raw curve matrices.
///
/// Each curve's pointwise ranks are sorted ascending and the curves ordered
/// lexicographically on the sorted vectors; the measure of curve `i` is the
/// fraction of curves at least as extreme, `#{j : S_j <=lex S_i} / (m+1)`.
pub fn erl_measure_values(curves: &[Vec<f64>], len: usize, sidedness: Sidedness) -> Vec<f64> {
    let n = curves.len();
    let mut sorted_ranks = pointwise_ranks(curves, len, sidedness);
    for r in &mut sorted_ranks {
        r.sort_unstable();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sorted_ranks[a].cmp(&sorted_ranks[b]));
    let mut measures = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sorted_ranks[order[end]] == sorted_ranks[order[start]] {
            end += 1;
        }
        // All curves in the tie group share #{j : S_j <=lex S_i} = end.
        let value = end as f64 / n as f64;
        for &i in &order[start..end] {
            measures[i] = value;
        }
        start = end;
    }
    measures
}

/// Extreme rank length measure on an ensemble prefix.
pub fn erl_measure(ens: &CurveEnsemble, r_upper: f64, sidedness: Sidedness) -> Result<Vec<f64>> {
    if ens.m() < 1 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 1 });
    }
    let len = ens.valid_prefix(r_upper)?;
    Ok(erl_measure_values(ens.curves(), len, sidedness))
}

/// Continuous rank measure.
///
/// Raw pointwise ranks refine the integer ordering by the relative gaps
/// between consecutive ordered values; exact ties at positions `k..=l` share
/// the rank `(k + l + 1) / 2`, and the boundary positions use exponential
/// interpolation with an indicator guard so that an isolated extreme value
/// over an otherwise constant column attains rank 0 (or m + 1). Two-sided
/// pointwise ranks are folded as `min(c, m + 1 - c)` and the curve measure
/// is the minimum over the grid prefix.
pub fn cont_measure(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 2 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 2 });
    }
    let len = ens.valid_prefix(r_upper)?;
    let curves = ens.curves();
    let n = curves.len();
    let m = n - 1; // paper's m: values are D_(0) .. D_(m)
    let mut measures = vec![f64::INFINITY; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for g in 0..len {
        order.clear();
        order.extend(0..n);
        order.sort_by(|&a, &b| curves[a][g].partial_cmp(&curves[b][g]).unwrap());
        let value = |pos: usize| curves[order[pos]][g];
        let mut pos = 0;
        while pos < n {
            let mut end = pos + 1;
            while end < n && value(end) == value(pos) {
                end += 1;
            }
            let raw = if end - pos > 1 {
                // Ties from position k to l share (k + l + 1) / 2.
                (pos + end) as f64 / 2.0 // k + (l + 1) over 2 with l = end - 1
            } else if pos == 0 {
                let spread = value(m) - value(1);
                if spread > 0.0 {
                    (-(value(1) - value(0)) / spread).exp()
                } else {
                    0.0
                }
            } else if pos == m {
                let spread = value(m - 1) - value(0);
                if spread > 0.0 {
                    (m + 1) as f64 - (-(value(m) - value(m - 1)) / spread).exp()
                } else {
                    (m + 1) as f64
                }
            } else {
                pos as f64 + (value(pos) - value(pos - 1)) / (value(pos + 1) - value(pos - 1))
            };
            let folded = raw.min((m + 1) as f64 - raw);
            for &i in &order[pos..end] {
                if folded < measures[i] {
                    measures[i] = folded;
                }
            }
            pos = end;
        }
    }
    Ok(measures)
}

/// Area measure: the two-sided extreme rank `k_i = min_r R_i^r`, refined by
/// the mass with which the curve exceeds the next-more-central envelope
/// (level `k_i + 1`). The fractional refinement is normalized below 1, so
/// curves with different extreme ranks are never reordered.
pub fn area_measure(ens: &CurveEnsemble, r_upper: f64) -> Result<Vec<f64>> {
    if ens.m() < 1 {
        return Err(Error::TooFewSimulations { m: ens.m(), needed: 1 });
    }
    let len = ens.valid_prefix(r_upper)?;
    let curves = ens.curves();
    let n = curves.len();
    let ranks = pointwise_ranks(curves, len, Sidedness::Two);
    let extreme_rank: Vec<u32> = ranks.iter().map(|r| *r.iter().min().unwrap()).collect();
    // Sorted columns for envelope lookups.
    let mut sorted_columns: Vec<Vec<f64>> = Vec::with_capacity(len);
    for g in 0..len {
        let mut col: Vec<f64> = curves.iter().map(|c| c[g]).collect();
        col.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted_columns.push(col);
    }
    let mut outside = vec![0.0f64; n];
    for i in 0..n {
        let level = ((extreme_rank[i] + 1) as usize).min(n);
        for g in 0..len {
            let col = &sorted_columns[g];
            let low = col[level - 1]; // level-th smallest
            let high = col[n - level]; // level-th largest
            let v = curves[i][g];
            outside[i] += (low - v).max(0.0) + (v - high).max(0.0);
        }
    }
    let max_outside = outside.iter().cloned().fold(0.0f64, f64::max);
    Ok((0..n)
        .map(|i| extreme_rank[i] as f64 - outside[i] / (1.0 + max_outside))
        .collect())
}
