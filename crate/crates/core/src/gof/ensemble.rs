//! The curve ensemble: observed curve plus `m` null-simulation curves on a
//! shared grid, with prefix selection and NaN truncation.

use crate::error::{Error, Result};
use crate::summaries::{EvalGrid, SummaryCurve, SummaryId};

/// `m + 1` summary curves on one grid; index 0 is the observed pattern.
#[derive(Debug, Clone)]
pub struct CurveEnsemble {
    statistic: SummaryId,
    grid: EvalGrid,
    curves: Vec<Vec<f64>>,
}

impl CurveEnsemble {
    pub fn new(curves: Vec<SummaryCurve>) -> Result<Self> {
        if curves.len() < 2 {
            return Err(Error::DegenerateEnsemble(
                "need the observed curve and at least one simulation".into(),
            ));
        }
        let statistic = curves[0].statistic;
        let grid = curves[0].grid.clone();
        let mut values = Vec::with_capacity(curves.len());
        for c in &curves {
            if c.statistic != statistic || c.grid != grid {
                return Err(Error::DegenerateEnsemble(
                    "ensemble curves must share one statistic and grid".into(),
                ));
            }
            values.push(c.values.clone());
        }
        Ok(CurveEnsemble { statistic, grid, curves: values })
    }

    /// Assemble from raw curve values (observed first).
    pub fn from_values(statistic: SummaryId, grid: EvalGrid, curves: Vec<Vec<f64>>) -> Result<Self> {
        if curves.len() < 2 {
            return Err(Error::DegenerateEnsemble(
                "need the observed curve and at least one simulation".into(),
            ));
        }
        if curves.iter().any(|c| c.len() != grid.len()) {
            return Err(Error::DegenerateEnsemble(
                "curve length does not match the grid".into(),
            ));
        }
        Ok(CurveEnsemble { statistic, grid, curves })
    }

    pub fn statistic(&self) -> SummaryId {
        self.statistic
    }

    pub fn grid(&self) -> &EvalGrid {
        &self.grid
    }

    /// Number of simulations `m`.
    pub fn m(&self) -> usize {
        self.curves.len() - 1
    }

    pub fn n_curves(&self) -> usize {
        self.curves.len()
    }

    pub fn curves(&self) -> &[Vec<f64>] {
        &self.curves
    }

    /// Number of leading grid points usable for a test with upper bound
    /// `r_upper`: the grid prefix, truncated at the first grid point where
    /// any curve is NaN (the J-function beyond F = 1). Truncation is logged.
    pub fn valid_prefix(&self, r_upper: f64) -> Result<usize> {
        let mut len = self.grid.prefix_len(r_upper);
        if len == 0 {
            return Err(Error::DegenerateEnsemble(format!(
                "no grid points at or below r_upper = {r_upper}"
            )));
        }
        let requested = len;
        for curve in &self.curves {
            if let Some(first_nan) = curve[..len].iter().position(|v| v.is_nan()) {
                len = first_nan;
            }
        }
        if len == 0 {
            return Err(Error::DegenerateEnsemble(
                "ensemble has NaN values from the first grid point".into(),
            ));
        }
        if len < requested {
            log::warn!(
                "{} ensemble truncated at r = {} (requested r_upper = {})",
                self.statistic,
                self.grid.values()[len - 1],
                r_upper
            );
        }
        Ok(len)
    }
}

/// Trapezoid-rule integral of `values[..len]` on the grid prefix.
pub fn trapezoid(grid: &EvalGrid, values: &[f64], len: usize) -> f64 {
    debug_assert!(len <= values.len());
    if len < 2 {
        return 0.0;
    }
    let r = grid.values();
    let mut total = 0.0;
    for i in 1..len {
        total += 0.5 * (values[i] + values[i - 1]) * (r[i] - r[i - 1]);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toy_ensemble(curves: Vec<Vec<f64>>) -> CurveEnsemble {
        let grid = EvalGrid::new(0.0, 1.0, curves[0].len()).unwrap();
        CurveEnsemble::from_values(SummaryId::K, grid, curves).unwrap()
    }

    #[test]
    fn prefix_truncates_at_nan() {
        let ens = toy_ensemble(vec![
            vec![1.0, 2.0, 3.0, f64::NAN, 5.0],
            vec![1.0, 2.0, 3.0, 4.0, 5.0],
        ]);
        assert_eq!(ens.valid_prefix(1.0).unwrap(), 3);
        assert_eq!(ens.valid_prefix(0.30).unwrap(), 2);
    }

    #[test]
    fn all_nan_prefix_errors() {
        let ens = toy_ensemble(vec![vec![f64::NAN, 1.0], vec![0.0, 1.0]]);
        assert!(ens.valid_prefix(1.0).is_err());
    }

    #[test]
    fn trapezoid_of_constant() {
        let grid = EvalGrid::new(0.0, 1.0, 11).unwrap();
        let values = vec![3.0; 11];
        assert!((trapezoid(&grid, &values, 11) - 3.0).abs() < 1e-12);
        assert!((trapezoid(&grid, &values, 6) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let g1 = EvalGrid::new(0.0, 1.0, 4).unwrap();
        let g2 = EvalGrid::new(0.0, 2.0, 4).unwrap();
        let a = SummaryCurve::new(SummaryId::K, g1, vec![0.0; 4]);
        let b = SummaryCurve::new(SummaryId::K, g2, vec![0.0; 4]);
        assert!(CurveEnsemble::new(vec![a, b]).is_err());
    }
}
