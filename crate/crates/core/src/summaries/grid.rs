use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default number of evaluation points per grid.
pub const DEFAULT_GRID_POINTS: usize = 513;

/// Identifiers for the eleven functional summary statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SummaryId {
    K,
    L,
    Pcf,
    F,
    G,
    J,
    Beta0,
    Beta1,
    Apf0,
    Apf1,
    Euler,
}

impl SummaryId {
    pub const ALL: [SummaryId; 11] = [
        SummaryId::K,
        SummaryId::L,
        SummaryId::Pcf,
        SummaryId::F,
        SummaryId::G,
        SummaryId::J,
        SummaryId::Beta0,
        SummaryId::Beta1,
        SummaryId::Apf0,
        SummaryId::Apf1,
        SummaryId::Euler,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SummaryId::K => "k",
            SummaryId::L => "l",
            SummaryId::Pcf => "pcf",
            SummaryId::F => "f",
            SummaryId::G => "g",
            SummaryId::J => "j",
            SummaryId::Beta0 => "beta0",
            SummaryId::Beta1 => "beta1",
            SummaryId::Apf0 => "apf0",
            SummaryId::Apf1 => "apf1",
            SummaryId::Euler => "euler",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::InvalidParameter {
                name: "summary",
                message: format!("unknown summary statistic `{name}`"),
            })
    }

    /// True for the nearest-neighbor / empty-space family (F, G, J), whose
    /// distance range is capped at 0.1 rather than 0.25.
    pub fn is_distance_based(&self) -> bool {
        matches!(self, SummaryId::F | SummaryId::G | SummaryId::J)
    }

    pub fn is_topological(&self) -> bool {
        matches!(
            self,
            SummaryId::Beta0 | SummaryId::Beta1 | SummaryId::Apf0 | SummaryId::Apf1 | SummaryId::Euler
        )
    }

    /// Largest admissible upper bound of the evaluation range.
    pub fn max_upper_bound(&self) -> f64 {
        if self.is_distance_based() {
            0.1
        } else {
            0.25
        }
    }

    /// Lower bound of the evaluation range (positive only for the pcf,
    /// whose estimator is unstable at the origin).
    pub fn min_lower_bound(&self) -> f64 {
        if matches!(self, SummaryId::Pcf) {
            0.005
        } else {
            0.0
        }
    }

    /// The full evaluation grid for this statistic.
    pub fn default_grid(&self) -> EvalGrid {
        EvalGrid::new(self.min_lower_bound(), self.max_upper_bound(), DEFAULT_GRID_POINTS).unwrap()
    }
}

impl std::fmt::Display for SummaryId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Equidistant evaluation grid including both endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    r_min: f64,
    r_max: f64,
    values: Vec<f64>,
}

impl EvalGrid {
    pub fn new(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        if !(0.0 <= r_min && r_min < r_max) || count < 2 {
            return Err(Error::InvalidGrid(format!(
                "need 0 <= r_min < r_max and count >= 2, got [{r_min}, {r_max}] with {count}"
            )));
        }
        let step = (r_max - r_min) / (count - 1) as f64;
        let values = (0..count).map(|i| r_min + step * i as f64).collect();
        Ok(EvalGrid { r_min, r_max, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.len() - 1) as f64
    }

    /// Number of leading grid points with `r <= r_upper`.
    pub fn prefix_len(&self, r_upper: f64) -> usize {
        self.values.partition_point(|&r| r <= r_upper)
    }

    /// First index with `grid[i] >= x`, i.e. where an indicator `x <= r`
    /// switches on.
    pub fn first_at_least(&self, x: f64) -> usize {
        self.values.partition_point(|&r| r < x)
    }

    /// Index of the grid point closest to `r_star` (ties to the lower one).
    pub fn nearest_index(&self, r_star: f64) -> usize {
        let i = self.values.partition_point(|&r| r < r_star);
        if i == 0 {
            return 0;
        }
        if i >= self.len() {
            return self.len() - 1;
        }
        if (self.values[i] - r_star) < (r_star - self.values[i - 1]) {
            i
        } else {
            i - 1
        }
    }
}

/// A functional summary statistic evaluated on a grid.
#[derive(Debug, Clone)]
pub struct SummaryCurve {
    pub statistic: SummaryId,
    pub grid: EvalGrid,
    pub values: Vec<f64>,
}

impl SummaryCurve {
    pub fn new(statistic: SummaryId, grid: EvalGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        SummaryCurve { statistic, grid, values }
    }

    /// CSV export with columns r, value, statistic, patternId.
    pub fn to_csv(&self, pattern_id: &str) -> String {
        let mut out = String::from("r,value,statistic,patternId\n");
        for (r, v) in self.grid.values().iter().zip(&self.values) {
            writeln!(out, "{},{},{},{}", r, v, self.statistic, pattern_id).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_included() {
        let g = EvalGrid::new(0.0, 0.25, 513).unwrap();
        assert_eq!(g.len(), 513);
        assert_eq!(g.values()[0], 0.0);
        assert_eq!(*g.values().last().unwrap(), 0.25);
    }

    #[test]
    fn prefix_is_nested() {
        let g = EvalGrid::new(0.0, 0.25, 513).unwrap();
        let p1 = g.prefix_len(0.1);
        let p2 = g.prefix_len(0.25);
        assert!(p1 < p2);
        assert_eq!(p2, 513);
        assert!(g.values()[p1 - 1] <= 0.1 && g.values()[p1] > 0.1);
    }

    #[test]
    fn nearest_index_rounds() {
        let g = EvalGrid::new(0.0, 1.0, 11).unwrap();
        assert_eq!(g.nearest_index(0.32), 3);
        assert_eq!(g.nearest_index(0.28), 3);
        assert_eq!(g.nearest_index(2.0), 10);
        assert_eq!(g.nearest_index(0.0), 0);
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(EvalGrid::new(0.2, 0.1, 10).is_err());
        assert!(EvalGrid::new(0.0, 1.0, 1).is_err());
        assert!(EvalGrid::new(-0.1, 1.0, 10).is_err());
    }

    #[test]
    fn summary_bounds() {
        assert_eq!(SummaryId::J.max_upper_bound(), 0.1);
        assert_eq!(SummaryId::K.max_upper_bound(), 0.25);
        assert_eq!(SummaryId::Pcf.min_lower_bound(), 0.005);
        assert_eq!(SummaryId::parse("beta1").unwrap(), SummaryId::Beta1);
        assert!(SummaryId::parse("nope").is_err());
    }
}
