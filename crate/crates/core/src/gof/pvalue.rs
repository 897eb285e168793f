//! The Monte Carlo p-value and the orderings that define extremeness.

use crate::error::{Error, Result};

/// How per-pattern statistic values are ordered by extremeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrdering {
    /// Large values are extreme (deviation statistics).
    Larger,
    /// Both tails are extreme, via symmetric tie-sharing ranks.
    TwoSided,
    /// The values are depth-like measures where small means extreme.
    MeasureSmall,
}

impl ValueOrdering {
    pub fn name(&self) -> &'static str {
        match self {
            ValueOrdering::Larger => "larger",
            ValueOrdering::TwoSided => "two-sided",
            ValueOrdering::MeasureSmall => "measure",
        }
    }
}

/// Map raw statistic values to scores where small means extreme; ties share
/// scores. For the two-sided ordering the score of value `v` is
/// `min(#{j: D_j <= v}, #{j: D_j >= v})` over all `m + 1` values.
pub fn extremeness_scores(values: &[f64], ordering: ValueOrdering) -> Vec<f64> {
    match ordering {
        ValueOrdering::Larger => values.iter().map(|v| -v).collect(),
        ValueOrdering::MeasureSmall => values.to_vec(),
        ValueOrdering::TwoSided => {
            let mut sorted = values.to_vec();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let n = sorted.len();
            values
                .iter()
                .map(|&v| {
                    let le = sorted.partition_point(|&x| x <= v);
                    let ge = n - sorted.partition_point(|&x| x < v);
                    le.min(ge) as f64
                })
                .collect()
        }
    }
}

/// The Monte Carlo p-value
/// `(1 + #{i >= 1 : D_i at least as extreme as D_0}) / (m + 1)`.
pub fn mc_pvalue(values: &[f64], ordering: ValueOrdering) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::TooFewSimulations { m: values.len().saturating_sub(1), needed: 1 });
    }
    let scores = extremeness_scores(values, ordering);
    let observed = scores[0];
    let at_least_as_extreme = scores[1..].iter().filter(|&&s| s <= observed).count();
    Ok((1 + at_least_as_extreme) as f64 / values.len() as f64)
}
