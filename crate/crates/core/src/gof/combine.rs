//! Two-step combination of several functional summary statistics into one
//! test: each component is reduced to a small-is-extreme scalar per
//! pattern, the scalars are stacked into vectors, and the vectors are
//! ordered by the one-sided extreme rank length measure.

use crate::error::{Error, Result};

use super::pvalue::{mc_pvalue, ValueOrdering};
use super::rank::{erl_measure_values, Sidedness};

/// Combine `K` component score vectors (each `m + 1` small-is-extreme
/// scalars, observed first) into measure values and a Monte Carlo p-value.
pub fn two_step_combine(component_scores: &[Vec<f64>]) -> Result<(Vec<f64>, f64)> {
    if component_scores.is_empty() {
        return Err(Error::DegenerateEnsemble("need at least one component".into()));
    }
    let n = component_scores[0].len();
    if component_scores.iter().any(|c| c.len() != n) {
        return Err(Error::DegenerateEnsemble(
            "components disagree on the number of patterns".into(),
        ));
    }
    if n < 2 {
        return Err(Error::TooFewSimulations { m: n.saturating_sub(1), needed: 1 });
    }
    // Pattern i's vector runs over the component index as its "grid".
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| component_scores.iter().map(|c| c[i]).collect())
        .collect();
    let measures = erl_measure_values(&vectors, component_scores.len(), Sidedness::One);
    let p = mc_pvalue(&measures, ValueOrdering::MeasureSmall)?;
    Ok((measures, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gof::pvalue::extremeness_scores;

    #[test]
    fn single_component_reduces_to_component_p_value() {
        // "larger" statistic values reduced to small-is-extreme scores.
        let values = vec![9.0, 1.0, 5.0, 3.0, 7.0, 2.0, 8.0, 0.5, 4.0, 6.0];
        let scores = extremeness_scores(&values, ValueOrdering::Larger);
        let (_, p_combined) = two_step_combine(&[scores]).unwrap();
        let p_direct = mc_pvalue(&values, ValueOrdering::Larger).unwrap();
        assert_eq!(p_combined, p_direct);

        // Two-sided statistic.
        let scores = extremeness_scores(&values, ValueOrdering::TwoSided);
        let (_, p_combined) = two_step_combine(&[scores]).unwrap();
        let p_direct = mc_pvalue(&values, ValueOrdering::TwoSided).unwrap();
        assert_eq!(p_combined, p_direct);
    }

    #[test]
    fn dominating_component_drives_rejection() {
        // Observed most extreme in both components: combined p attains 1/(m+1).
        let k = |obs: f64, rest: std::ops::Range<usize>| -> Vec<f64> {
            let mut v = vec![obs];
            v.extend(rest.map(|i| 1.0 + i as f64));
            v
        };
        let (_, p) = two_step_combine(&[k(0.0, 0..9), k(0.5, 0..9)]).unwrap();
        assert_eq!(p, 0.1);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        assert!(two_step_combine(&[vec![1.0, 2.0], vec![1.0, 2.0, 3.0]]).is_err());
        assert!(two_step_combine(&[]).is_err());
    }
}
