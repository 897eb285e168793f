//! Global envelope tests: the curve itself is the test statistic, ordered
//! by a depth measure, with a graphical envelope at the chosen level.

use std::fmt::Write as _;

use crate::error::Result;

use super::ensemble::CurveEnsemble;
use super::pvalue::{mc_pvalue, ValueOrdering};
use super::rank::{area_measure, cont_measure, erl_measure, Sidedness};

/// Measure used to order curves in a FUN test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeOrdering {
    Erl,
    Area,
    Cont,
}

impl EnvelopeOrdering {
    pub const ALL: [EnvelopeOrdering; 3] =
        [EnvelopeOrdering::Erl, EnvelopeOrdering::Area, EnvelopeOrdering::Cont];

    pub fn name(&self) -> &'static str {
        match self {
            EnvelopeOrdering::Erl => "erl",
            EnvelopeOrdering::Area => "area",
            EnvelopeOrdering::Cont => "cont",
        }
    }
}

/// Global envelope at one level: pointwise bounds over the retained curves,
/// together with the observed curve on the same prefix.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub r: Vec<f64>,
    pub low: Vec<f64>,
    pub high: Vec<f64>,
    pub observed: Vec<f64>,
}

impl Envelope {
    /// True when the observed curve leaves the closed envelope band at one
    /// or more grid points.
    pub fn observed_exits(&self) -> bool {
        self.observed
            .iter()
            .zip(self.low.iter().zip(&self.high))
            .any(|(&obs, (&lo, &hi))| obs < lo || obs > hi)
    }

    /// CSV export with columns r, low, high, observed.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,low,high,observed\n");
        for i in 0..self.r.len() {
            writeln!(out, "{},{},{},{}", self.r[i], self.low[i], self.high[i], self.observed[i])
                .unwrap();
        }
        out
    }
}

/// Measure values for one ordering on the ensemble prefix.
pub fn envelope_measure(
    ens: &CurveEnsemble,
    r_upper: f64,
    ordering: EnvelopeOrdering,
) -> Result<Vec<f64>> {
    match ordering {
        EnvelopeOrdering::Erl => erl_measure(ens, r_upper, Sidedness::Two),
        EnvelopeOrdering::Area => area_measure(ens, r_upper),
        EnvelopeOrdering::Cont => cont_measure(ens, r_upper),
    }
}

/// The envelope threshold: the largest measure value such that the number
/// of strictly smaller measure values is at most `alpha (m + 1)`.
pub fn envelope_threshold(measures: &[f64], alpha: f64) -> f64 {
    let budget = alpha * measures.len() as f64;
    let mut sorted = measures.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = sorted[0];
    for &v in &sorted {
        let strictly_smaller = sorted.partition_point(|&x| x < v);
        if strictly_smaller as f64 <= budget {
            best = v;
        }
    }
    best
}

/// Run a FUN test: order the curves by the selected measure, compute the
/// Monte Carlo p-value, and build the level-`alpha` global envelope as the
/// pointwise min and max over curves with measure at least the threshold.
pub fn fun_test(
    ens: &CurveEnsemble,
    r_upper: f64,
    ordering: EnvelopeOrdering,
    alpha: f64,
) -> Result<(Vec<f64>, f64, Envelope)> {
    let measures = envelope_measure(ens, r_upper, ordering)?;
    let p_value = mc_pvalue(&measures, ValueOrdering::MeasureSmall)?;
    let len = ens.valid_prefix(r_upper)?;
    let threshold = envelope_threshold(&measures, alpha);
    let mut low = vec![f64::INFINITY; len];
    let mut high = vec![f64::NEG_INFINITY; len];
    for (curve, &measure) in ens.curves().iter().zip(&measures) {
        if measure >= threshold {
            for g in 0..len {
                low[g] = low[g].min(curve[g]);
                high[g] = high[g].max(curve[g]);
            }
        }
    }
    let envelope = Envelope {
        r: ens.grid().values()[..len].to_vec(),
        low,
        high,
        observed: ens.curves()[0][..len].to_vec(),
    };
    Ok((measures, p_value, envelope))
}
