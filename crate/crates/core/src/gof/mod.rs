//! Monte Carlo goodness-of-fit machinery: test statistics, orderings,
//! p-values, global envelopes and the two-step combination.

pub mod combine;
pub mod deviation;
pub mod ensemble;
pub mod envelope;
pub mod pvalue;
pub mod rank;

use std::fmt::Write as _;

pub use combine::two_step_combine;
pub use deviation::{crps, dclf, int_stat, mad, point_stat, qdir, st};
pub use ensemble::{trapezoid, CurveEnsemble};
pub use envelope::{envelope_measure, envelope_threshold, fun_test, Envelope, EnvelopeOrdering};
pub use pvalue::{extremeness_scores, mc_pvalue, ValueOrdering};
pub use rank::{area_measure, cont_measure, erl_measure, erl_measure_values, Sidedness};

use crate::error::{Error, Result};
use crate::summaries::SummaryId;

/// The test statistic / ordering constructions of the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestStatistic {
    Mad,
    Dclf,
    St,
    Qdir,
    Crps,
    Int,
    Point,
    Fun(EnvelopeOrdering),
}

impl TestStatistic {
    pub const ALL: [TestStatistic; 10] = [
        TestStatistic::Mad,
        TestStatistic::Dclf,
        TestStatistic::St,
        TestStatistic::Qdir,
        TestStatistic::Crps,
        TestStatistic::Int,
        TestStatistic::Point,
        TestStatistic::Fun(EnvelopeOrdering::Erl),
        TestStatistic::Fun(EnvelopeOrdering::Area),
        TestStatistic::Fun(EnvelopeOrdering::Cont),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TestStatistic::Mad => "mad",
            TestStatistic::Dclf => "dclf",
            TestStatistic::St => "st",
            TestStatistic::Qdir => "qdir",
            TestStatistic::Crps => "crps",
            TestStatistic::Int => "int",
            TestStatistic::Point => "point",
            TestStatistic::Fun(_) => "fun",
        }
    }

    /// The ordering paired with this statistic.
    pub fn ordering_name(&self) -> &'static str {
        match self {
            TestStatistic::Mad
            | TestStatistic::Dclf
            | TestStatistic::St
            | TestStatistic::Qdir
            | TestStatistic::Crps => "larger",
            TestStatistic::Int | TestStatistic::Point => "two-sided",
            TestStatistic::Fun(ord) => ord.name(),
        }
    }

    pub fn value_ordering(&self) -> ValueOrdering {
        match self {
            TestStatistic::Mad
            | TestStatistic::Dclf
            | TestStatistic::St
            | TestStatistic::Qdir
            | TestStatistic::Crps => ValueOrdering::Larger,
            TestStatistic::Int | TestStatistic::Point => ValueOrdering::TwoSided,
            TestStatistic::Fun(_) => ValueOrdering::MeasureSmall,
        }
    }

    /// Parse a statistic name plus an optional ordering ("erl" by default
    /// for `fun`).
    pub fn parse(name: &str, ordering: Option<&str>) -> Result<Self> {
        let base = match name {
            "mad" => TestStatistic::Mad,
            "dclf" => TestStatistic::Dclf,
            "st" => TestStatistic::St,
            "qdir" => TestStatistic::Qdir,
            "crps" => TestStatistic::Crps,
            "int" => TestStatistic::Int,
            "point" => TestStatistic::Point,
            "fun" => {
                let ord = match ordering.unwrap_or("erl") {
                    "erl" => EnvelopeOrdering::Erl,
                    "area" => EnvelopeOrdering::Area,
                    "cont" => EnvelopeOrdering::Cont,
                    other => {
                        return Err(Error::InvalidParameter {
                            name: "ordering",
                            message: format!("unknown envelope ordering `{other}`"),
                        })
                    }
                };
                return Ok(TestStatistic::Fun(ord));
            }
            other => {
                return Err(Error::InvalidParameter {
                    name: "statistic",
                    message: format!("unknown test statistic `{other}`"),
                })
            }
        };
        if let Some(ord) = ordering {
            if ord != base.ordering_name() {
                return Err(Error::InvalidParameter {
                    name: "ordering",
                    message: format!(
                        "statistic `{name}` uses the `{}` ordering, not `{ord}`",
                        base.ordering_name()
                    ),
                });
            }
        }
        Ok(base)
    }
}

/// Result of one Monte Carlo test.
#[derive(Debug, Clone)]
pub struct TestOutcome {
    pub summary: SummaryId,
    pub statistic: TestStatistic,
    pub r_upper: f64,
    pub m: usize,
    /// Per-pattern statistic values (measure values for FUN), observed first.
    pub per_pattern: Vec<f64>,
    pub p_value: f64,
    /// Global envelope, present exactly for FUN tests.
    pub envelope: Option<Envelope>,
}

impl TestOutcome {
    pub fn reject(&self, alpha: f64) -> bool {
        self.p_value <= alpha
    }

    /// Small-is-extreme scalar reduction used by the two-step combination.
    pub fn component_scores(&self) -> Vec<f64> {
        match self.statistic {
            TestStatistic::Fun(_) => self.per_pattern.clone(),
            _ => extremeness_scores(&self.per_pattern, self.statistic.value_ordering()),
        }
    }

    pub const CSV_HEADER: &'static str = "statistic,ordering,summary,rUpper,m,pValue";

    pub fn csv_row(&self) -> String {
        let mut out = String::new();
        write!(
            out,
            "{},{},{},{},{},{}",
            self.statistic.name(),
            self.statistic.ordering_name(),
            self.summary,
            self.r_upper,
            self.m,
            self.p_value
        )
        .unwrap();
        out
    }
}

/// Run one test statistic on an ensemble at the given range bound.
///
/// `alpha` only affects the envelope attached to FUN outcomes.
pub fn run_test(
    ens: &CurveEnsemble,
    statistic: TestStatistic,
    r_upper: f64,
    alpha: f64,
) -> Result<TestOutcome> {
    let (per_pattern, p_value, envelope) = match statistic {
        TestStatistic::Mad => finish(mad(ens, r_upper)?, statistic)?,
        TestStatistic::Dclf => finish(dclf(ens, r_upper)?, statistic)?,
        TestStatistic::St => finish(st(ens, r_upper)?, statistic)?,
        TestStatistic::Qdir => finish(qdir(ens, r_upper)?, statistic)?,
        TestStatistic::Crps => finish(crps(ens, r_upper)?, statistic)?,
        TestStatistic::Int => finish(int_stat(ens, r_upper)?, statistic)?,
        TestStatistic::Point => finish(point_stat(ens, r_upper)?, statistic)?,
        TestStatistic::Fun(ordering) => {
            let (measures, p, envelope) = fun_test(ens, r_upper, ordering, alpha)?;
            (measures, p, Some(envelope))
        }
    };
    Ok(TestOutcome {
        summary: ens.statistic(),
        statistic,
        r_upper,
        m: ens.m(),
        per_pattern,
        p_value,
        envelope,
    })
}

fn finish(values: Vec<f64>, statistic: TestStatistic) -> Result<(Vec<f64>, f64, Option<Envelope>)> {
    let p = mc_pvalue(&values, statistic.value_ordering())?;
    Ok((values, p, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summaries::EvalGrid;

    #[test]
    fn parse_statistics() {
        assert_eq!(TestStatistic::parse("dclf", None).unwrap(), TestStatistic::Dclf);
        assert_eq!(
            TestStatistic::parse("fun", Some("cont")).unwrap(),
            TestStatistic::Fun(EnvelopeOrdering::Cont)
        );
        assert_eq!(
            TestStatistic::parse("fun", None).unwrap(),
            TestStatistic::Fun(EnvelopeOrdering::Erl)
        );
        assert!(TestStatistic::parse("dclf", Some("two-sided")).is_err());
        assert!(TestStatistic::parse("nope", None).is_err());
    }

    #[test]
    fn run_test_attaches_envelope_only_for_fun() {
        let grid = EvalGrid::new(0.0, 1.0, 8).unwrap();
        let curves: Vec<Vec<f64>> = (0..25)
            .map(|i| (0..8).map(|g| ((i * 31 + g * 7) % 13) as f64 + 0.01 * i as f64).collect())
            .collect();
        let ens = CurveEnsemble::from_values(SummaryId::K, grid, curves).unwrap();
        let fun = run_test(&ens, TestStatistic::Fun(EnvelopeOrdering::Erl), 1.0, 0.05).unwrap();
        assert!(fun.envelope.is_some());
        assert!(fun.p_value > 0.0 && fun.p_value <= 1.0);
        let dclf = run_test(&ens, TestStatistic::Dclf, 1.0, 0.05).unwrap();
        assert!(dclf.envelope.is_none());
        assert_eq!(dclf.per_pattern.len(), 25);
        let row = dclf.csv_row();
        assert!(row.starts_with("dclf,larger,k,1,"));
    }
}
