//! The power-study runner: replications of observed patterns, conditional
//! binomial null ensembles, shared summary evaluation and rejection-rate
//! aggregation.
//!
//! Replications are independent work units with their own generator
//! streams, so the resulting table does not depend on the worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{PointPattern, Window};
use crate::gof::{run_test, two_step_combine, CurveEnsemble, TestOutcome, TestStatistic};
use crate::models::{sample_binomial, ModelSpec, RngStream, SamplerOptions};
use crate::summaries::SummaryId;

use super::config::{ResolvedTest, StudyConfig};
use super::pipeline::SummaryComputer;

/// One aggregated cell of the power table.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerRow {
    pub model: String,
    pub window_area: f64,
    pub summary: String,
    pub statistic: String,
    pub ordering: String,
    pub r_upper: f64,
    pub m: usize,
    pub rejection_rate: f64,
    pub replications: usize,
    pub stderr: f64,
}

/// Rejection rates for every (model, window, test, r_upper) cell.
#[derive(Debug, Clone, Default)]
pub struct PowerTable {
    pub rows: Vec<PowerRow>,
}

impl PowerTable {
    /// Rate lookup by (model, summary label, statistic, ordering, window
    /// area, r_upper), mostly for tests.
    pub fn rate(
        &self,
        model: &str,
        window_area: f64,
        summary: &str,
        statistic: &str,
        ordering: &str,
        r_upper: f64,
    ) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| {
                r.model == model
                    && r.window_area == window_area
                    && r.summary == summary
                    && r.statistic == statistic
                    && r.ordering == ordering
                    && (r.r_upper - r_upper).abs() < 1e-12
            })
            .map(|r| r.rejection_rate)
    }
}

/// Stream index for one sampled pattern: slot 0 is the observed pattern of
/// the replication, slots 1..=m are its null simulations.
fn pattern_stream(cell: usize, rep: usize, slot: usize) -> u64 {
    assert!(cell < (1 << 20) && rep < (1 << 24) && slot < (1 << 20));
    ((cell as u64) << 44) | ((rep as u64) << 20) | slot as u64
}

/// The conditional null ensemble: `m` binomial patterns with exactly the
/// observed point count.
pub fn null_simulations(
    n: usize,
    m: usize,
    window: &Window,
    seed: u64,
    cell: usize,
    rep: usize,
) -> Vec<PointPattern> {
    (1..=m)
        .map(|slot| sample_binomial(n, window, RngStream::new(seed, pattern_stream(cell, rep, slot))))
        .collect()
}

/// Per-replication rejection flags: `flags[test][sweep_index]`.
type ReplicationFlags = Vec<Vec<bool>>;

fn replicate(
    config: &StudyConfig,
    tests: &[ResolvedTest],
    union: &[SummaryId],
    computer: &SummaryComputer,
    model: &ModelSpec,
    window: &Window,
    cell: usize,
    rep: usize,
    max_m: usize,
    opts: &SamplerOptions,
) -> Result<ReplicationFlags> {
    let observed = model.sample(
        window,
        RngStream::new(config.seed, pattern_stream(cell, rep, 0)),
        opts,
    )?;
    let n = observed.len();
    let mut patterns = vec![observed];
    patterns.extend(null_simulations(n, max_m, window, config.seed, cell, rep));

    let mut curves: BTreeMap<SummaryId, Vec<Vec<f64>>> = BTreeMap::new();
    for pattern in &patterns {
        let computed = computer.compute(pattern, union)?;
        for (summary, values) in computed {
            curves.entry(summary).or_default().push(values);
        }
    }

    let mut flags = Vec::with_capacity(tests.len());
    for test in tests {
        if test.is_combined() {
            let mut scores = Vec::with_capacity(test.summaries.len());
            for (&summary, &bound) in test.summaries.iter().zip(&test.r_upper) {
                let ens = CurveEnsemble::from_values(
                    summary,
                    computer.grid(summary).clone(),
                    curves[&summary][..=test.m].to_vec(),
                )?;
                let outcome = run_test(&ens, test.statistic, bound, config.alpha)?;
                scores.push(outcome.component_scores());
            }
            let (_, p) = two_step_combine(&scores)?;
            flags.push(vec![p <= config.alpha]);
        } else {
            let summary = test.summaries[0];
            let ens = CurveEnsemble::from_values(
                summary,
                computer.grid(summary).clone(),
                curves[&summary][..=test.m].to_vec(),
            )?;
            let mut sweep_flags = Vec::with_capacity(test.r_upper.len());
            for &bound in &test.r_upper {
                let outcome = run_test(&ens, test.statistic, bound, config.alpha)?;
                sweep_flags.push(outcome.p_value <= config.alpha);
            }
            flags.push(sweep_flags);
        }
    }
    Ok(flags)
}

/// Run the configured power study.
pub fn run_power_study(config: &StudyConfig) -> Result<PowerTable> {
    config.validate()?;
    let tests = config.resolved_tests()?;
    let max_m = config.max_m()?;
    let computer = SummaryComputer::new(config.f_lattice);
    let opts = config.sampler_options();
    let mut union: Vec<SummaryId> = tests.iter().flat_map(|t| t.summaries.clone()).collect();
    union.sort_unstable();
    union.dedup();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let mut rows = Vec::new();
    for (mi, model) in config.models.iter().enumerate() {
        for (wi, &area) in config.windows.iter().enumerate() {
            let window = Window::square_with_area(area)?;
            let cell = mi * config.windows.len() + wi;
            let all_flags: Vec<ReplicationFlags> = pool.install(|| {
                (0..config.replications)
                    .into_par_iter()
                    .map(|rep| {
                        replicate(
                            config, &tests, &union, &computer, model, &window, cell, rep,
                            max_m, &opts,
                        )
                    })
                    .collect::<Result<_>>()
            })?;
            for (ti, test) in tests.iter().enumerate() {
                let n_sweep = if test.is_combined() { 1 } else { test.r_upper.len() };
                for si in 0..n_sweep {
                    let rejections =
                        all_flags.iter().filter(|flags| flags[ti][si]).count();
                    let rate = rejections as f64 / config.replications as f64;
                    rows.push(PowerRow {
                        model: model.family_name().to_string(),
                        window_area: area,
                        summary: test.summary_label(),
                        statistic: test.statistic.name().to_string(),
                        ordering: test.statistic.ordering_name().to_string(),
                        r_upper: if test.is_combined() {
                            test.r_upper.iter().cloned().fold(0.0, f64::max)
                        } else {
                            test.r_upper[si]
                        },
                        m: test.m,
                        rejection_rate: rate,
                        replications: config.replications,
                        stderr: (rate * (1.0 - rate) / config.replications as f64).sqrt(),
                    });
                }
            }
        }
    }
    rows.sort_by(|a, b| {
        (
            &a.model,
            &a.summary,
            &a.statistic,
            &a.ordering,
            a.m,
        )
            .cmp(&(&b.model, &b.summary, &b.statistic, &b.ordering, b.m))
            .then(a.window_area.partial_cmp(&b.window_area).unwrap())
            .then(a.r_upper.partial_cmp(&b.r_upper).unwrap())
    });
    Ok(PowerTable { rows })
}

/// Run one Monte Carlo test for an observed pattern against the binomial
/// null with the same point count (the CLI `test` subcommand).
pub fn single_test(
    pattern: &PointPattern,
    summary: SummaryId,
    statistic: TestStatistic,
    r_upper: f64,
    m: usize,
    alpha: f64,
    seed: u64,
    f_lattice: usize,
) -> Result<TestOutcome> {
    if m < 1 {
        return Err(Error::TooFewSimulations { m, needed: 1 });
    }
    if !(r_upper > 0.0 && r_upper <= summary.max_upper_bound()) {
        return Err(Error::RangeTooLarge { r_max: r_upper, bound: summary.max_upper_bound() });
    }
    let computer = SummaryComputer::new(f_lattice);
    let mut patterns = vec![pattern.clone()];
    patterns.extend(null_simulations(pattern.len(), m, pattern.window(), seed, 0, 0));
    let mut curves = Vec::with_capacity(m + 1);
    for p in &patterns {
        curves.push(computer.compute(p, &[summary])?.remove(&summary).unwrap());
    }
    let ens = CurveEnsemble::from_values(summary, computer.grid(summary).clone(), curves)?;
    run_test(&ens, statistic, r_upper, alpha)
}
