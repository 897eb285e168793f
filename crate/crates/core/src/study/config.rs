//! Study configuration: TOML key/value format with nested sections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gof::TestStatistic;
use crate::models::{ModelSpec, SamplerOptions, DEFAULT_CHAIN_LENGTH};
use crate::summaries::{SummaryId, DEFAULT_F_LATTICE};

/// Admissible simulation counts for the Monte Carlo tests.
pub const ALLOWED_M: [usize; 4] = [99, 299, 499, 999];

fn default_alpha() -> f64 {
    0.05
}
fn default_replications() -> usize {
    200
}
fn default_m() -> usize {
    299
}
fn default_chain_length() -> usize {
    DEFAULT_CHAIN_LENGTH
}
fn default_f_lattice() -> usize {
    DEFAULT_F_LATTICE
}
fn default_windows() -> Vec<f64> {
    vec![1.0, 2.0, 6.0, 20.0]
}

/// One test configuration: a single summary with an `r_upper` sweep, or
/// several summaries (combined test) with one bound per summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestConfig {
    pub summaries: Vec<String>,
    pub statistic: String,
    #[serde(default)]
    pub ordering: Option<String>,
    pub r_upper: Vec<f64>,
    /// Optional per-test override of the study-level simulation count.
    #[serde(default)]
    pub m: Option<usize>,
}

/// Full study configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StudyConfig {
    pub seed: u64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default = "default_m")]
    pub m: usize,
    /// Worker threads for the replication loop; 0 means all available.
    #[serde(default)]
    pub threads: usize,
    #[serde(default = "default_chain_length")]
    pub chain_length: usize,
    #[serde(default = "default_f_lattice")]
    pub f_lattice: usize,
    #[serde(default = "default_windows")]
    pub windows: Vec<f64>,
    pub models: Vec<ModelSpec>,
    pub tests: Vec<TestConfig>,
}

/// A parsed and validated test.
#[derive(Debug, Clone)]
pub struct ResolvedTest {
    pub summaries: Vec<SummaryId>,
    pub statistic: TestStatistic,
    /// Single summary: the sweep of upper bounds. Combined: one bound per
    /// summary, aligned with `summaries`.
    pub r_upper: Vec<f64>,
    pub m: usize,
}

impl ResolvedTest {
    pub fn is_combined(&self) -> bool {
        self.summaries.len() > 1
    }

    /// Label such as "l" or "beta0+j+l".
    pub fn summary_label(&self) -> String {
        self.summaries
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl StudyConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: StudyConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("parse error: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("study configs serialize")
    }

    pub fn sampler_options(&self) -> SamplerOptions {
        SamplerOptions { chain_length: self.chain_length }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be positive".into()));
        }
        if self.windows.is_empty() || self.windows.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::Config("windows must be a nonempty list of positive areas".into()));
        }
        if self.models.is_empty() {
            return Err(Error::Config("at least one model is required".into()));
        }
        for model in &self.models {
            model.validate()?;
        }
        if self.tests.is_empty() {
            return Err(Error::Config("at least one test is required".into()));
        }
        self.resolved_tests()?;
        Ok(())
    }

    pub fn resolved_tests(&self) -> Result<Vec<ResolvedTest>> {
        self.tests
            .iter()
            .map(|t| {
                let summaries: Vec<SummaryId> = t
                    .summaries
                    .iter()
                    .map(|s| SummaryId::parse(s))
                    .collect::<Result<_>>()?;
                if summaries.is_empty() {
                    return Err(Error::Config("test needs at least one summary".into()));
                }
                let statistic = TestStatistic::parse(&t.statistic, t.ordering.as_deref())?;
                let m = t.m.unwrap_or(self.m);
                if !ALLOWED_M.contains(&m) {
                    return Err(Error::Config(format!(
                        "m = {m} is not in the allowed sweep {ALLOWED_M:?}"
                    )));
                }
                if t.r_upper.is_empty() {
                    return Err(Error::Config("r_upper must be nonempty".into()));
                }
                if summaries.len() > 1 && t.r_upper.len() != summaries.len() {
                    return Err(Error::Config(
                        "combined tests need one r_upper per summary".into(),
                    ));
                }
                let bounds_of = |i: usize| -> SummaryId {
                    if summaries.len() > 1 {
                        summaries[i]
                    } else {
                        summaries[0]
                    }
                };
                for (i, &r) in t.r_upper.iter().enumerate() {
                    let s = bounds_of(i);
                    if !(r > 0.0 && r <= s.max_upper_bound()) {
                        return Err(Error::Config(format!(
                            "r_upper = {r} outside (0, {}] for summary {s}",
                            s.max_upper_bound()
                        )));
                    }
                }
                Ok(ResolvedTest { summaries, statistic, r_upper: t.r_upper.clone(), m })
            })
            .collect()
    }

    /// Largest per-test m: the size of the shared simulation set.
    pub fn max_m(&self) -> Result<usize> {
        Ok(self
            .resolved_tests()?
            .iter()
            .map(|t| t.m)
            .max()
            .expect("validated configs have tests"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
seed = 42
alpha = 0.05
replications = 50
m = 99
windows = [1.0, 6.0]

[[models]]
family = "poi"
lambda = 50.0

[[models]]
family = "matclu"
kappa = 25.0
mu = 2.0
radius = 0.2

[[tests]]
summaries = ["l"]
statistic = "dclf"
r_upper = [0.05, 0.1, 0.25]

[[tests]]
summaries = ["beta0", "j", "l"]
statistic = "fun"
ordering = "erl"
r_upper = [0.1, 0.1, 0.25]
"#;

    #[test]
    fn parses_and_resolves() {
        let config = StudyConfig::from_toml(EXAMPLE).unwrap();
        assert_eq!(config.models.len(), 2);
        let tests = config.resolved_tests().unwrap();
        assert_eq!(tests[0].summaries, vec![SummaryId::L]);
        assert!(!tests[0].is_combined());
        assert_eq!(tests[1].summary_label(), "beta0+j+l");
        assert!(tests[1].is_combined());
        assert_eq!(config.max_m().unwrap(), 99);
    }

    #[test]
    fn round_trips_through_toml() {
        let config = StudyConfig::from_toml(EXAMPLE).unwrap();
        let text = config.to_toml();
        let back = StudyConfig::from_toml(&text).unwrap();
        assert_eq!(back.seed, config.seed);
        assert_eq!(back.models.len(), config.models.len());
        assert_eq!(back.tests.len(), config.tests.len());
    }

    #[test]
    fn rejects_disallowed_m() {
        let text = EXAMPLE.replace("m = 99", "m = 100");
        assert!(matches!(StudyConfig::from_toml(&text), Err(Error::Config(_))));
    }

    #[test]
    fn rejects_out_of_range_bounds() {
        // J is distance-based: its bound is 0.1.
        let text = EXAMPLE.replace(
            "summaries = [\"beta0\", \"j\", \"l\"]",
            "summaries = [\"j\", \"j\", \"j\"]",
        );
        let text = text.replace("r_upper = [0.1, 0.1, 0.25]", "r_upper = [0.1, 0.1, 0.2]");
        assert!(StudyConfig::from_toml(&text).is_err());
    }

    #[test]
    fn rejects_bad_gamma() {
        let text = format!(
            "{EXAMPLE}\n[[models]]\nfamily = \"strauss\"\nbeta = 95.0\ngamma = 1.5\nradius = 1.0\n"
        );
        assert!(StudyConfig::from_toml(&text).is_err());
    }
}
