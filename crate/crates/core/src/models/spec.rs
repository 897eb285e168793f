//! Model specifications: the six point-process families with their
//! parameters, validation, and dispatch to the samplers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{PointPattern, Window};

use super::gdpp::{gdpp_alpha_bound, sample_gdpp};
use super::gibbs::{sample_hardcore, sample_strauss, DEFAULT_CHAIN_LENGTH};
use super::rng::RngStream;
use super::samplers::{sample_binomial, sample_cell, sample_matern_cluster, sample_poisson};

/// Sampler tuning knobs that are not part of the model definition.
#[derive(Debug, Clone, Copy)]
pub struct SamplerOptions {
    /// Burn-in proposals for the Gibbs (Strauss / hard core) chains.
    pub chain_length: usize,
}

impl Default for SamplerOptions {
    fn default() -> Self {
        SamplerOptions { chain_length: DEFAULT_CHAIN_LENGTH }
    }
}

/// One of the six point-process model families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelSpec {
    /// Homogeneous Poisson process (complete spatial randomness).
    Poi { lambda: f64 },
    /// Fixed number of iid uniform points (the conditional null model).
    Binomial { n: usize },
    /// Matern cluster process.
    #[serde(rename = "matclu")]
    MatClu { kappa: f64, mu: f64, radius: f64 },
    /// Baddeley-Silverman cell process.
    #[serde(rename = "badsil")]
    BadSil { lambda: f64 },
    /// Hard core process.
    Hard { beta: f64, radius: f64 },
    /// Strauss process.
    #[serde(rename = "strauss")]
    Strauss { beta: f64, gamma: f64, radius: f64 },
    /// Gaussian determinantal point process.
    Gdpp { lambda: f64, alpha: f64 },
}

impl ModelSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            ModelSpec::Poi { .. } => "poi",
            ModelSpec::Binomial { .. } => "binomial",
            ModelSpec::MatClu { .. } => "matclu",
            ModelSpec::BadSil { .. } => "badsil",
            ModelSpec::Hard { .. } => "hard",
            ModelSpec::Strauss { .. } => "strauss",
            ModelSpec::Gdpp { .. } => "gdpp",
        }
    }

    /// The benchmark parameterization of each family.
    pub fn benchmark_default(family: &str) -> Result<ModelSpec> {
        match family {
            "poi" => Ok(ModelSpec::Poi { lambda: 50.0 }),
            "binomial" => Ok(ModelSpec::Binomial { n: 50 }),
            "matclu" => Ok(ModelSpec::MatClu { kappa: 25.0, mu: 2.0, radius: 0.2 }),
            "badsil" => Ok(ModelSpec::BadSil { lambda: 50.0 }),
            "hard" => Ok(ModelSpec::Hard { beta: 80.0, radius: 0.05 }),
            "strauss" => Ok(ModelSpec::Strauss { beta: 95.0, gamma: 0.6, radius: 1.0 }),
            "gdpp" => Ok(ModelSpec::Gdpp { lambda: 50.0, alpha: 0.05 }),
            other => Err(Error::InvalidParameter {
                name: "family",
                message: format!("unknown model family `{other}`"),
            }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| -> Result<()> {
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    message: format!("must be positive, got {v}"),
                })
            }
        };
        match *self {
            ModelSpec::Poi { lambda } => positive("lambda", lambda),
            ModelSpec::Binomial { .. } => Ok(()),
            ModelSpec::MatClu { kappa, mu, radius } => {
                positive("kappa", kappa)?;
                positive("mu", mu)?;
                positive("radius", radius)
            }
            ModelSpec::BadSil { lambda } => positive("lambda", lambda),
            ModelSpec::Hard { beta, radius } => {
                positive("beta", beta)?;
                positive("radius", radius)
            }
            ModelSpec::Strauss { beta, gamma, radius } => {
                positive("beta", beta)?;
                positive("radius", radius)?;
                if (0.0..=1.0).contains(&gamma) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "gamma",
                        message: format!("must lie in [0, 1], got {gamma}"),
                    })
                }
            }
            ModelSpec::Gdpp { lambda, alpha } => {
                positive("lambda", lambda)?;
                let bound = gdpp_alpha_bound(lambda);
                if alpha > 0.0 && alpha < bound {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "alpha",
                        message: format!("existence requires 0 < alpha < {bound}, got {alpha}"),
                    })
                }
            }
        }
    }

    /// Draw one pattern; a pure function of `(self, window, stream, opts)`.
    pub fn sample(
        &self,
        window: &Window,
        stream: RngStream,
        opts: &SamplerOptions,
    ) -> Result<PointPattern> {
        self.validate()?;
        match *self {
            ModelSpec::Poi { lambda } => sample_poisson(lambda, window, stream),
            ModelSpec::Binomial { n } => Ok(sample_binomial(n, window, stream)),
            ModelSpec::MatClu { kappa, mu, radius } => {
                sample_matern_cluster(kappa, mu, radius, window, stream)
            }
            ModelSpec::BadSil { lambda } => sample_cell(lambda, window, stream),
            ModelSpec::Hard { beta, radius } => {
                sample_hardcore(beta, radius, window, stream, opts.chain_length)
            }
            ModelSpec::Strauss { beta, gamma, radius } => {
                sample_strauss(beta, gamma, radius, window, stream, opts.chain_length)
            }
            ModelSpec::Gdpp { lambda, alpha } => sample_gdpp(lambda, alpha, window, stream),
        }
    }
}
