//! Reproducible samplers for the six point-process model families.

pub mod gdpp;
pub mod gibbs;
pub mod rng;
pub mod samplers;
pub mod spec;

pub use gdpp::{gdpp_alpha_bound, gdpp_eigenvalue, sample_gdpp};
pub use gibbs::{sample_hardcore, sample_strauss, DEFAULT_CHAIN_LENGTH};
pub use rng::{poisson_count, stream_seed, RngStream};
pub use samplers::{badsil_grid_dim, sample_binomial, sample_cell, sample_matern_cluster, sample_poisson};
pub use spec::{ModelSpec, SamplerOptions};
