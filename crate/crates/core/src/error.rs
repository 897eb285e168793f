use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point pattern where at least {needed} point(s) are required")]
    EmptyPattern { needed: usize },

    #[error("duplicate point at ({x}, {y}); patterns must be simple")]
    DuplicatePoint { x: f64, y: f64 },

    #[error("point ({x}, {y}) lies outside the window")]
    PointOutsideWindow { x: f64, y: f64 },

    #[error("invalid window: [{x0}, {x1}] x [{y0}, {y1}]")]
    InvalidWindow { x0: f64, x1: f64, y0: f64, y1: f64 },

    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    #[error("invalid evaluation grid: {0}")]
    InvalidGrid(String),

    #[error("circle of radius {radius} centered at ({x}, {y}) lies entirely outside the window")]
    CircleOutsideWindow { x: f64, y: f64, radius: f64 },

    #[error("pattern has {n} points but the estimator requires at least {needed}")]
    TooFewPoints { n: usize, needed: usize },

    #[error("grid upper bound {r_max} exceeds the allowed bound {bound} for this statistic")]
    RangeTooLarge { r_max: f64, bound: f64 },

    #[error("ensemble is degenerate: {0}")]
    DegenerateEnsemble(String),

    #[error("need at least {needed} simulations, got {m}")]
    TooFewSimulations { m: usize, needed: usize },

    #[error("study configuration error: {0}")]
    Config(String),

    #[error("malformed pattern file: {0}")]
    PatternFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
