//! Command-line interface: simulate point patterns, evaluate summary
//! statistics, run single Monte Carlo tests and full power studies.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use spatgof::geometry::{PointPattern, Window};
use spatgof::gof::TestStatistic;
use spatgof::models::{ModelSpec, RngStream, SamplerOptions};
use spatgof::study::{emit_report, run_power_study, single_test, StudyConfig, SummaryComputer};
use spatgof::summaries::{SummaryId, DEFAULT_F_LATTICE};

#[derive(Parser)]
#[command(
    name = "spatgof",
    about = "Monte Carlo goodness-of-fit testing for planar point patterns",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one pattern from a model and write it as a pattern file.
    Simulate(SimulateArgs),
    /// Evaluate a summary statistic of a pattern and write a curve CSV.
    Summarize(SummarizeArgs),
    /// Run one Monte Carlo test of a pattern against the binomial null.
    Test(TestArgs),
    /// Run a configured power study and write its reports.
    Power(PowerArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Model family: poi | binomial | matclu | badsil | hard | strauss | gdpp
    model: String,
    /// Window area A; the window is [0, sqrt(A)]^2.
    #[arg(long, default_value_t = 1.0)]
    window: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stream index (replication counter) within the seed.
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long)]
    out: PathBuf,
    /// Intensity lambda (poi, badsil, gdpp).
    #[arg(long)]
    lambda: Option<f64>,
    /// Point count (binomial).
    #[arg(long)]
    n: Option<usize>,
    /// Parent intensity kappa (matclu).
    #[arg(long)]
    kappa: Option<f64>,
    /// Mean children per parent mu (matclu).
    #[arg(long)]
    mu: Option<f64>,
    /// Interaction / cluster radius R (matclu, hard, strauss).
    #[arg(long)]
    radius: Option<f64>,
    /// Intensity parameter beta (hard, strauss).
    #[arg(long)]
    beta: Option<f64>,
    /// Interaction strength gamma in [0, 1] (strauss).
    #[arg(long)]
    gamma: Option<f64>,
    /// Kernel shape alpha (gdpp).
    #[arg(long)]
    alpha: Option<f64>,
    /// Burn-in proposals for the Gibbs samplers.
    #[arg(long, default_value_t = 100_000)]
    chain_length: usize,
}

#[derive(Args)]
struct SummarizeArgs {
    patternfile: PathBuf,
    /// Summary statistic: k | l | pcf | f | g | j | beta0 | beta1 | apf0 | apf1 | euler
    #[arg(long)]
    stat: String,
    #[arg(long)]
    out: PathBuf,
    /// Lattice resolution for the empty space function.
    #[arg(long, default_value_t = DEFAULT_F_LATTICE)]
    f_lattice: usize,
}

#[derive(Args)]
struct TestArgs {
    patternfile: PathBuf,
    /// Null model; only the conditional binomial null is supported.
    #[arg(long, default_value = "binomial")]
    null: String,
    /// Summary statistic the test is built on.
    #[arg(long)]
    stat: String,
    /// Test statistic: mad | dclf | st | qdir | crps | int | point | fun
    #[arg(long)]
    teststat: String,
    /// Ordering (only needed for fun: erl | area | cont).
    #[arg(long)]
    ordering: Option<String>,
    #[arg(long, default_value_t = 299)]
    m: usize,
    #[arg(long)]
    rmax: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_F_LATTICE)]
    f_lattice: usize,
    /// Where to write the outcome CSV row.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the envelope CSV (fun tests only).
    #[arg(long)]
    envelope_out: Option<PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn build_model(args: &SimulateArgs) -> Result<ModelSpec> {
    let mut spec = ModelSpec::benchmark_default(&args.model)?;
    match &mut spec {
        ModelSpec::Poi { lambda } | ModelSpec::BadSil { lambda } => {
            if let Some(v) = args.lambda {
                *lambda = v;
            }
        }
        ModelSpec::Binomial { n } => {
            if let Some(v) = args.n {
                *n = v;
            }
        }
        ModelSpec::MatClu { kappa, mu, radius } => {
            if let Some(v) = args.kappa {
                *kappa = v;
            }
            if let Some(v) = args.mu {
                *mu = v;
            }
            if let Some(v) = args.radius {
                *radius = v;
            }
        }
        ModelSpec::Hard { beta, radius } => {
            if let Some(v) = args.beta {
                *beta = v;
            }
            if let Some(v) = args.radius {
                *radius = v;
            }
        }
        ModelSpec::Strauss { beta, gamma, radius } => {
            if let Some(v) = args.beta {
                *beta = v;
            }
            if let Some(v) = args.gamma {
                *gamma = v;
            }
            if let Some(v) = args.radius {
                *radius = v;
            }
        }
        ModelSpec::Gdpp { lambda, alpha } => {
            if let Some(v) = args.lambda {
                *lambda = v;
            }
            if let Some(v) = args.alpha {
                *alpha = v;
            }
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Simulate(args) => {
            let spec = build_model(&args)?;
            let window = Window::square_with_area(args.window)?;
            let opts = SamplerOptions { chain_length: args.chain_length };
            let pattern = spec.sample(&window, RngStream::new(args.seed, args.stream), &opts)?;
            pattern.write_file(&args.out)?;
            eprintln!(
                "wrote {} points from {} to {}",
                pattern.len(),
                spec.family_name(),
                args.out.display()
            );
        }
        Command::Summarize(args) => {
            let pattern = PointPattern::read_file(&args.patternfile)?;
            let summary = SummaryId::parse(&args.stat)?;
            let computer = SummaryComputer::new(args.f_lattice);
            let values = computer
                .compute(&pattern, &[summary])?
                .remove(&summary)
                .unwrap();
            let curve = spatgof::summaries::SummaryCurve::new(
                summary,
                computer.grid(summary).clone(),
                values,
            );
            let id = args
                .patternfile
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "pattern".into());
            std::fs::write(&args.out, curve.to_csv(&id))
                .with_context(|| format!("writing {}", args.out.display()))?;
            eprintln!("wrote {} curve to {}", summary, args.out.display());
        }
        Command::Test(args) => {
            if args.null != "binomial" {
                bail!("unsupported null model `{}`; only `binomial` is available", args.null);
            }
            let pattern = PointPattern::read_file(&args.patternfile)?;
            let summary = SummaryId::parse(&args.stat)?;
            let statistic = TestStatistic::parse(&args.teststat, args.ordering.as_deref())?;
            let outcome = single_test(
                &pattern,
                summary,
                statistic,
                args.rmax,
                args.m,
                args.alpha,
                args.seed,
                args.f_lattice,
            )?;
            println!(
                "{}\n{}",
                spatgof::gof::TestOutcome::CSV_HEADER,
                outcome.csv_row()
            );
            if let Some(path) = &args.out {
                std::fs::write(
                    path,
                    format!("{}\n{}\n", spatgof::gof::TestOutcome::CSV_HEADER, outcome.csv_row()),
                )?;
            }
            if let Some(path) = &args.envelope_out {
                match &outcome.envelope {
                    Some(env) => std::fs::write(path, env.to_csv())?,
                    None => bail!("--envelope-out is only available for fun tests"),
                }
            }
            eprintln!(
                "p = {} ({} at alpha = {})",
                outcome.p_value,
                if outcome.reject(args.alpha) { "reject" } else { "accept" },
                args.alpha
            );
        }
        Command::Power(args) => {
            let text = std::fs::read_to_string(&args.config)
                .with_context(|| format!("reading {}", args.config.display()))?;
            let config = StudyConfig::from_toml(&text)?;
            let table = run_power_study(&config)?;
            let files = emit_report(&table, &args.out)?;
            for f in &files {
                eprintln!("wrote {}", f.display());
            }
        }
    }
    Ok(())
}
