mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use maxmod_core::checks::DEFAULT_SEED;

use config::JobConfig;
use output::Writer;

/// Reproducible experiments on recurrences with polynomial coefficients.
#[derive(Debug, Parser)]
#[command(name = "maxmod-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON job configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; MAXMOD_LAB_OUT takes precedence.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Main numerical tolerance of the command.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (default: all available).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Command {
    /// Zeros of sequence terms and the isolated stable set.
    Zeros,
    /// Marker grid, discriminant curves and branch points of the symbol.
    Discriminant,
    /// Ratio of consecutive terms on a grid.
    RatioField,
    /// Residue measure of a term ratio against the closed-form density.
    Measure,
    /// Perron line sweep of the companion family along a real segment.
    PerronSweep,
    /// Degree audit and three-way membership agreement.
    MaxmodAudit,
    /// Acceptance criteria with measured values.
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Zeros => "zeros",
            Command::Discriminant => "discriminant",
            Command::RatioField => "ratio-field",
            Command::Measure => "measure",
            Command::PerronSweep => "perron-sweep",
            Command::MaxmodAudit => "maxmod-audit",
            Command::Report => "report",
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Bad configuration or specification (exit 2).
    Invalid(String),
    /// A numerical routine failed (exit 3).
    Numeric(String),
    /// I/O and other runtime errors (exit 3).
    Runtime(String),
}

impl Failure {
    pub fn invalid(e: maxmod_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Numeric(_) | Failure::Runtime(_) => 3,
        }
    }
}

impl From<maxmod_core::Error> for Failure {
    fn from(e: maxmod_core::Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "{m}"),
            Failure::Numeric(m) => write!(f, "numerical failure: {m}"),
            Failure::Runtime(m) => write!(f, "{m}"),
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Failure::Invalid("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    let mut cfg = JobConfig::load(cli.config.as_deref())?;
    cfg.seed = Some(cli.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED));
    cfg.tol = cli.tol.or(cfg.tol);
    cfg.validate()?;
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let out = match std::env::var_os("MAXMOD_LAB_OUT") {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => cli.out.clone(),
    };
    let name = cli.command.name();
    let mut w = Writer::new(&out, name, cfg.hash(name), seed)?;
    let ok = match cli.command {
        Command::Zeros => commands::zeros(&cfg, &mut w).map(|_| true),
        Command::Discriminant => commands::discriminant(&cfg, &mut w).map(|_| true),
        Command::RatioField => commands::ratio_field_cmd(&cfg, &mut w).map(|_| true),
        Command::Measure => commands::measure(&cfg, &mut w).map(|_| true),
        Command::PerronSweep => commands::perron_sweep(&cfg, &mut w).map(|_| true),
        Command::MaxmodAudit => commands::maxmod_audit(&cfg, seed, &mut w).map(|_| true),
        Command::Report => commands::report(&cfg, seed, &mut w),
    }?;
    for p in &w.written {
        println!("{}", p.display());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("maxmod-lab: some criteria failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("maxmod-lab: {e}");
            ExitCode::from(e.code())
        }
    }
}
