use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lphodge::pipeline::{threads_from_env, with_threads, DEFAULT_ERROR_TARGET, DEFAULT_SEED};
use lphodge::{emit_report, run_pipeline, CliError, ExitStatus, InputFormat, OutputFormat, RunConfig, Sections};

/// Hodge decompositions, heat semigroups and Lp interpolation bounds on
/// weighted simplicial complexes.
///
/// Exit status: 0 success, 1 invariant failure, 2 input error. The worker
/// thread count is read from LPHODGE_THREADS.
#[derive(Parser)]
#[command(name = "lphodge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a complex; report counts and Betti numbers.
    Build(Common),
    /// Eigendecomposition of the Hodge Laplacian in one degree.
    Spectrum(Common),
    /// Decompose a cochain into exact, coexact and harmonic parts.
    Decompose(Common),
    /// Growth and decay rates, admissible exponents and norm brackets.
    Interp(Common),
    /// Decompose and cross-check: uniqueness, dimensions, Riesz transforms,
    /// Gaffney ratios.
    Verify(Common),
    /// Every section above in one report.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Complex file (JSON, OFF or edge list).
    #[arg(long, short)]
    input: PathBuf,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_parser = parse_input_format)]
    input_format: Option<InputFormat>,
    /// Degree of the cochains under study.
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Exponents, comma separated; `inf` is accepted.
    #[arg(long = "p", value_delimiter = ',', default_values_t = lphodge::pipeline::DEFAULT_P_LIST)]
    p_list: Vec<f64>,
    /// Admissible-interval margin ε (default τ/10).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Quadrature error target in (0, 1e-2].
    #[arg(long, default_value_t = DEFAULT_ERROR_TARGET)]
    error_target: f64,
    /// Times for the growth-rate fit, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = lphodge::pipeline::DEFAULT_T_GRID)]
    t_grid: Vec<f64>,
    /// Seed for random cochains and power-method starts.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Directory for cached eigendecompositions.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Report destination (standard output when omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Report format: json or csv; inferred from --output when omitted.
    #[arg(long, value_parser = parse_output_format)]
    format: Option<OutputFormat>,
}

fn parse_input_format(s: &str) -> Result<InputFormat, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_output_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl Common {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let format = match self.input_format {
            Some(f) => f,
            None => InputFormat::from_path(&self.input).ok_or_else(|| {
                CliError::Input(format!("cannot infer the format of {}; pass --input-format", self.input.display()))
            })?,
        };
        let output_format = self.format.unwrap_or_else(|| {
            let csv = self.output.as_ref().and_then(|p| p.extension()).is_some_and(|e| e.eq_ignore_ascii_case("csv"));
            if csv {
                OutputFormat::Csv
            } else {
                OutputFormat::Json
            }
        });
        let mut cfg = RunConfig::new(self.input, format);
        cfg.degree = self.degree;
        cfg.p_list = self.p_list;
        cfg.epsilon = self.epsilon;
        cfg.error_target = self.error_target;
        cfg.t_grid = self.t_grid;
        cfg.seed = self.seed;
        cfg.cache_dir = self.cache_dir;
        cfg.output = self.output;
        cfg.output_format = output_format;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<ExitStatus, CliError> {
    let (name, sections, common) = match cli.command {
        Command::Build(c) => ("build", Sections::BUILD, c),
        Command::Spectrum(c) => ("spectrum", Sections::SPECTRUM, c),
        Command::Decompose(c) => ("decompose", Sections::DECOMPOSE, c),
        Command::Interp(c) => ("interp", Sections::INTERP, c),
        Command::Verify(c) => ("verify", Sections::VERIFY, c),
        Command::Report(c) => ("report", Sections::ALL, c),
    };
    let cfg = common.into_config()?;
    let threads = threads_from_env()?;
    let report = with_threads(threads, || run_pipeline(&cfg, sections, name))??;
    emit_report(&report, cfg.output.as_deref(), cfg.output_format)?;
    if report.passed() {
        Ok(ExitStatus::Success)
    } else {
        eprintln!("{}", CliError::Invariants(report.violations.clone()));
        Ok(ExitStatus::InvariantFailure)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
