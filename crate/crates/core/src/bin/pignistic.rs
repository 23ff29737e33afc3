use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pignistic::io::{self, Format, InputDocument};
use pignistic::{compare, evaluate, pic, Error, Result, SolverConfig, TransformKind};

/// Pignistic probability transforms and risk-threshold decisions.
#[derive(Debug, Parser)]
#[command(name = "pignistic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply one transform to a BBA document.
    Transform {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Probability information content of a distribution, or of a BBA after
    /// applying a transform.
    Pic {
        #[arg(long)]
        input: PathBuf,
        /// Transform for BBA input [default: betp].
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Pick a transform from the evidence maturity and report the hypotheses
    /// above the risk threshold.
    Decide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        thresholds: PathBuf,
        /// Profile to use when the threshold file holds several.
        #[arg(long)]
        profile: Option<String>,
        /// Decision threshold a probability must strictly exceed.
        #[arg(long)]
        risk: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// All five transforms side by side.
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        risk: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Max-norm step at which the self-consistent iteration stops.
    #[arg(long, default_value_t = SolverConfig::DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long = "max-iter", default_value_t = SolverConfig::DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        Ok(SolverConfig::new(self.tolerance, self.max_iter)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Betp,
    Prapl,
    Prpl,
    Prbl,
    Prscp,
}

impl From<Method> for TransformKind {
    fn from(m: Method) -> Self {
        match m {
            Method::Betp => TransformKind::BetP,
            Method::Prapl => TransformKind::PraPl,
            Method::Prpl => TransformKind::PrPl,
            Method::Prbl => TransformKind::PrBl,
            Method::Prscp => TransformKind::PrScP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Record,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Record => Format::Record,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<T>(path: &Path, r: std::result::Result<T, io::DocumentError>) -> Result<T> {
    r.map_err(|source| Error::Document {
        path: path.display().to_string(),
        source,
    })
}

fn check_risk(risk: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&risk) {
        Ok(risk)
    } else {
        Err(Error::Usage(format!(
            "--risk must lie in [0, 1], got {risk}"
        )))
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Transform {
            method,
            input,
            solver,
            format,
        } => {
            let config = solver.config()?;
            let m = with_path(&input, io::parse_bba_document(&read(&input)?))?;
            let result = TransformKind::from(method).apply(&m, &config)?;
            let score = pic(&result.distribution);
            Ok(io::render_transform(&result, score, format.into()))
        }
        Command::Pic {
            input,
            method,
            solver,
            format,
        } => {
            let config = solver.config()?;
            let distribution = match with_path(&input, io::parse_input_document(&read(&input)?))? {
                InputDocument::Bba(m) => {
                    let kind = method.map_or(TransformKind::BetP, TransformKind::from);
                    kind.apply(&m, &config)?.distribution
                }
                InputDocument::Distribution(d) => {
                    if method.is_some() {
                        return Err(Error::Usage(
                            "--method only applies to BBA input".to_owned(),
                        ));
                    }
                    d
                }
            };
            let score = pic(&distribution);
            Ok(io::render_pic(&distribution, score, format.into()))
        }
        Command::Decide {
            input,
            thresholds,
            profile,
            risk,
            solver,
            format,
        } => {
            let risk = check_risk(risk)?;
            let config = solver.config()?;
            let m = with_path(&input, io::parse_bba_document(&read(&input)?))?;
            let profiles = with_path(
                &thresholds,
                io::parse_threshold_profiles(&read(&thresholds)?),
            )?;
            let t = with_path(
                &thresholds,
                io::select_profile(profiles, profile.as_deref()),
            )?;
            let report = evaluate(&m, &t, risk, &config)?;
            Ok(io::render_report(&report, format.into()))
        }
        Command::Compare {
            input,
            risk,
            solver,
            format,
        } => {
            let risk = risk.map(check_risk).transpose()?;
            let config = solver.config()?;
            let m = with_path(&input, io::parse_bba_document(&read(&input)?))?;
            let comparison = compare(&m, risk, &config)?;
            Ok(io::render_comparison(&comparison, format.into()))
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1 so that 2 stays reserved for solver failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
