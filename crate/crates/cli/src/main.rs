use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use angular_wkb::report::{self, Command, Format, IntRange, RunConfig};
use angular_wkb::Error;
use clap::{Args, Parser, Subcommand};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// WKB, SWKB and shooting spectra of the angular-momentum operator.
#[derive(Parser, Debug)]
#[command(name = "angular-wkb", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Truncated and summed series quantization per (m, n_theta).
    Quantize(Flags),
    /// Numerical loop integrals of each phase order against closed forms.
    Contour(Flags),
    /// Leading-order SWKB levels and CBC integrals.
    Swkb(Flags),
    /// Eigenvalues by shooting.
    Oracle(Flags),
    /// Every method side by side.
    Report(Flags),
    /// Exact C_{n,l} coefficients for n = 1..order as JSON.
    Coefficients(Flags),
}

#[derive(Args, Debug)]
struct Flags {
    /// Azimuthal quantum numbers, inclusive `a..b`.
    #[arg(long = "m", default_value = "1..1")]
    m: IntRange,
    /// Level indices, inclusive `a..b`.
    #[arg(long = "n-theta", default_value = "0..0")]
    n_theta: IntRange,
    /// Total angular momenta (overrides --n-theta for oracle, report, contour).
    #[arg(long = "l")]
    l: Option<IntRange>,
    /// Highest order (series terms, contour order or coefficient order).
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Initial contour sample count.
    #[arg(long, default_value_t = 1024)]
    samples: usize,
    /// Agreement required of oracle and report rows.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cmd {
    fn into_config(self) -> RunConfig {
        let (command, f) = match self {
            Cmd::Quantize(f) => (Command::Quantize, f),
            Cmd::Contour(f) => (Command::Contour, f),
            Cmd::Swkb(f) => (Command::Swkb, f),
            Cmd::Oracle(f) => (Command::Oracle, f),
            Cmd::Report(f) => (Command::Report, f),
            Cmd::Coefficients(f) => (Command::Coefficients, f),
        };
        RunConfig {
            command,
            m_range: f.m,
            n_theta_range: f.n_theta,
            l_range: f.l,
            order: f.order,
            samples: f.samples,
            tolerance: f.tolerance,
            format: f.format,
            out: f.out,
        }
    }
}

fn emit(cfg: &RunConfig, body: &str) -> std::io::Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cfg = Cli::parse().command.into_config();
    let output = match report::run(&cfg) {
        Ok(o) => o,
        Err(e @ Error::InvalidConfig { .. }) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_NUMERICAL);
        }
    };
    if let Err(e) = emit(&cfg, &output.body) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::FAILURE;
    }
    if output.failures.is_empty() {
        return ExitCode::SUCCESS;
    }
    for f in &output.failures {
        eprintln!("gate failed: {f}");
    }
    ExitCode::from(EXIT_NUMERICAL)
}
