//! Binary entry point: argument parsing, dispatch, output, exit codes.
//!
//! Exit codes: 0 when every box certified, 1 when some box did not,
//! 2 on bad flags or unusable input. Timing goes to standard error so
//! tables on standard output stay byte-identical across runs.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use alphabox_cli::{
    render_certify, render_sweep, run_certify, run_precision_sweep, run_radius_sweep, CliError,
    RunConfig,
};

#[derive(Parser)]
#[command(
    name = "alphabox",
    version,
    about = "Certify solutions of polynomial systems over interval boxes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Polynomial system file
    #[arg(long)]
    system: PathBuf,
    /// Candidate points file
    #[arg(long)]
    points: PathBuf,
    /// Output format: tsv or json
    #[arg(long, default_value = "tsv")]
    format: String,
    /// Write the table to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify each candidate box at one radius and precision
    Certify {
        #[command(flatten)]
        io: IoArgs,
        /// Box half-width around each point (nonnegative decimal)
        #[arg(long, default_value = "0")]
        radius: String,
        /// Working precision: double or bits:N (N >= 24)
        #[arg(long, default_value = "double")]
        precision: String,
        /// Classify certified boxes pairwise and report solution clusters
        #[arg(long)]
        distinct: bool,
    },
    /// Certify the same boxes at several radii
    RadiusSweep {
        #[command(flatten)]
        io: IoArgs,
        /// Comma-separated radii, e.g. 1e-5,1e-7,1e-10
        #[arg(long)]
        radii: String,
        /// Working precision: double or bits:N (N >= 24)
        #[arg(long, default_value = "double")]
        precision: String,
    },
    /// Certify the same boxes at several mantissa sizes
    PrecisionSweep {
        #[command(flatten)]
        io: IoArgs,
        /// Comma-separated mantissa bit counts, e.g. 16,32,64 (each >= 16)
        #[arg(long)]
        bits: String,
        /// Box half-width around each point (nonnegative decimal)
        #[arg(long, default_value = "1e-20")]
        radius: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match execute(cli) {
        Ok((table, output_path, all_certified)) => {
            if let Err(e) = emit(&table, output_path.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprintln!(
                "timing: {:.3} ms",
                started.elapsed().as_secs_f64() * 1e3
            );
            if all_certified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(table: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, table),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(table.as_bytes())?;
            stdout.flush()
        }
    }
}

fn execute(cli: Cli) -> Result<(String, Option<PathBuf>, bool), CliError> {
    match cli.command {
        Command::Certify {
            io,
            radius,
            precision,
            distinct,
        } => {
            let cfg = to_config(io, radius, &precision, distinct)?;
            let report = run_certify(&cfg)?;
            let all = report.all_certified();
            Ok((render_certify(&report, cfg.format), cfg.output_path, all))
        }
        Command::RadiusSweep {
            io,
            radii,
            precision,
        } => {
            let radii = split_list(&radii, "radii")?;
            let cfg = to_config(io, "0".to_owned(), &precision, false)?;
            let report = run_radius_sweep(&cfg, &radii)?;
            let all = report.all_certified();
            Ok((render_sweep(&report, cfg.format), cfg.output_path, all))
        }
        Command::PrecisionSweep { io, bits, radius } => {
            let bits = parse_bits_list(&bits)?;
            let cfg = to_config(io, radius, "double", false)?;
            let report = run_precision_sweep(&cfg, &bits)?;
            let all = report.all_certified();
            Ok((render_sweep(&report, cfg.format), cfg.output_path, all))
        }
    }
}

fn to_config(
    io: IoArgs,
    radius: String,
    precision: &str,
    distinct: bool,
) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        system_path: io.system,
        points_path: io.points,
        radius,
        precision: precision.parse()?,
        distinct,
        format: io.format.parse()?,
        output_path: io.output,
    })
}

fn split_list(text: &str, what: &str) -> Result<Vec<String>, CliError> {
    let items: Vec<String> = text
        .split(',')
        .map(|t| t.trim().to_owned())
        .filter(|t| !t.is_empty())
        .collect();
    if items.is_empty() {
        return Err(CliError::Config(format!("{what} list is empty")));
    }
    Ok(items)
}

fn parse_bits_list(text: &str) -> Result<Vec<u32>, CliError> {
    split_list(text, "bits")?
        .iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| CliError::Config(format!("invalid bits value '{t}'")))
        })
        .collect()
}
