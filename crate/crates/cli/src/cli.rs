//! Argument parsing and dispatch for the `hqdisk` binary.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::experiments::{self, Settings};
use crate::lifts::LiftName;
use crate::render;
use crate::report::{Check, ExperimentReport};

#[derive(Debug, Parser)]
#[command(name = "hqdisk", version, about = "Harmonic quasiconformal maps of the unit disk: experiments and figures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Poisson quadrature nodes (principal-value nodes for hilbert-demo).
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Largest certified interior radius.
    #[arg(long, global = true)]
    pub rmax: Option<f64>,
    /// Principal-value exclusion half-width.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Last approximant index for incompleteness.
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// Random combinations for convexity.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw circles, rays and a grid with their images as SVG.
    Render {
        /// identity | example3 | smoothstep | phi_n:<n> | phi_cantor | mobius:<re>[,<im>]
        #[arg(long, default_value = "identity", value_parser = parse_lift)]
        lift: LiftName,
    },
    /// Cantor approximants: uniform convergence, admissibility, distortion.
    Incompleteness,
    /// Membership and dilatation growth of the map with a flat segment.
    Example3,
    /// Random convex combinations of admissible lifts.
    Convexity,
    /// Conjugate pairs, linearity and kernel agreement of the Hilbert transform.
    HilbertDemo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

fn parse_lift(s: &str) -> std::result::Result<LiftName, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl Cli {
    pub fn settings(&self) -> Settings {
        Settings {
            nodes: self.nodes,
            r_max: self.rmax,
            epsilon: self.eps,
            n_max: self.nmax,
            trials: self.trials,
            seed: self.seed,
            lift: match &self.command {
                Command::Render { lift } => lift.clone(),
                _ => LiftName::Identity,
            },
        }
    }
}

fn open(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>, out: Option<&Path>) -> Result<()> {
    w.flush().map_err(|source| CliError::Io {
        path: out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
        source,
    })
}

fn emit<R: Serialize, S: Serialize>(
    mut report: ExperimentReport<R, S>,
    command: &'static str,
    format: Format,
    out: Option<&Path>,
) -> Result<Vec<Check>> {
    if let Some(p) = out {
        report.artifacts.push(p.display().to_string());
    }
    if format == Format::Svg {
        return Err(CliError::Unsupported { command, format: "svg" });
    }
    let mut w = open(out)?;
    match format {
        Format::Json => report.write_json(&mut w)?,
        _ => report.write_csv(&mut w)?,
    }
    finish(w, out)?;
    Ok(report.checks)
}

/// Runs the selected experiment, writes its output, and returns its checks.
pub fn run(cli: &Cli) -> Result<Vec<Check>> {
    let s = cli.settings();
    let out = cli.out.as_deref();
    let table = cli.format.unwrap_or(Format::Csv);
    match &cli.command {
        Command::Render { .. } => {
            let r = render::render(&s)?;
            match cli.format.unwrap_or(Format::Svg) {
                Format::Svg => {
                    let mut w = open(out)?;
                    w.write_all(r.svg.as_bytes()).map_err(|source| CliError::Io {
                        path: out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
                        source,
                    })?;
                    finish(w, out)?;
                    Ok(r.report.checks)
                }
                Format::Json => emit(r.report, "render", Format::Json, out),
                Format::Csv => Err(CliError::Unsupported { command: "render", format: "csv" }),
            }
        }
        Command::Incompleteness => emit(experiments::incompleteness(&s)?, "incompleteness", table, out),
        Command::Example3 => emit(experiments::example3(&s)?, "example3", table, out),
        Command::Convexity => emit(experiments::convexity(&s)?, "convexity", table, out),
        Command::HilbertDemo => emit(experiments::hilbert_demo(&s)?, "hilbert-demo", table, out),
    }
}
