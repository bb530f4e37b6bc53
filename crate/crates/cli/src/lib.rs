//! The `npeano` command line: evaluation, inversion, polylines and the
//! analysis estimators, rendered as text, CSV or JSON.
//!
//! [`run`] writes the whole report to a caller-supplied writer and returns the
//! invariant violations it found, so the binary only maps the outcome to an
//! exit code.

mod analyze;
mod render;

use std::io::{self, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use npeano::analysis::DEFAULT_MAX_CELLS;
use npeano::{DigitSeq, PeanoCurve, Point, PointDigits, TriadicRational};
use serde::Serialize;

pub use analyze::AnalyzeCommand;
use render::{decimal, decimal_places};

/// Environment variable overriding the grid-cell ceiling.
pub const MAX_CELLS_ENV: &str = "NPEANO_MAX_CELLS";

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "npeano", version, about = "Exact n-dimensional Peano curve")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Dimension n of the curve.
    #[arg(long, global = true, default_value_t = 2)]
    pub dim: usize,
    /// Working column depth J.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Inclusive level range `A..B` for box counting.
    #[arg(long, global = true, value_parser = parse_levels)]
    pub levels: Option<RangeInclusive<usize>>,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Coordinate index i, 1-based.
    #[arg(long, global = true, default_value_t = 1)]
    pub coord: usize,
    /// Bin depth d of the histogram.
    #[arg(long, global = true, default_value_t = 1)]
    pub bin_depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the curve at a parameter given as `0.t1t2..(tail)` or `N/3^m`.
    Eval { t: String },
    /// Build the parameter and key of a point, one value per coordinate.
    Invert {
        #[arg(required = true)]
        coords: Vec<String>,
    },
    /// Print `t,x_1,..,x_n` over the depth-J parameter grid.
    Polyline,
    /// Run an estimator or identity check.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<npeano::Error> for CliError {
    fn from(e: npeano::Error) -> Self {
        match e {
            npeano::Error::ResourceLimit { .. } => {
                CliError::Resource(format!("{e} (raise {MAX_CELLS_ENV} to allow larger grids)"))
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Invariant violations found while producing a report. Empty means exit 0.
pub type Violations = Vec<String>;

fn parse_levels(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `A..B`, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad level {a:?}"))?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad level {b:?}"))?;
    if a > b {
        return Err(format!("empty level range {s}"));
    }
    Ok(a..=b)
}

/// Reads a parameter or coordinate as a digit string or a triadic fraction.
pub fn parse_value(s: &str) -> CliResult<DigitSeq> {
    if let Ok(seq) = s.parse::<DigitSeq>() {
        return Ok(seq);
    }
    s.parse::<TriadicRational>()
        .map(|v| DigitSeq::from_triadic(&v))
        .map_err(|e| match e {
            npeano::Error::OutOfUnitInterval(_) => CliError::Usage(e.to_string()),
            _ => CliError::Usage(format!(
                "cannot read {s:?}: expected digits `0.t1t2..` with optional `(0)`/`(2)` tail, or `N/3^m`"
            )),
        })
}

/// The grid-cell ceiling from [`MAX_CELLS_ENV`], or the library default.
pub fn max_cells_from_env() -> CliResult<u64> {
    match std::env::var(MAX_CELLS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_CELLS_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

pub fn run(cli: &Cli, max_cells: u64, out: &mut dyn Write) -> CliResult<Violations> {
    let config = &cli.config;
    let curve = PeanoCurve::new(config.dim)?;
    match &cli.command {
        Command::Eval { t } => eval(&curve, config, t, out),
        Command::Invert { coords } => invert(&curve, config, coords, out),
        Command::Polyline => polyline(&curve, config, max_cells, out),
        Command::Analyze(cmd) => analyze::run(cmd, config, max_cells, out),
    }
}

fn depth_or(config: &Config, required: usize) -> CliResult<usize> {
    match config.depth {
        Some(0) => Err(CliError::Usage("--depth must be at least 1".into())),
        Some(d) if d < required => Err(CliError::Usage(format!(
            "--depth {d} is too small, the input needs {required}"
        ))),
        Some(d) => Ok(d),
        None => Ok(required.max(1)),
    }
}

#[derive(Serialize)]
struct Coordinate {
    exact: String,
    decimal: String,
}

fn coordinates(point: &Point, depth: usize) -> Vec<Coordinate> {
    let places = decimal_places(depth);
    point
        .coords()
        .iter()
        .map(|x| Coordinate {
            exact: x.to_string(),
            decimal: decimal(x, places),
        })
        .collect()
}

fn eval(
    curve: &PeanoCurve,
    config: &Config,
    t: &str,
    out: &mut dyn Write,
) -> CliResult<Violations> {
    let t = parse_value(t)?;
    let depth = depth_or(config, curve.required_depth(&t))?;
    let point = curve.eval(&t, depth)?;
    let coords = coordinates(&point, depth);
    match config.format {
        Format::Text => {
            writeln!(out, "{point}")?;
            let decimals: Vec<&str> = coords.iter().map(|c| c.decimal.as_str()).collect();
            writeln!(out, "({})", decimals.join(", "))?;
        }
        Format::Csv => {
            writeln!(out, "i,exact,decimal")?;
            for (i, c) in coords.iter().enumerate() {
                writeln!(out, "{},{},{}", i + 1, c.exact, c.decimal)?;
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                dim: usize,
                depth: usize,
                t: String,
                coords: &'a [Coordinate],
            }
            let report = Report {
                dim: curve.dim(),
                depth,
                t: t.to_string(),
                coords: &coords,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
    }
    Ok(Vec::new())
}

fn invert(
    curve: &PeanoCurve,
    config: &Config,
    coords: &[String],
    out: &mut dyn Write,
) -> CliResult<Violations> {
    if coords.len() != curve.dim() {
        return Err(CliError::Usage(format!(
            "expected {} coordinates, got {}",
            curve.dim(),
            coords.len()
        )));
    }
    let rows = coords
        .iter()
        .map(|c| parse_value(c))
        .collect::<CliResult<Vec<_>>>()?;
    let required = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let depth = depth_or(config, required)?;
    let target = PointDigits::new(rows);
    let t = curve.invert(&target, depth)?;
    let key = curve.key_encode(&target, depth)?;
    let value = t.to_triadic();
    match config.format {
        Format::Text => {
            writeln!(out, "t = {value}")?;
            writeln!(out, "key = {key}")?;
        }
        Format::Csv => {
            writeln!(out, "t,digits,key")?;
            writeln!(out, "{value},{t},{key}")?;
        }
        Format::Json => {
            let report = serde_json::json!({
                "dim": curve.dim(),
                "depth": depth,
                "t": value.to_string(),
                "digits": t.to_string(),
                "key": key.to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
    }
    Ok(Vec::new())
}

fn polyline(
    curve: &PeanoCurve,
    config: &Config,
    max_cells: u64,
    out: &mut dyn Write,
) -> CliResult<Violations> {
    let n = curve.dim();
    let depth = depth_or(config, 1)?;
    let digits = n * depth;
    let cells = 3u128.checked_pow(digits as u32).unwrap_or(u128::MAX);
    if cells + 1 > max_cells as u128 {
        return Err(npeano::Error::ResourceLimit {
            required: cells.saturating_add(1),
            limit: max_cells,
        }
        .into());
    }
    let cells = cells as u64;
    let t_places = decimal_places(digits);
    let x_places = decimal_places(depth);
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(cells as usize + 1);
    for s in 0..=cells {
        let t = if s == cells {
            DigitSeq::one()
        } else {
            DigitSeq::from_index(s, digits)
        };
        let point = curve.eval(&t, depth)?;
        let mut row = vec![decimal(&t.to_triadic(), t_places)];
        row.extend(point.coords().iter().map(|x| decimal(x, x_places)));
        rows.push(row);
    }
    match config.format {
        Format::Text | Format::Csv => {
            for row in rows {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        Format::Json => {
            let report = serde_json::json!({ "dim": n, "depth": depth, "rows": rows });
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
        }
    }
    Ok(Vec::new())
}
