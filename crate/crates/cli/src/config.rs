//! Command-line parsing and validation into a [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use adaptquad::io::{parse_cell, parse_integrand, Format, SpecError};
use adaptquad::{AdaptiveConfig, Comparator, Integrand, Parallelepiped};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

/// Directory used for output files when `--out` is not given.
pub const OUT_DIR_ENV: &str = "ADAPTQUAD_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "adaptquad", version, about = "Adaptive tensor-product Gauss quadrature on parallelepipeds")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Build an adaptive rule and write its points and weights
    Rule(AdaptiveArgs),
    /// Build an adaptive rule and report the integral of every integrand
    Integrate(AdaptiveArgs),
    /// Tensor-rule convergence study of a single integrand
    Converge(ConvergeArgs),
    /// Tensor-product versus adaptive accuracy for a family of integrands
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// `unitsquare`, `unitinterval`, `unitcube<N>`, `sym<N>` or rows `x,y;x,y;...`
    #[arg(long, allow_hyphen_values = true)]
    cell: Option<String>,
    /// Integrand `name[:p1,p2,...]`; repeatable
    #[arg(long = "fn", value_name = "SPEC")]
    fns: Vec<String>,
    /// `csv` or `json`
    #[arg(long)]
    format: Option<String>,
    /// Output file; defaults to `$ADAPTQUAD_OUT_DIR/<command>.<ext>`, else stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AdaptiveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Absolute tolerance per integrand per cell
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Low and high points per direction
    #[arg(long, default_value = "5,8")]
    nsp: String,
    #[arg(long, default_value = "30")]
    max_depth: String,
    /// `ge` (subdivide when err >= tol) or `gt`
    #[arg(long, default_value = "ge")]
    comparator: String,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Points per direction: `lo..hi`, `lo..hi:step` or a comma list
    #[arg(long, default_value = "2..24:2")]
    m: String,
    /// Cusp location; defaults to the origin
    #[arg(long, allow_hyphen_values = true)]
    cusp: Option<String>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated adaptive tolerances
    #[arg(long, default_value = "1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8,1e-9,1e-10")]
    tols: String,
    /// Tensor points per direction, same syntax as `converge --m`
    #[arg(long, default_value = "2..64:2")]
    ms: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Rule(AdaptiveConfig),
    Integrate(AdaptiveConfig),
    Converge { ms: Vec<usize>, cusp: Vec<f64> },
    Compare { tols: Vec<f64>, ms: Vec<usize> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rule(_) => "rule",
            Command::Integrate(_) => "integrate",
            Command::Converge { .. } => "converge",
            Command::Compare { .. } => "compare",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub cell: Parallelepiped,
    pub integrands: Vec<Integrand>,
    pub format: Format,
    pub output: Output,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{field}: missing required value")]
    Missing { field: String },
    #[error("{field}: {source}")]
    MalformedCell { field: String, source: SpecError },
    #[error("{field}: unknown integrand `{name}`")]
    UnknownIntegrand { field: String, name: String },
    #[error("{field}: must be positive, got {value}")]
    NonPositiveTol { field: String, value: String },
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
    /// Rejected by the argument parser, including `--help` and `--version`.
    #[error("{}", flatten_clap(.0))]
    Usage(clap::Error),
}

impl ConfigError {
    /// Short machine-readable category.
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::Missing { .. } => "missing",
            ConfigError::MalformedCell { .. } => "malformed-cell",
            ConfigError::UnknownIntegrand { .. } => "unknown-integrand",
            ConfigError::NonPositiveTol { .. } => "nonpositive-tol",
            ConfigError::Invalid { .. } => "invalid",
            ConfigError::Usage(_) => "usage",
        }
    }

    /// Help and version requests surface as errors from the parser.
    pub fn is_informational(&self) -> bool {
        matches!(
            self,
            ConfigError::Usage(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion)
        )
    }
}

fn flatten_clap(e: &clap::Error) -> String {
    e.render()
        .to_string()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .map(|l| l.strip_prefix("error: ").unwrap_or(l))
        .collect::<Vec<_>>()
        .join(" ")
}

fn invalid(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field: field.to_string(), reason: reason.into() }
}

fn parse_f64(field: &str, s: &str) -> Result<f64, ConfigError> {
    s.trim().parse::<f64>().map_err(|_| invalid(field, format!("`{s}` is not a number")))
}

fn parse_usize(field: &str, s: &str) -> Result<usize, ConfigError> {
    s.trim().parse::<usize>().map_err(|_| invalid(field, format!("`{s}` is not a non-negative integer")))
}

fn parse_tol(field: &str, s: &str) -> Result<f64, ConfigError> {
    let tol = parse_f64(field, s)?;
    if tol <= 0.0 || !tol.is_finite() {
        return Err(ConfigError::NonPositiveTol { field: field.to_string(), value: s.trim().to_string() });
    }
    Ok(tol)
}

/// `lo..hi`, `lo..hi:step` or `a,b,c`; strictly increasing and positive.
pub fn parse_counts(field: &str, s: &str) -> Result<Vec<usize>, ConfigError> {
    let counts = if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, parse_usize(field, step)?),
            None => (rest, 1),
        };
        let (lo, hi) = (parse_usize(field, lo)?, parse_usize(field, hi)?);
        if step == 0 {
            return Err(invalid(field, "step must be positive"));
        }
        (lo..=hi).step_by(step).collect()
    } else {
        s.split(',').map(|p| parse_usize(field, p)).collect::<Result<Vec<_>, _>>()?
    };
    if counts.is_empty() {
        return Err(invalid(field, format!("`{s}` selects no point counts")));
    }
    if counts[0] == 0 || counts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(field, "point counts must be positive and strictly increasing"));
    }
    Ok(counts)
}

fn parse_format(value: Option<&str>) -> Result<Format, ConfigError> {
    match value {
        None => Ok(Format::Csv),
        Some(v) => Format::from_name(v).ok_or_else(|| invalid("format", format!("expected `csv` or `json`, got `{v}`"))),
    }
}

fn resolve_output(out: Option<PathBuf>, env_dir: Option<PathBuf>, command: &str, format: Format) -> Output {
    match (out, env_dir) {
        (Some(path), _) => Output::File(path),
        (None, Some(dir)) => Output::File(dir.join(format!("{command}.{}", format.extension()))),
        (None, None) => Output::Stdout,
    }
}

fn cell_and_integrands(common: &CommonArgs) -> Result<(Parallelepiped, Vec<Integrand>), ConfigError> {
    let spec = common.cell.as_deref().ok_or_else(|| ConfigError::Missing { field: "cell".into() })?;
    let cell = parse_cell(spec).map_err(|source| ConfigError::MalformedCell { field: "cell".into(), source })?;
    if common.fns.is_empty() {
        return Err(ConfigError::Missing { field: "fn".into() });
    }
    let mut integrands = Vec::new();
    for (i, f) in common.fns.iter().enumerate() {
        let field = format!("fn[{i}]");
        match parse_integrand(f, cell.dim()) {
            Ok(fs) => integrands.extend(fs),
            Err(SpecError::UnknownIntegrand(name)) => return Err(ConfigError::UnknownIntegrand { field, name }),
            Err(e) => return Err(ConfigError::Invalid { field, reason: e.to_string() }),
        }
    }
    Ok((cell, integrands))
}

fn adaptive_config(args: &AdaptiveArgs) -> Result<AdaptiveConfig, ConfigError> {
    let tol = parse_tol("tol", args.tol.as_deref().ok_or_else(|| ConfigError::Missing { field: "tol".into() })?)?;
    let nsp: Vec<usize> = args.nsp.split(',').map(|p| parse_usize("nsp", p)).collect::<Result<_, _>>()?;
    let [low, high] = nsp[..] else {
        return Err(invalid("nsp", format!("expected `low,high`, got `{}`", args.nsp)));
    };
    let comparator = Comparator::from_name(args.comparator.trim())
        .ok_or_else(|| invalid("comparator", format!("expected `ge` or `gt`, got `{}`", args.comparator)))?;
    let config = AdaptiveConfig::new(tol)
        .with_points(low, high)
        .with_max_depth(parse_usize("max-depth", &args.max_depth)?)
        .with_comparator(comparator);
    config.validate().map_err(|e| {
        let field = if low < 1 || high <= low { "nsp" } else { "max-depth" };
        invalid(field, e.to_string())
    })?;
    Ok(config)
}

/// Parses `argv` (including the program name). `env_out_dir` is the value of
/// [`OUT_DIR_ENV`], passed in so that parsing stays a pure function.
pub fn parse_config<I, T>(argv: I, env_out_dir: Option<PathBuf>) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ConfigError::Usage)?;
    let (common, command) = match cli.command {
        CliCommand::Rule(a) => {
            let cfg = adaptive_config(&a)?;
            (a.common, Command::Rule(cfg))
        }
        CliCommand::Integrate(a) => {
            let cfg = adaptive_config(&a)?;
            (a.common, Command::Integrate(cfg))
        }
        CliCommand::Converge(a) => {
            let ms = parse_counts("m", &a.m)?;
            let cusp = match &a.cusp {
                Some(c) => c.split(',').map(|v| parse_f64("cusp", v)).collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            };
            (a.common, Command::Converge { ms, cusp })
        }
        CliCommand::Compare(a) => {
            let tols = a.tols.split(',').map(|t| parse_tol("tols", t)).collect::<Result<Vec<_>, _>>()?;
            let ms = parse_counts("ms", &a.ms)?;
            (a.common, Command::Compare { tols, ms })
        }
    };

    let format = parse_format(common.format.as_deref())?;
    let (cell, integrands) = cell_and_integrands(&common)?;
    let command = match command {
        Command::Converge { ms, cusp } => {
            if integrands.len() != 1 {
                return Err(invalid("fn", format!("converge takes exactly one integrand, got {}", integrands.len())));
            }
            let cusp = if cusp.is_empty() { vec![0.0; cell.dim()] } else { cusp };
            if cusp.len() != cell.dim() {
                return Err(invalid("cusp", format!("expected {} coordinates, got {}", cell.dim(), cusp.len())));
            }
            Command::Converge { ms, cusp }
        }
        other => other,
    };
    let output = resolve_output(common.out, env_out_dir, command.name(), format);
    Ok(RunConfig { command, cell, integrands, format, output })
}
