//! Text formats: quadrature rules (CSV/JSON), study tables (CSV/JSON), and
//! the compact cell and integrand specifications used on the command line.
//!
//! Numbers are written in the shortest decimal form that parses back to the
//! same `f64`, so both formats round-trip exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adaptive::{AdaptiveConfig, AdaptiveResult};
use crate::error::{QuadError, Result};
use crate::gauss::RuleND;
use crate::geometry::Parallelepiped;
use crate::integrands::{self, Integrand, Interface2D, InterfaceKind};
use crate::studies::{ComparisonRecord, ConvergenceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// On-disk JSON layout of a rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleFile {
    pub dim: usize,
    pub count: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nsp: Option<[usize; 2]>,
}

impl RuleFile {
    pub fn from_rule(rule: &RuleND) -> Self {
        RuleFile {
            dim: rule.dim(),
            count: rule.len(),
            points: rule.points().map(<[f64]>::to_vec).collect(),
            weights: rule.weights().to_vec(),
            leaf_count: None,
            tol: None,
            comparator: None,
            nsp: None,
        }
    }

    pub fn from_result(result: &AdaptiveResult, config: &AdaptiveConfig) -> Self {
        RuleFile {
            leaf_count: Some(result.leaf_count),
            tol: Some(config.tol),
            comparator: Some(config.comparator.name().to_string()),
            nsp: Some([config.nsp_low, config.nsp_high]),
            ..Self::from_rule(&result.rule)
        }
    }

    pub fn to_rule(&self) -> Result<RuleND> {
        if self.points.len() != self.count || self.weights.len() != self.count {
            return Err(QuadError::Parse(format!(
                "count {} disagrees with {} points and {} weights",
                self.count,
                self.points.len(),
                self.weights.len()
            )));
        }
        if let Some(p) = self.points.iter().find(|p| p.len() != self.dim) {
            return Err(QuadError::Parse(format!("point of length {} in a {}-dimensional rule", p.len(), self.dim)));
        }
        RuleND::new(self.dim, self.points.concat(), self.weights.clone())
    }
}

/// `dim,count` on the first line, then `x1,...,xn,w` per point.
pub fn rule_to_csv(rule: &RuleND) -> String {
    let mut out = String::with_capacity(rule.len() * (rule.dim() + 1) * 20);
    let _ = writeln!(out, "{},{}", rule.dim(), rule.len());
    for (p, w) in rule.points().zip(rule.weights()) {
        for x in p {
            let _ = write!(out, "{x},");
        }
        let _ = writeln!(out, "{w}");
    }
    out
}

pub fn rule_from_csv(text: &str) -> Result<RuleND> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| QuadError::Parse("empty rule file".into()))?;
    let head = parse_numbers(header)?;
    if head.len() != 2 || head[0] < 1.0 || head[0].fract() != 0.0 || head[1].fract() != 0.0 {
        return Err(QuadError::Parse(format!("bad header line `{header}`, expected `dim,count`")));
    }
    let (dim, count) = (head[0] as usize, head[1] as usize);
    let mut points = Vec::with_capacity(dim * count);
    let mut weights = Vec::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let row = parse_numbers(line)?;
        if row.len() != dim + 1 {
            return Err(QuadError::Parse(format!("row {} has {} fields, expected {}", i + 1, row.len(), dim + 1)));
        }
        points.extend_from_slice(&row[..dim]);
        weights.push(row[dim]);
    }
    if weights.len() != count {
        return Err(QuadError::Parse(format!("header says {count} points, found {}", weights.len())));
    }
    RuleND::new(dim, points, weights)
}

pub fn rule_file_to_json(file: &RuleFile) -> String {
    let mut s = serde_json::to_string(file).expect("rule file serializes");
    s.push('\n');
    s
}

pub fn rule_file_from_json(text: &str) -> Result<RuleFile> {
    serde_json::from_str(text).map_err(|e| QuadError::Parse(format!("rule json: {e}")))
}

/// Renders an adaptive result in the requested format.
pub fn render_rule(result: &AdaptiveResult, config: &AdaptiveConfig, format: Format) -> String {
    match format {
        Format::Csv => rule_to_csv(&result.rule),
        Format::Json => rule_file_to_json(&RuleFile::from_result(result, config)),
    }
}

pub fn write_rule(result: &AdaptiveResult, config: &AdaptiveConfig, format: Format, path: &Path) -> Result<()> {
    write_text(path, &render_rule(result, config, format))
}

/// Reads a rule written by [`write_rule`], picking the format by extension.
pub fn read_rule(path: &Path) -> Result<RuleND> {
    let text = std::fs::read_to_string(path).map_err(|source| QuadError::Io { path: path.to_path_buf(), source })?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => rule_file_from_json(&text)?.to_rule(),
        _ => rule_from_csv(&text),
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| QuadError::Io { path: path.to_path_buf(), source })
}

pub const CONVERGENCE_COLUMNS: &str = "m,total_points,min_dist,abs_error";
pub const COMPARISON_COLUMNS: &str = "strategy,total_points,max_rel_error";

pub fn convergence_to_csv(records: &[ConvergenceRecord]) -> String {
    let mut out = format!("{CONVERGENCE_COLUMNS}\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{}", r.points_per_direction, r.total_points, r.min_dist_to_cusp, r.abs_error);
    }
    out
}

pub fn comparison_to_csv(records: &[ComparisonRecord]) -> String {
    let mut out = format!("{COMPARISON_COLUMNS}\n");
    for r in records {
        let _ = writeln!(out, "{},{},{}", r.strategy.name(), r.total_points, r.max_rel_error);
    }
    out
}

pub fn render_convergence(records: &[ConvergenceRecord], format: Format) -> String {
    match format {
        Format::Csv => convergence_to_csv(records),
        Format::Json => serde_json::to_string(records).expect("records serialize") + "\n",
    }
}

pub fn render_comparison(records: &[ComparisonRecord], format: Format) -> String {
    match format {
        Format::Csv => comparison_to_csv(records),
        Format::Json => serde_json::to_string(records).expect("records serialize") + "\n",
    }
}

pub const INTEGRAL_COLUMNS: &str = "index,label,integral";

/// Integrals of several functions with one adaptive rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralReport {
    pub total_points: usize,
    pub leaf_count: usize,
    pub integrals: Vec<IntegralEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralEntry {
    pub label: String,
    pub integral: f64,
}

impl IntegralReport {
    pub fn new(result: &AdaptiveResult, integrands: &[Integrand], values: &[f64]) -> Self {
        IntegralReport {
            total_points: result.rule.len(),
            leaf_count: result.leaf_count,
            integrals: integrands
                .iter()
                .zip(values)
                .map(|(f, &integral)| IntegralEntry { label: f.label().to_string(), integral })
                .collect(),
        }
    }
}

/// CSV labels are quoted since they may contain commas.
pub fn render_integrals(report: &IntegralReport, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("{INTEGRAL_COLUMNS}\n");
            for (i, e) in report.integrals.iter().enumerate() {
                let _ = writeln!(out, "{i},\"{}\",{}", e.label.replace('"', "\"\""), e.integral);
            }
            out
        }
        Format::Json => serde_json::to_string(report).expect("report serializes") + "\n",
    }
}

fn parse_numbers(line: &str) -> Result<Vec<f64>> {
    line.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| QuadError::Parse(format!("bad number `{}`", s.trim()))))
        .collect()
}

/// Problems with cell or integrand specifications.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("malformed cell: {0}")]
    MalformedCell(String),
    #[error("unknown integrand `{0}`")]
    UnknownIntegrand(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParameters { name: String, reason: String },
}

/// Parses a cell specification.
///
/// Named shortcuts: `unitsquare`, `unitcube<N>` (`[0,1]^N`) and `sym<N>`
/// (`[-1,1]^N`). Otherwise `dim + 1` rows separated by `;`, each with `dim`
/// comma-separated numbers: the base point, then the vertices adjacent to it.
pub fn parse_cell(spec: &str) -> Result<Parallelepiped, SpecError> {
    let spec = spec.trim();
    let named_dim = |prefix: &str| spec.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok());
    let named = match spec {
        "unitsquare" => Some(Parallelepiped::unit_cube(2)),
        "unitinterval" => Some(Parallelepiped::unit_cube(1)),
        _ => named_dim("unitcube")
            .map(Parallelepiped::unit_cube)
            .or_else(|| named_dim("sym").map(|d| Parallelepiped::cube(d, -1.0, 1.0))),
    };
    if let Some(cell) = named {
        return cell.map_err(|e| SpecError::MalformedCell(e.to_string()));
    }

    let rows = spec
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| SpecError::MalformedCell(format!("row `{}` is not a list of numbers", r.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dim = rows.first().map(Vec::len).ok_or_else(|| SpecError::MalformedCell("no rows".into()))?;
    if rows.len() != dim + 1 {
        return Err(SpecError::MalformedCell(format!(
            "{} rows given for a {dim}-dimensional cell, need {}",
            rows.len(),
            dim + 1
        )));
    }
    Parallelepiped::from_vertices(&rows).map_err(|e| SpecError::MalformedCell(e.to_string()))
}

/// Parses `name[:p1,p2,...]` into one or more integrands of dimension `dim`.
///
/// | name | parameters |
/// |------|------------|
/// | `constant` | `value` |
/// | `gaussian` | `amplitude,alpha,c1,...,c_dim` |
/// | `linear_cusp` | none |
/// | `exp_cusp` | `alpha` |
/// | `heaviside` | `kind,eps` (2-D only) |
/// | `heaviside_family` | `kind[,h]` (2-D only, expands to five) |
pub fn parse_integrand(spec: &str, dim: usize) -> Result<Vec<Integrand>, SpecError> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), p.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()),
        None => (spec.trim(), Vec::new()),
    };
    let bad = |reason: String| SpecError::BadParameters { name: name.to_string(), reason };
    let numbers = |ps: &[&str]| -> Result<Vec<f64>, SpecError> {
        ps.iter().map(|p| p.parse::<f64>().map_err(|_| bad(format!("`{p}` is not a number")))).collect()
    };
    let expect_count = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(bad(format!("expected {n} parameters, got {}", params.len())))
        }
    };
    let need_2d = || if dim == 2 { Ok(()) } else { Err(bad(format!("only defined in 2 dimensions, cell has {dim}"))) };
    let interface = |p: &str| {
        InterfaceKind::from_name(p)
            .map(Interface2D::default_for)
            .ok_or_else(|| bad(format!("unknown interface kind `{p}`")))
    };

    match name {
        "constant" => {
            expect_count(1)?;
            Ok(vec![integrands::constant(dim, numbers(&params)?[0])])
        }
        "gaussian" => {
            expect_count(2 + dim)?;
            let v = numbers(&params)?;
            integrands::gaussian_bump(v[0], v[1], v[2..].to_vec())
                .map(|f| vec![f])
                .map_err(|e| bad(e.to_string()))
        }
        "linear_cusp" => {
            expect_count(0)?;
            Ok(vec![integrands::linear_cusp(dim)])
        }
        "exp_cusp" => {
            expect_count(1)?;
            integrands::exp_cusp(numbers(&params)?[0], dim).map(|f| vec![f]).map_err(|e| bad(e.to_string()))
        }
        "heaviside" => {
            need_2d()?;
            expect_count(2)?;
            let eps = numbers(&params[1..])?[0];
            integrands::heaviside(interface(params[0])?, eps).map(|f| vec![f]).map_err(|e| bad(e.to_string()))
        }
        "heaviside_family" => {
            need_2d()?;
            if params.is_empty() || params.len() > 2 {
                return Err(bad(format!("expected 1 or 2 parameters, got {}", params.len())));
            }
            let h = if params.len() == 2 { numbers(&params[1..])?[0] } else { 1.0 };
            integrands::heaviside_family(&interface(params[0])?, h).map_err(|e| bad(e.to_string()))
        }
        other => Err(SpecError::UnknownIntegrand(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptive::build_adaptive_rule;
    use crate::gauss::reference_rule;
    use crate::integrands::gaussian_bump;
    use crate::studies::Strategy;

    #[test]
    fn one_point_rule_csv() {
        let r = reference_rule(1, 1).unwrap();
        assert_eq!(rule_to_csv(&r), "1,1\n0.5,1\n");
        assert_eq!(rule_from_csv("1,1\n0.5,1\n").unwrap(), r);
    }

    #[test]
    fn integral_report_quotes_labels() {
        let cell = Parallelepiped::unit_cube(2).unwrap();
        let f = gaussian_bump(1.0, 2.0, vec![0.5, 0.5]).unwrap();
        let res = build_adaptive_rule(&cell, std::slice::from_ref(&f), &AdaptiveConfig::new(1e-3)).unwrap();
        let report = IntegralReport::new(&res, &[f], &[0.25]);
        let csv = render_integrals(&report, Format::Csv);
        assert_eq!(csv, "index,label,integral\n0,\"gaussian(1,2,[0.5, 0.5])\",0.25\n");
        let json = render_integrals(&report, Format::Json);
        assert!(json.starts_with("{\"total_points\":25,\"leaf_count\":1,"), "{json}");
    }

    #[test]
    fn csv_roundtrip_is_exact() {
        let cell = Parallelepiped::new(vec![0.1, 0.2], vec![0.3, 0.7, -1.1, 0.13]).unwrap();
        let r = cell.map_rule(&reference_rule(7, 2).unwrap()).unwrap();
        assert_eq!(rule_from_csv(&rule_to_csv(&r)).unwrap(), r);
    }

    #[test]
    fn json_roundtrip_bytes() {
        let cell = Parallelepiped::unit_cube(2).unwrap();
        let f = gaussian_bump(1.0, 50.0, vec![0.3, 0.4]).unwrap();
        let cfg = AdaptiveConfig::new(1e-5);
        let res = build_adaptive_rule(&cell, &[f], &cfg).unwrap();
        let first = render_rule(&res, &cfg, Format::Json);
        let parsed = rule_file_from_json(&first).unwrap();
        assert_eq!(parsed.to_rule().unwrap(), res.rule);
        assert_eq!(parsed.comparator.as_deref(), Some("ge"));
        assert_eq!(parsed.leaf_count, Some(res.leaf_count));
        assert_eq!(rule_file_to_json(&parsed), first);
    }

    #[test]
    fn malformed_rule_files() {
        assert!(rule_from_csv("").is_err());
        assert!(rule_from_csv("2,1\n0.5,1\n").is_err());
        assert!(rule_from_csv("1,2\n0.5,1\n").is_err());
        assert!(rule_from_csv("x,1\n").is_err());
        let bad = r#"{"dim":1,"count":2,"points":[[0.5]],"weights":[1.0]}"#;
        assert!(rule_file_from_json(bad).unwrap().to_rule().is_err());
    }

    #[test]
    fn study_csv_headers() {
        assert_eq!(convergence_to_csv(&[]), "m,total_points,min_dist,abs_error\n");
        assert_eq!(comparison_to_csv(&[]), "strategy,total_points,max_rel_error\n");
        let rec = ComparisonRecord {
            strategy: Strategy::Adaptive,
            total_points: 25,
            max_rel_error: 0.5,
            parameter: 1e-3,
            integrals: vec![],
        };
        assert_eq!(comparison_to_csv(&[rec]), "strategy,total_points,max_rel_error\nadaptive,25,0.5\n");
    }

    #[test]
    fn named_and_explicit_cells() {
        assert_eq!(parse_cell("unitcube3").unwrap(), Parallelepiped::unit_cube(3).unwrap());
        assert_eq!(parse_cell("sym3").unwrap(), Parallelepiped::cube(3, -1.0, 1.0).unwrap());
        assert_eq!(parse_cell("unitsquare").unwrap(), Parallelepiped::unit_cube(2).unwrap());
        assert_eq!(parse_cell("0,0,0;1,0,0;0,1,0;0,0,1").unwrap(), Parallelepiped::unit_cube(3).unwrap());
        assert!(matches!(parse_cell("0,0,0;1,0,0;0,1,0"), Err(SpecError::MalformedCell(_))));
        assert!(matches!(parse_cell("0,0;1,1;2,2"), Err(SpecError::MalformedCell(_))));
        assert!(matches!(parse_cell("a,b;c,d;e,f"), Err(SpecError::MalformedCell(_))));
        assert!(matches!(parse_cell("sym0"), Err(SpecError::MalformedCell(_))));
    }

    #[test]
    fn integrand_specs() {
        let f = parse_integrand("gaussian:100,200,0.81,0.62,0.73", 3).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].value(&[0.81, 0.62, 0.73]), 100.0);
        assert_eq!(parse_integrand("linear_cusp", 2).unwrap()[0].value(&[0.0, 0.0]), 1.0);
        assert_eq!(parse_integrand("heaviside_family:kinked", 2).unwrap().len(), 5);
        assert_eq!(parse_integrand("heaviside:straight,0.1", 2).unwrap().len(), 1);
        assert!(matches!(parse_integrand("sinc:1", 2), Err(SpecError::UnknownIntegrand(n)) if n == "sinc"));
        assert!(matches!(parse_integrand("gaussian:1,2,0", 3), Err(SpecError::BadParameters { .. })));
        assert!(matches!(parse_integrand("exp_cusp:-3", 1), Err(SpecError::BadParameters { .. })));
        assert!(matches!(parse_integrand("heaviside_family:straight", 3), Err(SpecError::BadParameters { .. })));
        assert!(matches!(parse_integrand("heaviside_family:wavy", 2), Err(SpecError::BadParameters { .. })));
    }
}
