//! Recursive adaptive quadrature construction.
//!
//! A cell is accepted when, for every integrand still being refined, the
//! low-order and high-order tensor Gauss rules agree to within an absolute
//! tolerance. Otherwise the cell is split into `2^dim` halves and only the
//! integrands that failed are carried into the children. The rule over the
//! root is the concatenation of the low-order rules of all accepted cells,
//! in depth-first order with children visited in binary-counter order.

use thiserror::Error;

use crate::error::{QuadError, Result};
use crate::gauss::{reference_rule, RuleND};
use crate::geometry::Parallelepiped;
use crate::integrands::Integrand;

/// When a cell's error estimate triggers subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    /// Subdivide when `err >= tol`.
    AtLeast,
    /// Subdivide when `err > tol`.
    Exceeds,
}

/// Comparator used unless a config says otherwise.
pub const DEFAULT_COMPARATOR: Comparator = Comparator::AtLeast;

impl Comparator {
    pub fn needs_refinement(self, err: f64, tol: f64) -> bool {
        match self {
            Comparator::AtLeast => err >= tol,
            Comparator::Exceeds => err > tol,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::AtLeast => ">=",
            Comparator::Exceeds => ">",
        }
    }

    /// Short name used on the command line and in rule files.
    pub fn name(self) -> &'static str {
        match self {
            Comparator::AtLeast => "ge",
            Comparator::Exceeds => "gt",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "ge" | ">=" => Some(Comparator::AtLeast),
            "gt" | ">" => Some(Comparator::Exceeds),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveConfig {
    /// Points per direction of the rule that is kept on accepted cells.
    pub nsp_low: usize,
    /// Points per direction of the rule used as the reference value.
    pub nsp_high: usize,
    /// Absolute tolerance per integrand per cell.
    pub tol: f64,
    pub max_depth: usize,
    pub comparator: Comparator,
}

impl AdaptiveConfig {
    pub const DEFAULT_NSP_LOW: usize = 5;
    pub const DEFAULT_NSP_HIGH: usize = 8;
    pub const DEFAULT_MAX_DEPTH: usize = 30;

    pub fn new(tol: f64) -> Self {
        AdaptiveConfig {
            nsp_low: Self::DEFAULT_NSP_LOW,
            nsp_high: Self::DEFAULT_NSP_HIGH,
            tol,
            max_depth: Self::DEFAULT_MAX_DEPTH,
            comparator: DEFAULT_COMPARATOR,
        }
    }

    pub fn with_comparator(mut self, comparator: Comparator) -> Self {
        self.comparator = comparator;
        self
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn with_points(mut self, nsp_low: usize, nsp_high: usize) -> Self {
        self.nsp_low = nsp_low;
        self.nsp_high = nsp_high;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nsp_low < 1 {
            return Err(QuadError::InvalidArgument("nsp_low must be at least 1".into()));
        }
        if self.nsp_high <= self.nsp_low {
            return Err(QuadError::InvalidArgument(format!(
                "nsp_high ({}) must exceed nsp_low ({})",
                self.nsp_high, self.nsp_low
            )));
        }
        if self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(QuadError::InvalidArgument(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_depth < 1 {
            return Err(QuadError::InvalidArgument("max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// An accepted cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaf {
    pub cell: Parallelepiped,
    pub depth: usize,
    /// Indices of the integrands that were checked (and passed) here.
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveResult {
    /// Concatenated low-order rules of all leaves.
    pub rule: RuleND,
    pub leaf_count: usize,
    pub max_depth_reached: usize,
    /// For each integrand, the number of leaves at which it was still active.
    pub per_integrand_active_leaves: Vec<usize>,
    /// For each integrand, the number of cells at which its error was
    /// estimated.
    pub per_integrand_checks: Vec<usize>,
    pub leaves: Vec<Leaf>,
}

/// `sum_i w_i f(p_i)`; fails on the first non-finite value.
pub fn integrate_with_rule(rule: &RuleND, f: &Integrand) -> Result<f64> {
    integrate_indexed(rule, f, 0, &mut Vec::new())
}

fn integrate_indexed(rule: &RuleND, f: &Integrand, index: usize, scratch: &mut Vec<f64>) -> Result<f64> {
    if rule.is_empty() {
        return Err(QuadError::InvalidArgument("cannot integrate with an empty rule".into()));
    }
    if rule.dim() != f.dim() {
        return Err(QuadError::InvalidArgument(format!(
            "integrand dimension {} does not match rule dimension {}",
            f.dim(),
            rule.dim()
        )));
    }
    f.evaluate(rule.coords(), scratch);
    let mut sum = 0.0;
    for (i, (&w, &v)) in rule.weights().iter().zip(scratch.iter()).enumerate() {
        if !v.is_finite() {
            return Err(QuadError::NonFinite { integrand: index, point: rule.point(i).to_vec(), value: v });
        }
        sum += w * v;
    }
    Ok(sum)
}

/// `|I_high - I_low|` for the given reference rules mapped onto `cell`.
pub fn local_error(f: &Integrand, cell: &Parallelepiped, low_ref: &RuleND, high_ref: &RuleND) -> Result<f64> {
    let low = cell.map_rule(low_ref)?;
    let high = cell.map_rule(high_ref)?;
    let mut scratch = Vec::new();
    let i1 = integrate_indexed(&low, f, 0, &mut scratch)?;
    let i2 = integrate_indexed(&high, f, 0, &mut scratch)?;
    Ok((i2 - i1).abs())
}

/// Reference rules for one `(config, dim)` pair, reusable across many cells.
#[derive(Debug, Clone)]
pub struct AdaptiveBuilder {
    config: AdaptiveConfig,
    low_ref: RuleND,
    high_ref: RuleND,
}

struct WorkItem {
    cell: Parallelepiped,
    active: Vec<usize>,
    depth: usize,
}

impl AdaptiveBuilder {
    pub fn new(config: AdaptiveConfig, dim: usize) -> Result<Self> {
        config.validate()?;
        Ok(AdaptiveBuilder {
            config,
            low_ref: reference_rule(config.nsp_low, dim)?,
            high_ref: reference_rule(config.nsp_high, dim)?,
        })
    }

    pub fn config(&self) -> &AdaptiveConfig {
        &self.config
    }

    pub fn low_reference(&self) -> &RuleND {
        &self.low_ref
    }

    pub fn high_reference(&self) -> &RuleND {
        &self.high_ref
    }

    pub fn build(&self, cell: &Parallelepiped, integrands: &[Integrand]) -> Result<AdaptiveResult> {
        let dim = cell.dim();
        if dim != self.low_ref.dim() {
            return Err(QuadError::InvalidArgument(format!(
                "builder is for dimension {}, cell has dimension {dim}",
                self.low_ref.dim()
            )));
        }
        if integrands.is_empty() {
            return Err(QuadError::InvalidArgument("at least one integrand is required".into()));
        }
        if let Some((i, f)) = integrands.iter().enumerate().find(|(_, f)| f.dim() != dim) {
            return Err(QuadError::InvalidArgument(format!(
                "integrand {i} ({}) has dimension {}, cell has dimension {dim}",
                f.label(),
                f.dim()
            )));
        }

        let cfg = &self.config;
        let mut rule = RuleND::empty(dim);
        let mut leaves = Vec::new();
        let mut active_leaves = vec![0; integrands.len()];
        let mut checks = vec![0; integrands.len()];
        let mut max_depth_reached = 0;
        let mut scratch = Vec::new();

        let mut stack = vec![WorkItem { cell: cell.clone(), active: (0..integrands.len()).collect(), depth: 0 }];
        while let Some(WorkItem { cell, active, depth }) = stack.pop() {
            max_depth_reached = max_depth_reached.max(depth);
            let low = cell.map_rule(&self.low_ref)?;
            let high = cell.map_rule(&self.high_ref)?;

            let mut failing = Vec::new();
            for &i in &active {
                checks[i] += 1;
                let i1 = integrate_indexed(&low, &integrands[i], i, &mut scratch)?;
                let i2 = integrate_indexed(&high, &integrands[i], i, &mut scratch)?;
                let err = (i2 - i1).abs();
                if !err.is_finite() {
                    return Err(QuadError::NonFinite { integrand: i, point: cell.base().to_vec(), value: err });
                }
                if cfg.comparator.needs_refinement(err, cfg.tol) {
                    failing.push(i);
                }
            }

            if failing.is_empty() {
                rule.extend_from(&low);
                for &i in &active {
                    active_leaves[i] += 1;
                }
                leaves.push(Leaf { cell, depth, active });
                continue;
            }

            if depth + 1 > cfg.max_depth {
                return Err(QuadError::DepthExceeded {
                    max_depth: cfg.max_depth,
                    base: cell.base().to_vec(),
                    edges: cell.edges().to_vec(),
                    failing,
                });
            }
            // reversed so that child 0 is processed first
            for child in cell.subdivide().into_iter().rev() {
                stack.push(WorkItem { cell: child, active: failing.clone(), depth: depth + 1 });
            }
        }

        Ok(AdaptiveResult {
            rule,
            leaf_count: leaves.len(),
            max_depth_reached,
            per_integrand_active_leaves: active_leaves,
            per_integrand_checks: checks,
            leaves,
        })
    }
}

/// Builds a quadrature rule over `cell` that passes the per-cell error test
/// for every integrand.
pub fn build_adaptive_rule(
    cell: &Parallelepiped,
    integrands: &[Integrand],
    config: &AdaptiveConfig,
) -> Result<AdaptiveResult> {
    AdaptiveBuilder::new(*config, cell.dim())?.build(cell, integrands)
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("leaf {leaf}: integrand {integrand} has local error {error:e} against tol {tol:e}")]
pub struct CertificateViolation {
    pub leaf: usize,
    pub integrand: usize,
    pub error: f64,
    pub tol: f64,
}

/// Recomputes the error estimate of every active integrand on every leaf and
/// reports the first one that would have triggered refinement.
pub fn verify_certificate(
    result: &AdaptiveResult,
    integrands: &[Integrand],
    config: &AdaptiveConfig,
) -> Result<Option<CertificateViolation>> {
    let dim = result.rule.dim();
    let low_ref = reference_rule(config.nsp_low, dim)?;
    let high_ref = reference_rule(config.nsp_high, dim)?;
    for (k, leaf) in result.leaves.iter().enumerate() {
        for &i in &leaf.active {
            let err = local_error(&integrands[i], &leaf.cell, &low_ref, &high_ref)?;
            if config.comparator.needs_refinement(err, config.tol) {
                return Ok(Some(CertificateViolation { leaf: k, integrand: i, error: err, tol: config.tol }));
            }
        }
    }
    Ok(None)
}
