//! Convergence-rate measurements for cusp integrands and the
//! adaptive-versus-tensor efficiency comparison.

use serde::Serialize;

use crate::adaptive::{build_adaptive_rule, integrate_with_rule, AdaptiveBuilder, AdaptiveConfig};
use crate::error::{QuadError, Result};
use crate::gauss::reference_rule;
use crate::geometry::Parallelepiped;
use crate::integrands::{Integrand, IntegrandKind};

/// Tolerance of the adaptive rule used when no closed form is known.
pub const REFERENCE_TOL: f64 = 1e-12;

/// Low/high points per direction of the adaptive rule behind reference
/// values. Higher than the defaults so that point singularities such as the
/// tip of a cone are resolved well below [`REFERENCE_TOL`].
pub const REFERENCE_POINTS: (usize, usize) = (8, 12);

/// Errors below this multiple of machine epsilon (relative to the reference
/// value) are treated as round-off and left out of rate fits.
pub const ROUNDOFF_FLOOR: f64 = 100.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ReferenceSource {
    ClosedForm,
    Adaptive { points: usize, tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reference {
    pub value: f64,
    pub source: ReferenceSource,
}

/// Integral of `f` over `cell` from a closed form where one is known,
/// otherwise from an adaptive rule at [`REFERENCE_TOL`].
pub fn reference_integral(f: &Integrand, cell: &Parallelepiped) -> Result<Reference> {
    if let Some(value) = closed_form_integral(f, cell) {
        return Ok(Reference { value, source: ReferenceSource::ClosedForm });
    }
    let result = build_adaptive_rule(cell, std::slice::from_ref(f), &reference_config())?;
    let value = integrate_with_rule(&result.rule, f)?;
    Ok(Reference { value, source: ReferenceSource::Adaptive { points: result.rule.len(), tol: REFERENCE_TOL } })
}

fn reference_config() -> AdaptiveConfig {
    AdaptiveConfig::new(REFERENCE_TOL).with_points(REFERENCE_POINTS.0, REFERENCE_POINTS.1)
}

/// Closed-form integrals:
/// constants on any cell, Gaussian bumps on axis-aligned boxes, `1 - |x|` on
/// aligned boxes in one and two dimensions and `exp(-alpha |x|)` on
/// intervals.
pub fn closed_form_integral(f: &Integrand, cell: &Parallelepiped) -> Option<f64> {
    if f.dim() != cell.dim() {
        return None;
    }
    match f.kind() {
        IntegrandKind::Constant { value } => Some(value * cell.volume()),
        IntegrandKind::Gaussian { amplitude, alpha, center } => {
            let (lo, hi) = cell.as_aligned_box()?;
            let s = alpha.sqrt();
            let factor = (std::f64::consts::PI.sqrt() / (2.0 * s)).powi(cell.dim() as i32);
            let prod: f64 = (0..cell.dim())
                .map(|k| erf_difference(s * (lo[k] - center[k]), s * (hi[k] - center[k])))
                .product();
            Some(amplitude * factor * prod)
        }
        IntegrandKind::LinearCusp => {
            let (lo, hi) = cell.as_aligned_box()?;
            match cell.dim() {
                1 => {
                    let abs_antideriv = |x: f64| 0.5 * x * x.abs();
                    Some((hi[0] - lo[0]) - (abs_antideriv(hi[0]) - abs_antideriv(lo[0])))
                }
                2 => {
                    let r = |x: f64, y: f64| corner_radius_integral(x, y);
                    let radial = r(hi[0], hi[1]) - r(lo[0], hi[1]) - r(hi[0], lo[1]) + r(lo[0], lo[1]);
                    Some(cell.volume() - radial)
                }
                _ => None,
            }
        }
        IntegrandKind::ExpCusp { alpha } => {
            if cell.dim() != 1 {
                return None;
            }
            let (lo, hi) = cell.as_aligned_box()?;
            let antideriv = |x: f64| (-(-alpha * x.abs()).exp_m1() / alpha).copysign(x);
            Some(antideriv(hi[0]) - antideriv(lo[0]))
        }
        _ => None,
    }
}

/// `erf(b) - erf(a)` without cancellation in the tails.
fn erf_difference(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        libm::erfc(a) - libm::erfc(b)
    } else if a < 0.0 && b < 0.0 {
        libm::erfc(-b) - libm::erfc(-a)
    } else {
        libm::erf(b) - libm::erf(a)
    }
}

/// Signed `int_0^x int_0^y sqrt(s^2 + t^2) dt ds`.
fn corner_radius_integral(x: f64, y: f64) -> f64 {
    let (a, b) = (x.abs(), y.abs());
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let d = a.hypot(b);
    let q = (2.0 * a * b * d + a.powi(3) * (b / a).asinh() + b.powi(3) * (a / b).asinh()) / 6.0;
    q * x.signum() * y.signum()
}

/// One tensor-rule run of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub points_per_direction: usize,
    pub total_points: usize,
    pub min_dist_to_cusp: f64,
    pub abs_error: f64,
    pub integral: f64,
    pub reference: f64,
}

/// Integrates `f` with the `m`-point tensor Gauss rule mapped onto `cell`
/// for each `m` in `m_range`.
pub fn tensor_convergence_study(
    f: &Integrand,
    cell: &Parallelepiped,
    m_range: &[usize],
    cusp: &[f64],
) -> Result<Vec<ConvergenceRecord>> {
    let reference = reference_integral(f, cell)?;
    tensor_convergence_study_with_reference(f, cell, m_range, cusp, reference.value)
}

pub fn tensor_convergence_study_with_reference(
    f: &Integrand,
    cell: &Parallelepiped,
    m_range: &[usize],
    cusp: &[f64],
    reference: f64,
) -> Result<Vec<ConvergenceRecord>> {
    if m_range.is_empty() {
        return Err(QuadError::InvalidArgument("m_range must not be empty".into()));
    }
    if m_range.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuadError::InvalidArgument("m_range must be strictly increasing".into()));
    }
    if cusp.len() != cell.dim() {
        return Err(QuadError::InvalidArgument("cusp location has the wrong dimension".into()));
    }
    m_range
        .iter()
        .map(|&m| {
            let rule = cell.map_rule(&reference_rule(m, cell.dim())?)?;
            let integral = integrate_with_rule(&rule, f)?;
            let min_dist = rule
                .points()
                .map(|p| p.iter().zip(cusp).map(|(a, c)| (a - c) * (a - c)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
                .sqrt();
            Ok(ConvergenceRecord {
                points_per_direction: m,
                total_points: rule.len(),
                min_dist_to_cusp: min_dist,
                abs_error: (integral - reference).abs(),
                integral,
                reference,
            })
        })
        .collect()
}

/// `lo, lo + 2, ..., <= hi`, with `lo` rounded up to the next even number.
pub fn even_range(lo: usize, hi: usize) -> Vec<usize> {
    let start = lo + lo % 2;
    (start..=hi).step_by(2).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateAxis {
    PointsPerDirection,
    MinDist,
}

/// Least-squares slope of `log(abs_error)` against `log(x)`.
///
/// Against `MinDist` an error behaving like `h^p` gives slope `+p`.
pub fn fit_rate(records: &[ConvergenceRecord], axis: RateAxis) -> Result<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.abs_error > ROUNDOFF_FLOOR * r.reference.abs() && r.abs_error > 0.0)
        .map(|r| {
            let x = match axis {
                RateAxis::PointsPerDirection => r.points_per_direction as f64,
                RateAxis::MinDist => r.min_dist_to_cusp,
            };
            (x.ln(), r.abs_error.ln())
        })
        .filter(|(x, _)| x.is_finite())
        .collect();
    if pts.len() < 3 {
        return Err(QuadError::InsufficientData { usable: pts.len() });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(QuadError::InsufficientData { usable: 1 });
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Tensor,
    Adaptive,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Tensor => "tensor",
            Strategy::Adaptive => "adaptive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRecord {
    pub strategy: Strategy,
    pub total_points: usize,
    pub max_rel_error: f64,
    /// `m` for tensor runs, `tol` for adaptive runs.
    pub parameter: f64,
    pub integrals: Vec<f64>,
}

/// Tensor rules for each `m` and one shared adaptive rule per `tol`, scored
/// by the largest relative error over the family.
pub fn compare_strategies(
    family: &[Integrand],
    cell: &Parallelepiped,
    tol_sweep: &[f64],
    m_sweep: &[usize],
) -> Result<Vec<ComparisonRecord>> {
    let refs = family
        .iter()
        .map(|f| reference_integral(f, cell).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    compare_strategies_with_references(family, cell, tol_sweep, m_sweep, &refs)
}

pub fn compare_strategies_with_references(
    family: &[Integrand],
    cell: &Parallelepiped,
    tol_sweep: &[f64],
    m_sweep: &[usize],
    references: &[f64],
) -> Result<Vec<ComparisonRecord>> {
    if family.is_empty() || tol_sweep.is_empty() || m_sweep.is_empty() {
        return Err(QuadError::InvalidArgument("family and sweeps must be non-empty".into()));
    }
    if references.len() != family.len() {
        return Err(QuadError::InvalidArgument("one reference value per integrand is required".into()));
    }
    let max_rel = |integrals: &[f64]| {
        integrals
            .iter()
            .zip(references)
            .map(|(i, r)| (i - r).abs() / r.abs())
            .fold(0.0, f64::max)
    };

    let mut records = Vec::with_capacity(m_sweep.len() + tol_sweep.len());
    for &m in m_sweep {
        let rule = cell.map_rule(&reference_rule(m, cell.dim())?)?;
        let integrals = family.iter().map(|f| integrate_with_rule(&rule, f)).collect::<Result<Vec<_>>>()?;
        records.push(ComparisonRecord {
            strategy: Strategy::Tensor,
            total_points: rule.len(),
            max_rel_error: max_rel(&integrals),
            parameter: m as f64,
            integrals,
        });
    }
    for &tol in tol_sweep {
        let builder = AdaptiveBuilder::new(AdaptiveConfig::new(tol), cell.dim())?;
        let result = builder.build(cell, family)?;
        let integrals =
            family.iter().map(|f| integrate_with_rule(&result.rule, f)).collect::<Result<Vec<_>>>()?;
        records.push(ComparisonRecord {
            strategy: Strategy::Adaptive,
            total_points: result.rule.len(),
            max_rel_error: max_rel(&integrals),
            parameter: tol,
            integrals,
        });
    }
    Ok(records)
}

/// Fewest points with which `strategy` reached `max_rel_error <= level`.
pub fn points_for_accuracy(records: &[ComparisonRecord], strategy: Strategy, level: f64) -> Option<usize> {
    records
        .iter()
        .filter(|r| r.strategy == strategy && r.max_rel_error <= level)
        .map(|r| r.total_points)
        .min()
}
