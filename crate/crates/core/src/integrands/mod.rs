//! Integrand families: Gaussian bumps, radial cusps and the regularized
//! Heaviside composed with 2-D interfaces.

mod heaviside;
mod interface;

use std::fmt;
use std::sync::Arc;

pub use heaviside::{
    heaviside_family, regularized_heaviside, regularized_heaviside_derivative, HEAVISIDE_EPS_RATIOS,
};
pub use interface::{Interface2D, InterfaceKind};

use crate::error::{QuadError, Result};

type PointFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// What an integrand is, as far as closed-form reference values and
/// serialization care.
#[derive(Debug, Clone, PartialEq)]
pub enum IntegrandKind {
    Constant { value: f64 },
    /// `amplitude * exp(-alpha * |x - center|^2)`
    Gaussian { amplitude: f64, alpha: f64, center: Vec<f64> },
    /// `1 - |x|`
    LinearCusp,
    /// `exp(-alpha * |x|)`
    ExpCusp { alpha: f64 },
    /// `psi(phi(x), eps)` for a 2-D interface
    Heaviside { interface: Interface2D, eps: f64 },
    Custom,
}

/// A scalar field on `R^dim`, evaluated in batches of flat point buffers.
///
/// Evaluators must be deterministic and free of interior state; they may be
/// called from several threads at once.
#[derive(Clone)]
pub struct Integrand {
    dim: usize,
    label: String,
    kind: IntegrandKind,
    eval: Arc<PointFn>,
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand")
            .field("dim", &self.dim)
            .field("label", &self.label)
            .field("kind", &self.kind)
            .finish()
    }
}

impl Integrand {
    /// Wraps an arbitrary pointwise function.
    pub fn new<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::with_kind(dim, label, IntegrandKind::Custom, f)
    }

    fn with_kind<F>(dim: usize, label: impl Into<String>, kind: IntegrandKind, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Integrand { dim, label: label.into(), kind, eval: Arc::new(f) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &IntegrandKind {
        &self.kind
    }

    /// Value at a single point.
    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        (self.eval)(x)
    }

    /// Evaluates every point of the flat buffer `points` (`dim` coordinates
    /// per point) into `out`, replacing its contents.
    pub fn evaluate(&self, points: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(points.chunks_exact(self.dim).map(|p| (self.eval)(p)));
    }

    pub fn evaluate_vec(&self, points: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(points.len() / self.dim);
        self.evaluate(points, &mut out);
        out
    }
}

/// `f(x) = value`.
pub fn constant(dim: usize, value: f64) -> Integrand {
    Integrand::with_kind(dim, format!("constant({value})"), IntegrandKind::Constant { value }, move |_| value)
}

/// `f(x) = amplitude * exp(-alpha * |x - center|^2)`.
pub fn gaussian_bump(amplitude: f64, alpha: f64, center: Vec<f64>) -> Result<Integrand> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(QuadError::InvalidArgument(format!("gaussian alpha must be positive, got {alpha}")));
    }
    if center.is_empty() {
        return Err(QuadError::InvalidArgument("gaussian center must be non-empty".into()));
    }
    let label = format!("gaussian({amplitude},{alpha},{center:?})");
    let kind = IntegrandKind::Gaussian { amplitude, alpha, center: center.clone() };
    Ok(Integrand::with_kind(center.len(), label, kind, move |x| {
        let r2: f64 = x.iter().zip(&center).map(|(a, c)| (a - c) * (a - c)).sum();
        amplitude * (-alpha * r2).exp()
    }))
}

fn radius(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `f(x) = 1 - |x|`, a cone with its tip at the origin.
pub fn linear_cusp(dim: usize) -> Integrand {
    Integrand::with_kind(dim, "linear_cusp", IntegrandKind::LinearCusp, |x| 1.0 - radius(x))
}

/// `f(x) = exp(-alpha * |x|)`.
pub fn exp_cusp(alpha: f64, dim: usize) -> Result<Integrand> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(QuadError::InvalidArgument(format!("exp_cusp alpha must be positive, got {alpha}")));
    }
    Ok(Integrand::with_kind(dim, format!("exp_cusp({alpha})"), IntegrandKind::ExpCusp { alpha }, move |x| {
        (-alpha * radius(x)).exp()
    }))
}

/// `f(x) = psi(phi(x), eps)` where `phi` is the signed distance to
/// `interface`.
pub fn heaviside(interface: Interface2D, eps: f64) -> Result<Integrand> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(QuadError::InvalidArgument(format!("heaviside eps must be positive, got {eps}")));
    }
    let label = format!("heaviside({},{eps})", interface.kind().name());
    let kind = IntegrandKind::Heaviside { interface: interface.clone(), eps };
    Ok(Integrand::with_kind(2, label, kind, move |x| {
        heaviside::psi(interface.signed_distance([x[0], x[1]]), eps)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_peaks() {
        let f1 = gaussian_bump(10.0, 100.0, vec![0.0; 3]).unwrap();
        assert_eq!(f1.value(&[0.0, 0.0, 0.0]), 10.0);
        let f2 = gaussian_bump(100.0, 200.0, vec![0.81, 0.62, 0.73]).unwrap();
        assert_eq!(f2.value(&[0.81, 0.62, 0.73]), 100.0);
        assert!(f2.value(&[0.8, 0.62, 0.73]) < 100.0);
        assert!(gaussian_bump(1.0, 0.0, vec![0.0]).is_err());
    }

    #[test]
    fn cusps_at_origin() {
        assert_eq!(linear_cusp(2).value(&[0.0, 0.0]), 1.0);
        assert!((linear_cusp(2).value(&[0.6, 0.8]) - 0.0).abs() < 1e-15);
        let e = exp_cusp(20.0, 3).unwrap();
        assert_eq!(e.value(&[0.0, 0.0, 0.0]), 1.0);
        let v = e.value(&[1.0, 1.0, 1.0]);
        assert!(v > 0.0 && v < 1.0);
        assert!(exp_cusp(-1.0, 1).is_err());
    }

    #[test]
    fn batch_matches_pointwise_and_concatenation() {
        let f = gaussian_bump(2.0, 3.0, vec![0.1, 0.2]).unwrap();
        let pts = [0.0, 0.0, 0.5, 0.5, 1.0, -1.0, 0.3, 0.9];
        let all = f.evaluate_vec(&pts);
        let mut head = f.evaluate_vec(&pts[..4]);
        head.extend(f.evaluate_vec(&pts[4..]));
        assert_eq!(all, head);
        for (p, v) in pts.chunks(2).zip(&all) {
            assert_eq!(f.value(p), *v);
        }
    }

    #[test]
    fn custom_integrand_debug_shows_label() {
        let f = Integrand::new(1, "square", |x| x[0] * x[0]);
        assert_eq!(f.kind(), &IntegrandKind::Custom);
        assert!(format!("{f:?}").contains("square"));
    }
}
