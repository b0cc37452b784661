use crate::error::{QuadError, Result};

use super::{heaviside, Integrand, Interface2D};

/// Ratios `eps / h` of the five-member enrichment family, sharpest last.
pub const HEAVISIDE_EPS_RATIOS: [f64; 5] = [2.5, 0.85, 0.265, 0.085, 0.0225];

/// Polynomial ramp on `|phi| <= eps`, in the scaled variable `t = phi / eps`:
/// `(128 + 315 t - 420 t^3 + 378 t^5 - 180 t^7 + 35 t^9) / 256`.
pub(crate) fn psi(phi: f64, eps: f64) -> f64 {
    if phi < -eps {
        return 0.0;
    }
    if phi > eps {
        return 1.0;
    }
    let t = phi / eps;
    let t2 = t * t;
    let odd = t * (315.0 + t2 * (-420.0 + t2 * (378.0 + t2 * (-180.0 + t2 * 35.0))));
    (128.0 + odd) / 256.0
}

/// Regularized Heaviside `psi(phi, eps)`: `0` below `-eps`, `1` above `eps`
/// and a C^4 polynomial ramp in between.
pub fn regularized_heaviside(phi: f64, eps: f64) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(QuadError::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    Ok(psi(phi, eps))
}

/// `d^order psi / d phi^order` for `order` in `0..=4`.
///
/// Inside the band `dpsi/dphi = (315 / 256 eps) (1 - t^2)^4`; higher orders
/// differentiate that bump. Outside the band all derivatives vanish.
pub fn regularized_heaviside_derivative(phi: f64, eps: f64, order: u32) -> Result<f64> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(QuadError::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if order == 0 {
        return Ok(psi(phi, eps));
    }
    if order > 4 {
        return Err(QuadError::InvalidArgument(format!("derivative order {order} not supported")));
    }
    if phi.abs() > eps {
        return Ok(0.0);
    }
    let t = phi / eps;
    let t2 = t * t;
    // derivatives of (1 - t^2)^4 = 1 - 4t^2 + 6t^4 - 4t^6 + t^8
    let bump = match order {
        1 => 1.0 + t2 * (-4.0 + t2 * (6.0 + t2 * (-4.0 + t2))),
        2 => t * (-8.0 + t2 * (24.0 + t2 * (-24.0 + t2 * 8.0))),
        3 => -8.0 + t2 * (72.0 + t2 * (-120.0 + t2 * 56.0)),
        _ => t * (144.0 + t2 * (-480.0 + t2 * 336.0)),
    };
    Ok(315.0 / 256.0 * bump / eps.powi(order as i32))
}

/// The five integrands `psi(phi(x), eps_k)` with `eps_k = h * ratio_k`.
pub fn heaviside_family(interface: &Interface2D, h: f64) -> Result<Vec<Integrand>> {
    if h.is_nan() || h <= 0.0 {
        return Err(QuadError::InvalidArgument(format!("element size must be positive, got {h}")));
    }
    HEAVISIDE_EPS_RATIOS
        .iter()
        .map(|r| heaviside(interface.clone(), h * r))
        .collect()
}
