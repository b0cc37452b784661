//! Browser bindings for the `www/` demo page.
//!
//! Three operations are exported: an adaptive rule on the unit square, the
//! regularized Heaviside profile, and a tensor-rule convergence study.

use adaptquad::integrands::{regularized_heaviside, regularized_heaviside_derivative};
use adaptquad::io::{parse_cell, parse_integrand};
use adaptquad::studies::{even_range, fit_rate, reference_integral, tensor_convergence_study_with_reference, RateAxis};
use adaptquad::{build_adaptive_rule, integrate_with_rule, AdaptiveConfig, Comparator, Parallelepiped};
use wasm_bindgen::prelude::*;

/// An adaptive rule on the unit square, flattened for drawing.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct SquareRule {
    points: Vec<f64>,
    weights: Vec<f64>,
    cells: Vec<f64>,
    depths: Vec<u32>,
    integrals: Vec<f64>,
    labels: Vec<String>,
}

#[wasm_bindgen]
impl SquareRule {
    /// `x0, y0, x1, y1, ...`
    #[wasm_bindgen(getter)]
    pub fn points(&self) -> Vec<f64> {
        self.points.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn weights(&self) -> Vec<f64> {
        self.weights.clone()
    }

    /// Leaf squares as `x, y, side` triples.
    #[wasm_bindgen(getter)]
    pub fn cells(&self) -> Vec<f64> {
        self.cells.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn depths(&self) -> Vec<u32> {
        self.depths.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn integrals(&self) -> Vec<f64> {
        self.integrals.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn labels(&self) -> Vec<String> {
        self.labels.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn count(&self) -> usize {
        self.weights.len()
    }
}

/// Builds the adaptive rule for the integrands in `spec` (`;`-separated,
/// same syntax as the command line `--fn`) on the unit square.
pub fn square_rule(spec: &str, tol: f64, strict: bool) -> Result<SquareRule, String> {
    let cell = Parallelepiped::unit_cube(2).map_err(|e| e.to_string())?;
    let mut integrands = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        integrands.extend(parse_integrand(part, 2).map_err(|e| e.to_string())?);
    }
    let comparator = if strict { Comparator::Exceeds } else { Comparator::AtLeast };
    let config = AdaptiveConfig::new(tol).with_comparator(comparator).with_max_depth(16);
    let result = build_adaptive_rule(&cell, &integrands, &config).map_err(|e| e.to_string())?;
    let integrals = integrands
        .iter()
        .map(|f| integrate_with_rule(&result.rule, f))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut cells = Vec::with_capacity(3 * result.leaves.len());
    for leaf in &result.leaves {
        cells.extend_from_slice(&[leaf.cell.base()[0], leaf.cell.base()[1], leaf.cell.edge(0)[0]]);
    }
    Ok(SquareRule {
        points: result.rule.coords().to_vec(),
        weights: result.rule.weights().to_vec(),
        depths: result.leaves.iter().map(|l| l.depth as u32).collect(),
        cells,
        integrals,
        labels: integrands.iter().map(|f| f.label().to_string()).collect(),
    })
}

/// `[phi_0, psi_0, psi'_0, phi_1, ...]` on `samples` points of
/// `[-2 eps, 2 eps]`.
pub fn heaviside_samples(eps: f64, samples: usize) -> Result<Vec<f64>, String> {
    if samples < 2 {
        return Err("need at least two samples".into());
    }
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let phi = eps * (-2.0 + 4.0 * i as f64 / (samples - 1) as f64);
        out.push(phi);
        out.push(regularized_heaviside(phi, eps).map_err(|e| e.to_string())?);
        out.push(regularized_heaviside_derivative(phi, eps, 1).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// Convergence of the tensor Gauss rule for a cusp integrand on `[-1,1]^dim`
/// with the cusp at the origin: `[m, min_dist, abs_error, ...]` for even
/// `m` up to `m_max`, followed by the fitted slope against `min_dist`.
pub fn convergence(spec: &str, dim: usize, m_max: usize) -> Result<Vec<f64>, String> {
    let cell = parse_cell(&format!("sym{dim}")).map_err(|e| e.to_string())?;
    let f = parse_integrand(spec, dim)
        .map_err(|e| e.to_string())?
        .into_iter()
        .next()
        .ok_or("no integrand")?;
    let reference = reference_integral(&f, &cell).map_err(|e| e.to_string())?;
    let ms = even_range(2, m_max);
    let records = tensor_convergence_study_with_reference(&f, &cell, &ms, &vec![0.0; dim], reference.value)
        .map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = records
        .iter()
        .flat_map(|r| [r.points_per_direction as f64, r.min_dist_to_cusp, r.abs_error])
        .collect();
    out.push(fit_rate(&records, RateAxis::MinDist).unwrap_or(f64::NAN));
    Ok(out)
}

#[wasm_bindgen(js_name = squareRule)]
pub fn square_rule_js(spec: &str, tol: f64, strict: bool) -> Result<SquareRule, JsError> {
    square_rule(spec, tol, strict).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = heavisideSamples)]
pub fn heaviside_samples_js(eps: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    heaviside_samples(eps, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = convergence)]
pub fn convergence_js(spec: &str, dim: usize, m_max: usize) -> Result<Vec<f64>, JsError> {
    convergence(spec, dim, m_max).map_err(|e| JsError::new(&e))
}
