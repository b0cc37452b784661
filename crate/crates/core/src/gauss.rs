//! Gauss–Legendre rules on `[-1, 1]` and their tensor products on the
//! reference cell `[0, 1]^dim`.

use std::f64::consts::PI;

use crate::error::{QuadError, Result};

/// Largest supported number of points per direction.
pub const MAX_POINTS_1D: usize = 64;
/// Largest supported dimension for reference rules.
pub const MAX_DIM: usize = 8;
/// Largest tensor rule we are willing to materialize.
pub const MAX_TENSOR_POINTS: usize = 1 << 26;

/// Newton stopping threshold on the node update.
pub const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// One-dimensional rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[-1, 1]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// A rule in `dim` dimensions. Points are stored flat, `dim` coordinates per
/// point, in the same order as `weights`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleND {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl RuleND {
    pub fn new(dim: usize, points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(QuadError::InvalidArgument("rule dimension must be positive".into()));
        }
        if points.len() != dim * weights.len() {
            return Err(QuadError::InvalidArgument(format!(
                "{} coordinates do not describe {} points in {} dimensions",
                points.len(),
                weights.len(),
                dim
            )));
        }
        Ok(RuleND { dim, points, weights })
    }

    pub fn empty(dim: usize) -> Self {
        RuleND { dim, points: Vec::new(), weights: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim)
    }

    /// Flat coordinate buffer, `dim` entries per point.
    pub fn coords(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Appends all points of `other`, keeping their order.
    pub fn extend_from(&mut self, other: &RuleND) {
        debug_assert_eq!(self.dim, other.dim);
        self.points.extend_from_slice(&other.points);
        self.weights.extend_from_slice(&other.weights);
    }

    pub fn into_parts(self) -> (usize, Vec<f64>, Vec<f64>) {
        (self.dim, self.points, self.weights)
    }
}

/// Legendre polynomial `P_m(x)` and its derivative.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..m {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = next;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let dp = m as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Gauss–Legendre rule with `m` points on `[-1, 1]`.
///
/// Nodes come from Newton iteration on `P_m` started at the Chebyshev-like
/// guesses `cos(pi (i + 3/4) / (m + 1/2))`. The result is symmetrized so that
/// `node[i] == -node[m-1-i]` and `weight[i] == weight[m-1-i]` hold exactly.
pub fn gauss_legendre_1d(m: usize) -> Result<Rule1D> {
    if m == 0 || m > MAX_POINTS_1D {
        return Err(QuadError::InvalidArgument(format!(
            "Gauss-Legendre point count must be in 1..={MAX_POINTS_1D}, got {m}"
        )));
    }
    if m == 1 {
        return Ok(Rule1D { nodes: vec![0.0], weights: vec![2.0] });
    }

    // Guesses decrease with i, so the raw roots come out in descending order.
    let mut raw_nodes = Vec::with_capacity(m);
    let mut raw_weights = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre_with_derivative(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= NEWTON_TOL {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(m, x);
        raw_nodes.push(x);
        raw_weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    raw_nodes.reverse();
    raw_weights.reverse();

    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        let j = m - 1 - i;
        nodes[i] = 0.5 * (raw_nodes[i] - raw_nodes[j]);
        weights[i] = 0.5 * (raw_weights[i] + raw_weights[j]);
    }
    Ok(Rule1D { nodes, weights })
}

/// Tensor-product Gauss rule with `m` points per direction on `[0, 1]^dim`.
///
/// Point `k` has coordinate `j` equal to node `(k / m^j) % m`, i.e. the first
/// coordinate varies fastest. Weights are the products of the halved 1-D
/// weights, multiplied in coordinate order.
pub fn reference_rule(m: usize, dim: usize) -> Result<RuleND> {
    if dim == 0 || dim > MAX_DIM {
        return Err(QuadError::InvalidArgument(format!(
            "reference rule dimension must be in 1..={MAX_DIM}, got {dim}"
        )));
    }
    let rule = gauss_legendre_1d(m)?;
    let count = m
        .checked_pow(dim as u32)
        .filter(|&c| c <= MAX_TENSOR_POINTS)
        .ok_or_else(|| {
            QuadError::InvalidArgument(format!("{m}^{dim} tensor points exceeds {MAX_TENSOR_POINTS}"))
        })?;

    let xs: Vec<f64> = rule.nodes.iter().map(|&x| (1.0 + x) / 2.0).collect();
    let ws: Vec<f64> = rule.weights.iter().map(|&w| w / 2.0).collect();

    let mut points = Vec::with_capacity(count * dim);
    let mut weights = Vec::with_capacity(count);
    for k in 0..count {
        let mut rem = k;
        let mut w = 1.0;
        for _ in 0..dim {
            let digit = rem % m;
            rem /= m;
            points.push(xs[digit]);
            w *= ws[digit];
        }
        weights.push(w);
    }
    RuleND::new(dim, points, weights)
}
