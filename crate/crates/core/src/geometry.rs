//! n-dimensional parallelepipeds: volume, affine rule mapping and uniform
//! 2^n subdivision.

use crate::error::{QuadError, Result};
use crate::gauss::RuleND;

/// Relative threshold on `|det| / prod(|edge_j|)` below which a cell counts
/// as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// Cell `{ base + sum_j t_j edge_j : t in [0,1]^dim }`.
///
/// `edges` is row-major: row `j` is the `j`-th lattice vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Parallelepiped {
    dim: usize,
    base: Vec<f64>,
    edges: Vec<f64>,
    det: f64,
}

impl Parallelepiped {
    pub fn new(base: Vec<f64>, edges: Vec<f64>) -> Result<Self> {
        let dim = base.len();
        if dim == 0 {
            return Err(QuadError::InvalidArgument("cell dimension must be positive".into()));
        }
        if edges.len() != dim * dim {
            return Err(QuadError::InvalidArgument(format!(
                "expected {} edge entries for a {dim}-dimensional cell, got {}",
                dim * dim,
                edges.len()
            )));
        }
        if base.iter().chain(&edges).any(|v| !v.is_finite()) {
            return Err(QuadError::InvalidArgument("cell coordinates must be finite".into()));
        }
        let det = determinant(&edges, dim);
        let scale: f64 = edges.chunks_exact(dim).map(norm).product();
        let threshold = DEGENERACY_TOL * scale;
        if det.is_nan() || det.abs() <= threshold {
            return Err(QuadError::DegenerateCell { det, threshold });
        }
        Ok(Parallelepiped { dim, base, edges, det })
    }

    /// Builds a cell from `dim + 1` vertex rows: the base point followed by
    /// the `dim` vertices adjacent to it.
    pub fn from_vertices(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| QuadError::InvalidArgument("cell needs at least one row".into()))?;
        let dim = first.len();
        if rows.len() != dim + 1 {
            return Err(QuadError::InvalidArgument(format!(
                "a {dim}-dimensional cell needs {} rows, got {}",
                dim + 1,
                rows.len()
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(QuadError::InvalidArgument(format!(
                "row of length {} in a {dim}-dimensional cell",
                bad.len()
            )));
        }
        let base = first.clone();
        let edges = rows[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&base).map(|(a, b)| a - b))
            .collect();
        Self::new(base, edges)
    }

    /// `[0, 1]^dim`.
    pub fn unit_cube(dim: usize) -> Result<Self> {
        Self::cube(dim, 0.0, 1.0)
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::aligned_box(&vec![lo; dim], &vec![hi; dim])
    }

    /// Axis-aligned box with the given lower and upper corners.
    pub fn aligned_box(lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(QuadError::InvalidArgument("box corners differ in dimension".into()));
        }
        let dim = lo.len();
        let mut edges = vec![0.0; dim * dim];
        for j in 0..dim {
            edges[j * dim + j] = hi[j] - lo[j];
        }
        Self::new(lo.to_vec(), edges)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    /// Row-major edge matrix.
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> &[f64] {
        &self.edges[j * self.dim..(j + 1) * self.dim]
    }

    /// Signed determinant of the edge matrix.
    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn volume(&self) -> f64 {
        self.det.abs()
    }

    /// If every edge is parallel to its own axis, returns the box as
    /// `(lower, upper)` per coordinate.
    pub fn as_aligned_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let d = self.dim;
        for j in 0..d {
            for k in 0..d {
                if j != k && self.edges[j * d + k] != 0.0 {
                    return None;
                }
            }
        }
        let (lo, hi) = (0..d)
            .map(|j| {
                let a = self.base[j];
                let b = a + self.edges[j * d + j];
                (a.min(b), a.max(b))
            })
            .unzip();
        Some((lo, hi))
    }

    /// Vertex rows: base followed by the `dim` adjacent vertices.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        std::iter::once(self.base.clone())
            .chain(
                self.edges
                    .chunks_exact(self.dim)
                    .map(|e| e.iter().zip(&self.base).map(|(a, b)| a + b).collect()),
            )
            .collect()
    }

    /// Physical point for local coordinates `t`.
    pub fn to_physical(&self, local: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let acc: f64 = local.iter().enumerate().map(|(j, l)| self.edges[j * d + k] * l).sum();
                acc + self.base[k]
            })
            .collect()
    }

    /// Local coordinates of a physical point, i.e. the solution `t` of
    /// `base + E^T t = x`.
    pub fn to_local(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim;
        // E^T as row-major: entry (k, j) = edges[j][k]
        let mut a = vec![0.0; d * d];
        for j in 0..d {
            for k in 0..d {
                a[k * d + j] = self.edges[j * d + k];
            }
        }
        let mut rhs: Vec<f64> = x.iter().zip(&self.base).map(|(p, b)| p - b).collect();
        solve_in_place(&mut a, &mut rhs, d);
        rhs
    }

    /// True when `x` lies in the closed cell, with slack `tol` in local
    /// coordinates.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.to_local(x).iter().all(|&t| t >= -tol && t <= 1.0 + tol)
    }

    /// Maps a rule on `[0,1]^dim` onto this cell: `x = base + E^T xi`,
    /// `w = w_ref * |det E|`. Point order is preserved.
    pub fn map_rule(&self, reference: &RuleND) -> Result<RuleND> {
        let d = self.dim;
        if reference.dim() != d {
            return Err(QuadError::InvalidArgument(format!(
                "rule dimension {} does not match cell dimension {d}",
                reference.dim()
            )));
        }
        let scale = self.volume();
        let mut points = Vec::with_capacity(reference.coords().len());
        for xi in reference.points() {
            for k in 0..d {
                let acc: f64 = xi.iter().enumerate().map(|(j, x)| self.edges[j * d + k] * x).sum();
                points.push(acc + self.base[k]);
            }
        }
        let weights = reference.weights().iter().map(|w| w * scale).collect();
        RuleND::new(d, points, weights)
    }

    /// Splits the cell into `2^dim` congruent children with halved edges.
    ///
    /// Child `k` is offset from the parent base by `half_edge_j` for every
    /// bit `j` set in `k`, so children come out in binary-counter order with
    /// bit 0 toggling fastest.
    pub fn subdivide(&self) -> Vec<Parallelepiped> {
        let d = self.dim;
        let half: Vec<f64> = self.edges.iter().map(|e| e / 2.0).collect();
        let det = self.det / f64::powi(2.0, d as i32);
        (0..1usize << d)
            .map(|k| {
                let mut base = self.base.clone();
                for j in 0..d {
                    let bit = ((k >> j) & 1) as f64;
                    for (b, e) in base.iter_mut().zip(&half[j * d..(j + 1) * d]) {
                        *b += bit * e;
                    }
                }
                Parallelepiped { dim: d, base, edges: half.clone(), det }
            })
            .collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn determinant(matrix: &[f64], n: usize) -> f64 {
    let mut a = matrix.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r * n + col] / p;
            if factor != 0.0 {
                for c in col..n {
                    a[r * n + c] -= factor * a[col * n + c];
                }
            }
        }
    }
    det
}

fn solve_in_place(a: &mut [f64], b: &mut [f64], n: usize) {
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            b.swap(pivot, col);
        }
        let p = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / p;
            for c in col..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= a[row * n + c] * b[c];
        }
        b[row] = acc / a[row * n + row];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::reference_rule;

    #[test]
    fn volumes() {
        assert_eq!(Parallelepiped::unit_cube(3).unwrap().volume(), 1.0);
        assert_eq!(Parallelepiped::cube(3, -1.0, 1.0).unwrap().volume(), 8.0);
        let sheared = Parallelepiped::new(vec![0.0, 0.0], vec![1.0, 0.0, 1.0, 1.0]).unwrap();
        assert!((sheared.volume() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_orientation_has_positive_volume() {
        let c = Parallelepiped::new(vec![0.0, 0.0], vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(c.det() < 0.0);
        assert_eq!(c.volume(), 1.0);
        let mapped = c.map_rule(&reference_rule(3, 2).unwrap()).unwrap();
        assert!(mapped.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn degenerate_cells_rejected() {
        let e = Parallelepiped::new(vec![0.0, 0.0], vec![1.0, 1.0, 2.0, 2.0]);
        assert!(matches!(e, Err(QuadError::DegenerateCell { .. })));
        let e = Parallelepiped::new(vec![0.0, 0.0], vec![1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(e, Err(QuadError::DegenerateCell { .. })));
        assert!(Parallelepiped::new(vec![0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn from_vertices_matches_appendix_convention() {
        let rows = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let c = Parallelepiped::from_vertices(&rows).unwrap();
        assert_eq!(c, Parallelepiped::unit_cube(3).unwrap());
        assert_eq!(c.vertices(), rows);
        assert!(Parallelepiped::from_vertices(&rows[..3]).is_err());
    }

    #[test]
    fn map_rule_identity_and_scaling() {
        let r = reference_rule(4, 3).unwrap();
        let same = Parallelepiped::unit_cube(3).unwrap().map_rule(&r).unwrap();
        assert_eq!(same, r);

        let big = Parallelepiped::cube(3, -1.0, 1.0).unwrap().map_rule(&r).unwrap();
        for (a, b) in big.weights().iter().zip(r.weights()) {
            assert_eq!(*a, b * 8.0);
        }

        let c = Parallelepiped::new(vec![0.3, -0.2], vec![2.0, 0.5, -0.3, 1.5]).unwrap();
        let m = c.map_rule(&reference_rule(5, 2).unwrap()).unwrap();
        assert!(((m.weight_sum() - c.volume()) / c.volume()).abs() < 1e-13);

        let wrong = Parallelepiped::unit_cube(2).unwrap().map_rule(&r);
        assert!(matches!(wrong, Err(QuadError::InvalidArgument(_))));
    }

    #[test]
    fn subdivide_unit_cube() {
        let kids = Parallelepiped::unit_cube(3).unwrap().subdivide();
        assert_eq!(kids.len(), 8);
        assert_eq!(kids[0].base(), &[0.0, 0.0, 0.0]);
        assert_eq!(kids[1].base(), &[0.5, 0.0, 0.0]);
        assert_eq!(kids[2].base(), &[0.0, 0.5, 0.0]);
        assert_eq!(kids[4].base(), &[0.0, 0.0, 0.5]);
        assert_eq!(kids[7].base(), &[0.5, 0.5, 0.5]);
        for k in &kids {
            assert_eq!(k.volume(), 0.125);
        }
    }

    #[test]
    fn subdivide_square_tiles_parent() {
        let parent = Parallelepiped::unit_cube(2).unwrap();
        let kids = parent.subdivide();
        assert_eq!(kids.len(), 4);
        let total: f64 = kids.iter().map(|k| k.volume()).sum();
        assert!((total - parent.volume()).abs() <= 1e-14);
        // interior sample points land in exactly one child
        for i in 0..20 {
            for j in 0..20 {
                let p = [(i as f64 + 0.37) / 20.0, (j as f64 + 0.61) / 20.0];
                let hits = kids.iter().filter(|k| k.contains(&p, 0.0)).count();
                assert_eq!(hits, 1, "{p:?}");
            }
        }
    }

    #[test]
    fn local_physical_roundtrip() {
        let c = Parallelepiped::new(vec![1.0, 2.0, 3.0], vec![1.0, 0.2, 0.0, 0.1, 2.0, 0.3, 0.0, -0.4, 0.5]).unwrap();
        let t = [0.25, 0.5, 0.75];
        let x = c.to_physical(&t);
        let back = c.to_local(&x);
        for (a, b) in t.iter().zip(back) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn aligned_box_detection() {
        let c = Parallelepiped::cube(2, -1.0, 1.0).unwrap();
        assert_eq!(c.as_aligned_box(), Some((vec![-1.0, -1.0], vec![1.0, 1.0])));
        let flipped = Parallelepiped::new(vec![1.0], vec![-2.0]).unwrap();
        assert_eq!(flipped.as_aligned_box(), Some((vec![-1.0], vec![1.0])));
        let s = Parallelepiped::new(vec![0.0, 0.0], vec![1.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.as_aligned_box(), None);
    }
}
