/// Interface shapes in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterfaceKind {
    Straight,
    Kinked,
    Quadratic,
}

impl InterfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            InterfaceKind::Straight => "straight",
            InterfaceKind::Kinked => "kinked",
            InterfaceKind::Quadratic => "quadratic",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "straight" => Some(InterfaceKind::Straight),
            "kinked" => Some(InterfaceKind::Kinked),
            "quadratic" | "curved" => Some(InterfaceKind::Quadratic),
            _ => None,
        }
    }
}

/// A curve in the plane with a signed distance. All shapes are oriented so
/// that the positive side is to the right when walking along the curve in
/// the direction it is given.
#[derive(Debug, Clone, PartialEq)]
pub enum Interface2D {
    /// Line through `point` with unit normal `normal`; positive where
    /// `(x - point) . normal > 0`.
    Straight { point: [f64; 2], normal: [f64; 2] },
    /// Polyline `v0 -> v1 -> v2`, continued as rays beyond `v0` and `v2` so
    /// that it splits the whole plane.
    Kinked { vertices: [[f64; 2]; 3] },
    /// Curve `x = offset + curvature * (y - pivot)^2`, positive for larger `x`.
    Quadratic { offset: f64, curvature: f64, pivot: f64 },
}

const QUAD_SAMPLES: usize = 64;

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn right_normal(from: [f64; 2], to: [f64; 2]) -> [f64; 2] {
    let d = sub(to, from);
    let len = dot(d, d).sqrt();
    [d[1] / len, -d[0] / len]
}

impl Interface2D {
    /// Line through `p0` and `p1`, positive on the right of `p0 -> p1`.
    pub fn line_through(p0: [f64; 2], p1: [f64; 2]) -> Self {
        Interface2D::Straight { point: p0, normal: right_normal(p0, p1) }
    }

    pub fn line_with_normal(point: [f64; 2], normal: [f64; 2]) -> Self {
        let len = dot(normal, normal).sqrt();
        Interface2D::Straight { point, normal: [normal[0] / len, normal[1] / len] }
    }

    /// Line from `(0.55, 0)` to `(0.35, 1)`.
    pub fn default_straight() -> Self {
        Self::line_through([0.55, 0.0], [0.35, 1.0])
    }

    /// Polyline `(0.55, 0) -> (0.45, 0.5) -> (0.62, 1)`.
    pub fn default_kinked() -> Self {
        Interface2D::Kinked { vertices: [[0.55, 0.0], [0.45, 0.5], [0.62, 1.0]] }
    }

    /// Parabola `x = 0.5 + 0.3 (y - 0.5)^2`.
    pub fn default_quadratic() -> Self {
        Interface2D::Quadratic { offset: 0.5, curvature: 0.3, pivot: 0.5 }
    }

    pub fn default_for(kind: InterfaceKind) -> Self {
        match kind {
            InterfaceKind::Straight => Self::default_straight(),
            InterfaceKind::Kinked => Self::default_kinked(),
            InterfaceKind::Quadratic => Self::default_quadratic(),
        }
    }

    pub fn kind(&self) -> InterfaceKind {
        match self {
            Interface2D::Straight { .. } => InterfaceKind::Straight,
            Interface2D::Kinked { .. } => InterfaceKind::Kinked,
            Interface2D::Quadratic { .. } => InterfaceKind::Quadratic,
        }
    }

    /// Signed distance from `p` to the interface.
    pub fn signed_distance(&self, p: [f64; 2]) -> f64 {
        match *self {
            Interface2D::Straight { point, normal } => dot(sub(p, point), normal),
            Interface2D::Kinked { vertices } => polyline_distance(&vertices, p),
            Interface2D::Quadratic { offset, curvature, pivot } => {
                parabola_distance(offset, curvature, pivot, p)
            }
        }
    }
}

/// Unclamped closest-point parameter on the line `a + s (b - a)`.
fn line_param(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> f64 {
    let d = sub(b, a);
    dot(sub(p, a), d) / dot(d, d)
}

fn polyline_distance(v: &[[f64; 2]; 3], p: [f64; 2]) -> f64 {
    let s0 = line_param(v[0], v[1], p).min(1.0);
    let s1 = line_param(v[1], v[2], p).max(0.0);
    let c0 = [v[0][0] + s0 * (v[1][0] - v[0][0]), v[0][1] + s0 * (v[1][1] - v[0][1])];
    let c1 = [v[1][0] + s1 * (v[2][0] - v[1][0]), v[1][1] + s1 * (v[2][1] - v[1][1])];
    let d0 = dot(sub(p, c0), sub(p, c0)).sqrt();
    let d1 = dot(sub(p, c1), sub(p, c1)).sqrt();
    let n0 = right_normal(v[0], v[1]);
    let n1 = right_normal(v[1], v[2]);

    let dist = d0.min(d1);
    let kink_closest = (d0 <= d1 && s0 == 1.0) || (d1 <= d0 && s1 == 0.0);
    let side = if kink_closest {
        // sum of the adjacent segment normals at the shared vertex
        dot(sub(p, v[1]), [n0[0] + n1[0], n0[1] + n1[1]])
    } else if d0 <= d1 {
        dot(sub(p, v[0]), n0)
    } else {
        dot(sub(p, v[1]), n1)
    };
    if side < 0.0 {
        -dist
    } else {
        dist
    }
}

fn parabola_distance(offset: f64, curvature: f64, pivot: f64, p: [f64; 2]) -> f64 {
    let curve_x = |s: f64| offset + curvature * (s - pivot) * (s - pivot);
    let dist2 = |s: f64| {
        let dx = curve_x(s) - p[0];
        let dy = s - p[1];
        dx * dx + dy * dy
    };
    // half the derivative of dist2 with respect to the curve parameter
    let grad = |s: f64| (curve_x(s) - p[0]) * 2.0 * curvature * (s - pivot) + (s - p[1]);

    let horizontal = p[0] - curve_x(p[1]);
    if horizontal == 0.0 {
        return 0.0;
    }
    // the closest curve point is no farther than the horizontal one, so its
    // parameter lies within |horizontal| of p.y
    let reach = horizontal.abs();
    let lo = p[1] - reach;
    let step = 2.0 * reach / QUAD_SAMPLES as f64;

    let mut best = horizontal * horizontal;
    let mut prev_s = lo;
    let mut prev_g = grad(lo);
    for i in 1..=QUAD_SAMPLES {
        let s = lo + step * i as f64;
        let g = grad(s);
        best = best.min(dist2(s));
        if prev_g == 0.0 {
            best = best.min(dist2(prev_s));
        } else if prev_g.signum() != g.signum() {
            let root = bisect(&grad, prev_s, s, prev_g);
            best = best.min(dist2(root));
        }
        prev_s = s;
        prev_g = g;
    }
    best.sqrt().copysign(horizontal)
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
