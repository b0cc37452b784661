//! Cross-checks of library values against independent computations.

use adaptquad::integrands::{
    exp_cusp, gaussian_bump, heaviside_family, linear_cusp, Interface2D, InterfaceKind,
};
use adaptquad::studies::{
    closed_form_integral, compare_strategies, reference_integral, ReferenceSource,
};
use adaptquad::{build_adaptive_rule, integrate_with_rule, AdaptiveConfig, Parallelepiped};

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `int_{[-1,1]^2} g(|x|)` as `8 int_0^1 G(rho) / rho^2 du`, `rho = sqrt(1 + u^2)`,
/// where `G(rho) = int_0^rho g(r) r dr`.
fn radial_square(big_g: impl Fn(f64) -> f64) -> f64 {
    8.0 * simpson(|u| {
        let rho = (1.0 + u * u).sqrt();
        big_g(rho) / (rho * rho)
    }, 0.0, 1.0, 2000)
}

/// `int_{[-1,1]^3} g(|x|)` as `24 int_0^1 int_0^1 G(rho) / rho^3 du dv`
/// with `G(rho) = int_0^rho g(r) r^2 dr`.
fn radial_cube(big_g: impl Fn(f64) -> f64 + Copy) -> f64 {
    24.0 * simpson(|v| {
        simpson(|u| {
            let rho = (1.0 + u * u + v * v).sqrt();
            big_g(rho) / rho.powi(3)
        }, 0.0, 1.0, 600)
    }, 0.0, 1.0, 600)
}

#[test]
fn linear_cusp_square_matches_radial_reduction() {
    let exact = radial_square(|r| r * r / 2.0 - r.powi(3) / 3.0);
    let cell = Parallelepiped::cube(2, -1.0, 1.0).unwrap();
    let closed = closed_form_integral(&linear_cusp(2), &cell).unwrap();
    assert!((closed - exact).abs() < 1e-12, "{closed} vs {exact}");
    let analytic = 4.0 - 4.0 / 3.0 * (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln());
    assert!((closed - analytic).abs() < 1e-14);
}

#[test]
fn linear_cusp_off_center_square_matches_brute_force() {
    // cell [-0.3, 1.1] x [-0.8, 0.4] puts the cusp off-center
    let cell = Parallelepiped::aligned_box(&[-0.3, -0.8], &[1.1, 0.4]).unwrap();
    let closed = closed_form_integral(&linear_cusp(2), &cell).unwrap();
    let f = linear_cusp(2);
    let n = 1400;
    let (hx, hy) = (1.4 / n as f64, 1.2 / n as f64);
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += f.value(&[-0.3 + (i as f64 + 0.5) * hx, -0.8 + (j as f64 + 0.5) * hy]);
        }
    }
    let brute = sum * hx * hy;
    assert!((closed - brute).abs() < 2e-6, "{closed} vs {brute}");
}

#[test]
fn exp_cusp_square_reference_matches_radial_reduction() {
    let a = 20.0f64;
    // int_0^rho e^{-a r} r dr
    let g = |rho: f64| (1.0 - (1.0 + a * rho) * (-a * rho).exp()) / (a * a);
    let exact = radial_square(g);
    let r = reference_integral(&exp_cusp(a, 2).unwrap(), &Parallelepiped::cube(2, -1.0, 1.0).unwrap()).unwrap();
    assert!(matches!(r.source, ReferenceSource::Adaptive { .. }));
    assert!((r.value - exact).abs() < 1e-10 * exact, "{} vs {exact}", r.value);
}

#[test]
fn cube_references_match_radial_reduction() {
    let cube = Parallelepiped::cube(3, -1.0, 1.0).unwrap();
    let a = 20.0f64;
    // int_0^rho e^{-a r} r^2 dr
    let g = move |rho: f64| {
        (2.0 - (2.0 + 2.0 * a * rho + a * a * rho * rho) * (-a * rho).exp()) / a.powi(3)
    };
    let exact = radial_cube(g);
    // the adaptive oracle accumulates the per-leaf tolerance of 1e-12
    let r = reference_integral(&exp_cusp(a, 3).unwrap(), &cube).unwrap();
    assert!((r.value - exact).abs() < 1e-11, "{} vs {exact}", r.value);

    let exact = radial_cube(|rho| rho.powi(3) / 3.0 - rho.powi(4) / 4.0);
    let r = reference_integral(&linear_cusp(3), &cube).unwrap();
    assert!((r.value - exact).abs() < 1e-11, "{} vs {exact}", r.value);
}

#[test]
fn gaussian_closed_forms() {
    let cube = Parallelepiped::unit_cube(3).unwrap();
    let f1 = gaussian_bump(10.0, 100.0, vec![0.0; 3]).unwrap();
    // erf(10) == 1 in double precision
    let expected = 10.0 * (std::f64::consts::PI.sqrt() / 20.0).powi(3);
    assert!((closed_form_integral(&f1, &cube).unwrap() - expected).abs() < 1e-17);
    assert!((expected - 6.96041e-3).abs() < 1e-8);

    let f2 = gaussian_bump(100.0, 200.0, vec![0.81, 0.62, 0.73]).unwrap();
    let closed = closed_form_integral(&f2, &cube).unwrap();
    let res = build_adaptive_rule(&cube, std::slice::from_ref(&f2), &AdaptiveConfig::new(1e-12)).unwrap();
    let adaptive = integrate_with_rule(&res.rule, &f2).unwrap();
    assert!((closed - adaptive).abs() < 1e-10, "{closed} vs {adaptive}");
}

/// Brute-force distance to a curve sampled densely along its parameter.
fn sampled_distance(curve: &dyn Fn(f64) -> [f64; 2], p: [f64; 2], samples: usize) -> f64 {
    (0..=samples)
        .map(|i| {
            let c = curve(i as f64 / samples as f64);
            ((c[0] - p[0]).powi(2) + (c[1] - p[1]).powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

fn lerp(a: [f64; 2], b: [f64; 2], s: f64) -> [f64; 2] {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
}

#[test]
fn interface_distances_match_dense_sampling() {
    // both segments extended by three times their length past the ends
    let kinked = |s: f64| {
        if s < 0.5 {
            lerp([0.55, 0.0], [0.45, 0.5], 8.0 * s - 3.0)
        } else {
            lerp([0.45, 0.5], [0.62, 1.0], 8.0 * s - 4.0)
        }
    };
    // parabola x = 0.5 + 0.3 (y - 0.5)^2 for y in [-1.5, 2.5]
    let quadratic = |s: f64| {
        let y = -1.5 + 4.0 * s;
        [0.5 + 0.3 * (y - 0.5).powi(2), y]
    };
    type Curve<'a> = &'a dyn Fn(f64) -> [f64; 2];
    let cases: [(InterfaceKind, Curve); 2] = [(InterfaceKind::Kinked, &kinked), (InterfaceKind::Quadratic, &quadratic)];
    for (kind, curve) in cases {
        let iface = Interface2D::default_for(kind);
        for i in 0..9 {
            for j in 0..9 {
                let p = [i as f64 / 8.0, j as f64 / 8.0];
                let d = iface.signed_distance(p);
                if d.abs() < 0.02 {
                    continue;
                }
                let brute = sampled_distance(curve, p, 2_000_000);
                assert!((d.abs() - brute).abs() < 1e-8, "{kind:?} at {p:?}: {d} vs {brute}");
            }
        }
    }
}

#[test]
fn interfaces_agree_on_orientation() {
    for kind in [InterfaceKind::Straight, InterfaceKind::Kinked, InterfaceKind::Quadratic] {
        let iface = Interface2D::default_for(kind);
        assert!(iface.signed_distance([1.0, 0.5]) > 0.0, "{kind:?}");
        assert!(iface.signed_distance([0.0, 0.5]) < 0.0, "{kind:?}");
    }
}

#[test]
fn leaf_count_grows_as_tolerance_shrinks() {
    let cube = Parallelepiped::unit_cube(3).unwrap();
    let fs = [
        gaussian_bump(10.0, 100.0, vec![0.0; 3]).unwrap(),
        gaussian_bump(100.0, 200.0, vec![0.81, 0.62, 0.73]).unwrap(),
    ];
    let counts: Vec<usize> = (3..=8)
        .map(|k| build_adaptive_rule(&cube, &fs, &AdaptiveConfig::new(10f64.powi(-k))).unwrap().rule.len())
        .collect();
    assert_eq!(counts, vec![1875, 4500, 6250, 8875, 15000, 24625]);
}

#[test]
fn heaviside_error_decreases_with_tolerance() {
    let square = Parallelepiped::unit_cube(2).unwrap();
    let fam = heaviside_family(&Interface2D::default_straight(), 1.0).unwrap();
    let tols: Vec<f64> = (2..=10).map(|k| 10f64.powi(-k)).collect();
    let recs = compare_strategies(&fam, &square, &tols, &[2]).unwrap();
    let errs: Vec<f64> = recs[1..].iter().map(|r| r.max_rel_error).collect();
    // when the worst family member sits on the same cells for two tolerances
    // the errors agree up to summation round-off
    assert!(errs.windows(2).all(|w| w[1] <= w[0] + 1e-15), "{errs:?}");
    assert!(errs.last().unwrap() < &1e-9);
}

#[test]
fn pipeline_is_deterministic() {
    let square = Parallelepiped::unit_cube(2).unwrap();
    let fam = heaviside_family(&Interface2D::default_kinked(), 0.5).unwrap();
    let a = compare_strategies(&fam, &square, &[1e-4, 1e-6], &[4, 8]).unwrap();
    let b = compare_strategies(&fam, &square, &[1e-4, 1e-6], &[4, 8]).unwrap();
    assert_eq!(a, b);
}
