//! Two Gaussian bumps on the unit cube, integrated with one shared rule.
//!
//! `cargo run --release -p adaptquad --example gaussian_bumps`

use adaptquad::integrands::gaussian_bump;
use adaptquad::studies::closed_form_integral;
use adaptquad::{build_adaptive_rule, integrate_with_rule, AdaptiveConfig, Parallelepiped};

fn main() -> adaptquad::Result<()> {
    let cube = Parallelepiped::unit_cube(3)?;
    let fs = [gaussian_bump(10.0, 100.0, vec![0.0, 0.0, 0.0])?, gaussian_bump(100.0, 200.0, vec![0.81, 0.62, 0.73])?];
    for k in 3..=8 {
        let config = AdaptiveConfig::new(10f64.powi(-k));
        let result = build_adaptive_rule(&cube, &fs, &config)?;
        print!("tol 1e-{k}: {:>6} points, {:>4} cells, depth {}", result.rule.len(), result.leaf_count, result.max_depth_reached);
        for f in &fs {
            let exact = closed_form_integral(f, &cube).expect("Gaussian on a box has a closed form");
            print!(", error {:.1e}", (integrate_with_rule(&result.rule, f)? - exact).abs());
        }
        println!();
    }
    Ok(())
}
