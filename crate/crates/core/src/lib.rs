//! Adaptive tensor-product Gauss quadrature for integrands with sharp
//! gradients and cusps on n-dimensional parallelepipeds.
//!
//! The central entry point is [`build_adaptive_rule`], which turns a cell and
//! a set of integrands into a single quadrature rule that resolves all of
//! them. The [`studies`] module measures convergence rates and compares the
//! adaptive rules against plain tensor-product rules; [`io`] holds the text
//! formats used by the command-line tool.
//!
//! ```
//! use adaptquad::{build_adaptive_rule, integrate_with_rule, AdaptiveConfig, Parallelepiped};
//! use adaptquad::integrands::gaussian_bump;
//!
//! let cell = Parallelepiped::unit_cube(3).unwrap();
//! let f = gaussian_bump(10.0, 100.0, vec![0.0, 0.0, 0.0]).unwrap();
//! let result = build_adaptive_rule(&cell, &[f.clone()], &AdaptiveConfig::new(1e-6)).unwrap();
//! let value = integrate_with_rule(&result.rule, &f).unwrap();
//! assert!((value - 6.96e-3).abs() < 1e-4);
//! ```

pub mod adaptive;
pub mod error;
pub mod gauss;
pub mod geometry;
pub mod integrands;
pub mod io;
pub mod studies;

pub use adaptive::{
    build_adaptive_rule, integrate_with_rule, local_error, verify_certificate, AdaptiveBuilder, AdaptiveConfig,
    AdaptiveResult, Comparator, Leaf, DEFAULT_COMPARATOR,
};
pub use error::{QuadError, Result};
pub use gauss::{gauss_legendre_1d, reference_rule, Rule1D, RuleND};
pub use geometry::Parallelepiped;
pub use integrands::{Integrand, IntegrandKind};
