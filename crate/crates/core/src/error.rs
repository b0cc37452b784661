use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by rule construction, integration and the study harness.
#[derive(Debug, Error)]
pub enum QuadError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate cell: |det| = {det:e} is below {threshold:e}")]
    DegenerateCell { det: f64, threshold: f64 },

    #[error("integrand {integrand} returned non-finite value {value} at {point:?}")]
    NonFinite {
        integrand: usize,
        point: Vec<f64>,
        value: f64,
    },

    /// Refinement wanted to go deeper than `max_depth`. Usually means the
    /// integrand is too singular for the requested tolerance.
    #[error(
        "recursion depth {max_depth} exceeded on cell with base {base:?}; integrands still failing: {failing:?}"
    )]
    DepthExceeded {
        max_depth: usize,
        base: Vec<f64>,
        edges: Vec<f64>,
        failing: Vec<usize>,
    },

    #[error("insufficient data: {usable} usable records, need at least 3")]
    InsufficientData { usable: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl QuadError {
    /// True for failures caused by the numerics rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            QuadError::NonFinite { .. }
                | QuadError::DepthExceeded { .. }
                | QuadError::InsufficientData { .. }
        )
    }
}

pub type Result<T, E = QuadError> = std::result::Result<T, E>;
