//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("joint angle {angle_rad} rad exceeds limit {limit_rad} rad ({axis})")]
    JointLimit {
        axis: &'static str,
        angle_rad: f64,
        limit_rad: f64,
    },

    #[error("tensioner travel {travel_m} m exceeds mechanical limit {limit_m} m")]
    TravelLimit { travel_m: f64, limit_m: f64 },

    #[error("non-physical geometry: {0}")]
    Geometry(String),

    #[error("empty or degenerate range: {0}")]
    EmptyRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no plan rule for robot {robot} in environment {env}")]
    UnsupportedPlan { robot: String, env: String },

    #[error("pipe of diameter {pipe_m} m cannot be clamped: {reason}")]
    PipeFit { pipe_m: f64, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
