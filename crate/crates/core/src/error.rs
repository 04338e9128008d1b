use thiserror::Error;

use crate::nodes::NodeFamily;

/// Errors produced by node construction, interpolation and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{family} nodes are not defined for s = {s} ({requirement})")]
    Parity { family: NodeFamily, s: usize, requirement: &'static str },

    #[error("degree {degree} is too small: {requirement}")]
    Degree { degree: usize, requirement: &'static str },

    #[error("no sign change on bracket [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("invalid interval [{a}, {b}]: need a < b")]
    Interval { a: f64, b: f64 },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("grid needs at least 2 points, got {0}")]
    Grid(usize),

    #[error("unknown function id `{0}`")]
    UnknownFunction(String),

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("unknown node family `{0}`")]
    UnknownFamily(String),

    #[error("collocation nodes must start at 0: {0}")]
    CollocationNodes(String),

    #[error("kernel vanishes at (0, 0); the first collocation row cannot be regularized")]
    KernelSingular,

    #[error("non-finite integrand value at row {row}, column {col} (xi = {xi})")]
    QuadratureFailure { row: usize, col: usize, xi: f64 },

    #[error("collocation matrix is numerically singular (pivot {pivot:e}, scale {scale:e})")]
    SingularMatrix { pivot: f64, scale: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
