//! Shared error type for the numerical kernels.

use thiserror::Error;

/// Errors surfaced by the numerical layers.
///
/// Every failure carries enough context to reproduce the offending call;
/// callers that want a process exit code should map [`CknError::InvalidParameter`]
/// to a usage error and everything else to a computational failure.
#[derive(Debug, Clone, Error)]
pub enum CknError {
    /// Evaluation requested at (or within 1e-12 of) a pole of the function.
    #[error("pole of {function} at {location}")]
    Pole { function: &'static str, location: String },

    /// A series or iteration failed to reach its tolerance within budget.
    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    /// Argument outside the supported domain of a special function.
    #[error("{function}: argument {argument} outside supported domain ({constraint})")]
    Domain {
        function: &'static str,
        argument: String,
        constraint: &'static str,
    },

    /// Parameter tuple violating an admissibility constraint.
    #[error("invalid parameter: {constraint} (got {value})")]
    InvalidParameter { constraint: String, value: String },

    /// Adaptive quadrature exhausted its subdivision/level budget.
    #[error("quadrature budget exceeded for {what}: best estimate {estimate}, error {error}")]
    QuadratureBudget {
        what: &'static str,
        estimate: f64,
        error: f64,
    },

    /// A field fails the boundary-smallness requirement for spectral application.
    #[error("boundary leak: |v| near t=±T is {leak:.3e} of max, above {limit:.3e}")]
    BoundaryLeak { leak: f64, limit: f64 },

    /// Grid construction or compatibility failure.
    #[error("grid error: {0}")]
    Grid(String),

    /// Nonlinear solve stalled before reaching the residual tolerance.
    #[error("solver stalled after {iterations} iterations, residual {residual:.3e} (tol {tol:.3e})")]
    SolverStall {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    /// Ground-state iterate lost positivity after the projection phase.
    #[error("positivity lost: min(v) = {min:.3e} against max(v) = {max:.3e}")]
    PositivityLoss { min: f64, max: f64 },

    /// Root finding could not bracket or polish a requested root.
    #[error("root search failed for {what}: {detail}")]
    RootSearch { what: &'static str, detail: String },

    /// Dense eigensolve failure.
    #[error("eigensolve failed: {0}")]
    Eigen(String),

    /// A field that must be positive on a window is not.
    #[error("field not positive on requested window: {0}")]
    NonPositiveField(String),
}

impl CknError {
    pub(crate) fn domain(function: &'static str, argument: impl std::fmt::Display, constraint: &'static str) -> Self {
        CknError::Domain {
            function,
            argument: argument.to_string(),
            constraint,
        }
    }

    pub(crate) fn invalid(constraint: impl Into<String>, value: impl std::fmt::Display) -> Self {
        CknError::InvalidParameter {
            constraint: constraint.into(),
            value: value.to_string(),
        }
    }
}
