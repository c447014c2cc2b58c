use thiserror::Error;

/// Errors surfaced by the cone and certificate machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold; the message names the witness.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Iteration did not converge within the iteration budget.
    #[error("no convergence after {iterations} iterations; trailing residuals {trailing:?}")]
    NoConvergence {
        iterations: usize,
        trailing: Vec<f64>,
    },

    /// The fixed functional degenerated along the iteration.
    #[error("functional degeneracy: {0}")]
    FunctionalDegeneracy(String),

    /// Contraction constants degenerate (no usable cone family).
    #[error("degenerate contraction: {0}")]
    DegenerateContraction(String),

    /// Invariant that must hold for valid inputs failed; indicates a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
