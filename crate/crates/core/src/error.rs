use thiserror::Error;

/// Errors raised by the group, linear-algebra and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("problem degenerate: f(e)=1 unattainable (identity not in the support set)")]
    IdentityMissing,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("root finder did not converge after {iterations} iterations")]
    RootsNoConvergence { iterations: usize },

    #[error("root pairing failed: {0}")]
    RootPairing(String),

    #[error("singular basis in simplex refactorization")]
    SingularBasis,

    #[error("linear program is {0}")]
    LpStatus(&'static str),

    #[error(
        "ADMM did not converge in {iterations} iterations \
         (primal residual {primal_residual:.3e}, dual residual {dual_residual:.3e})"
    )]
    AdmmNoConvergence {
        iterations: usize,
        primal_residual: f64,
        dual_residual: f64,
    },

    #[error("transfer construction precondition ({condition}) violated: {detail}")]
    TransferPrecondition {
        condition: &'static str,
        detail: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
