//! ADMM for `max ⟨C, X⟩` over `X ⪰ 0` with `X` in an affine subspace.
//!
//! Both projections are closed form: the affine one is supplied by the
//! caller, the PSD one is a spectral clamp.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, PsdProjector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmmConfig {
    pub rho: f64,
    pub tol_primal: f64,
    pub tol_dual: f64,
    pub max_iter: usize,
}

impl Default for AdmmConfig {
    fn default() -> Self {
        Self {
            rho: 1.0,
            tol_primal: 1e-7,
            tol_dual: 1e-7,
            max_iter: 50_000,
        }
    }
}

impl AdmmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rho > 0.0 && self.tol_primal > 0.0 && self.tol_dual > 0.0 && self.max_iter > 0 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "ADMM settings must be positive: {self:?}"
            )))
        }
    }
}

/// Frobenius projection onto an affine set of Hermitian matrices.
pub trait AffineSet {
    fn dim(&self) -> usize;
    fn project(&self, m: &HermitianMatrix) -> HermitianMatrix;
}

/// Iterates; reusable as a warm start for a nearby objective.
#[derive(Debug, Clone)]
pub struct AdmmState {
    pub x: HermitianMatrix,
    pub y: HermitianMatrix,
    pub u: HermitianMatrix,
}

impl AdmmState {
    pub fn zeros(dim: usize) -> Self {
        Self {
            x: HermitianMatrix::zeros(dim),
            y: HermitianMatrix::zeros(dim),
            u: HermitianMatrix::zeros(dim),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmmDiagnostics {
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
}

#[derive(Debug, Clone)]
pub struct AdmmOutput {
    /// Affine-feasible iterate; PSD up to the primal residual.
    pub state: AdmmState,
    pub diagnostics: AdmmDiagnostics,
}

/// `X ← Π_A(Y − U + C/ρ)`, `Y ← Π_PSD(X + U)`, `U ← U + X − Y` until
/// `‖X − Y‖ ≤ tol_p (1 + ‖X‖)` and `ρ ‖ΔY‖ ≤ tol_d`.
pub fn admm_solve(
    c: &HermitianMatrix,
    set: &impl AffineSet,
    config: &AdmmConfig,
    warm: Option<AdmmState>,
) -> Result<AdmmOutput> {
    config.validate()?;
    let n = set.dim();
    if c.dim() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: c.dim(),
        });
    }
    let mut state = match warm {
        Some(s) if s.x.dim() == n => s,
        _ => AdmmState::zeros(n),
    };
    let step = c.scale(1.0 / config.rho);
    let mut projector = PsdProjector::default();
    let mut primal = f64::INFINITY;
    let mut dual = f64::INFINITY;
    for it in 1..=config.max_iter {
        let x = set.project(&state.y.sub(&state.u).add(&step));
        let (y, _) = projector.project(&x.add(&state.u))?;
        let gap = x.sub(&y);
        primal = gap.frobenius_norm();
        dual = config.rho * y.distance(&state.y);
        state.u = state.u.add(&gap);
        state.y = y;
        let done =
            primal <= config.tol_primal * (1.0 + x.frobenius_norm()) && dual <= config.tol_dual;
        state.x = x;
        if done {
            return Ok(AdmmOutput {
                state,
                diagnostics: AdmmDiagnostics {
                    iterations: it,
                    primal_residual: primal,
                    dual_residual: dual,
                },
            });
        }
    }
    Err(Error::AdmmNoConvergence {
        iterations: config.max_iter,
        primal_residual: primal,
        dual_residual: dual,
    })
}
