//! Dense numerical kernels: Hermitian eigendecomposition, PSD projection,
//! small linear programs and polynomial roots.

mod eigen;
mod lp;
mod matrix;
mod roots;

pub use eigen::{eigh, psd_project, Eigh, PsdProjector, MAX_DIM, MAX_SWEEPS};
pub use lp::{lp_solve, LpConstraint, LpProblem, LpSolution, LpStatus, Relation};
pub use matrix::HermitianMatrix;
pub use roots::{
    eval as poly_eval, poly_from_roots, poly_roots, poly_roots_seeded, DEFAULT_SEED as ROOTS_SEED,
};
