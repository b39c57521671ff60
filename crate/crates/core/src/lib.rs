//! Carathéodory–Fejér type pointwise extremal problems for positive definite
//! functions on finite groups and on the integers.
//!
//! Given a group `G`, a symmetric set `Ω ∋ e` and a point `z`, the constant
//! `CF_G(Ω, z)` is the supremum of `|f(z)|` over positive definite `f` with
//! `f(e) = 1` vanishing off `Ω`; `K_G(Ω, z)` is the same over real-valued `f`.
//!
//! * [`group`]: Cayley tables, element orders, traces `H(Ω, z)`.
//! * [`posdef`]: positive definiteness tests and pd-preserving constructions.
//! * [`linalg`]: Jacobi eigensolver, PSD projection, simplex, Aberth roots.
//! * [`cyclic`]: exact LP solvers on `Z_m` and Gram SDP solvers on `Z`.
//! * [`group_solver`]: ADMM SDP over the full group matrix, certification,
//!   and comparison against the cyclic reduction.
//! * [`fejer_riesz`]: convolution square roots and the transfer construction.

pub mod cyclic;
pub mod error;
pub mod fejer_riesz;
pub mod group;
pub mod group_solver;
pub mod linalg;
pub mod posdef;
pub mod sweep;

pub use error::{Error, Result};
pub use group::{CyclicTrace, FiniteGroup, GroupDescriptor, SubsetMask};
pub use posdef::{GroupFunction, PdCertificate, Verdict};

/// Real- or complex-valued function class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(Error::Parse(format!(
                "unknown field '{other}' (real|complex)"
            ))),
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}
