//! Support-function angle sweep.
//!
//! `sup |φ(ν)|` over a convex set of sequences closed under conjugation equals
//! `max_θ sup Re(e^{-iθ} φ(ν))` with `θ ∈ [0, π]`, so the modulus objective
//! is handled by a family of linear subproblems.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Number of equispaced angles in `[0, π)`.
    pub grid: usize,
    /// Golden-section refinement stops once the bracket is narrower than this.
    pub angle_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid: 64,
            angle_tol: 1e-8,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid == 0 || !(self.angle_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "sweep needs grid >= 1 and angle_tol > 0, got {} / {}",
                self.grid, self.angle_tol
            )));
        }
        Ok(())
    }
}

/// One evaluated angle.
#[derive(Debug, Clone)]
pub struct Probe<T> {
    pub angle: f64,
    pub score: f64,
    pub payload: T,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome<T> {
    pub best: Probe<T>,
    pub evaluations: usize,
}

/// Keeps the larger score; ties go to the smaller angle, so the merge does
/// not depend on evaluation order.
fn better<T>(a: Probe<T>, b: Probe<T>) -> Probe<T> {
    if b.score > a.score || (b.score == a.score && b.angle < a.angle) {
        b
    } else {
        a
    }
}

fn probe<T>(eval: &(impl Fn(f64) -> Result<(f64, T)> + Sync), angle: f64) -> Result<Probe<T>> {
    let (score, payload) = eval(angle)?;
    if !score.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "sweep score at θ={angle} is not finite"
        )));
    }
    Ok(Probe {
        angle,
        score,
        payload,
    })
}

/// Grid over `[0, π)`, then golden-section search on the bracket around the
/// best grid angle. `eval(θ)` returns a score to maximize and a payload.
pub fn sweep_max<T: Send>(
    config: &SweepConfig,
    eval: impl Fn(f64) -> Result<(f64, T)> + Sync,
) -> Result<SweepOutcome<T>> {
    config.validate()?;
    let step = std::f64::consts::PI / config.grid as f64;
    let probes: Vec<Probe<T>> = (0..config.grid)
        .into_par_iter()
        .map(|k| probe(&eval, k as f64 * step))
        .collect::<Result<_>>()?;
    let mut evaluations = probes.len();
    let mut best = probes
        .into_iter()
        .reduce(better)
        .expect("grid is non-empty");

    if config.grid > 1 {
        // h(-θ) = h(θ), so the bracket can be clipped to [0, π]
        let (mut lo, mut hi) = (
            (best.angle - step).max(0.0),
            (best.angle + step).min(std::f64::consts::PI),
        );
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut p1 = probe(&eval, x1)?;
        let mut p2 = probe(&eval, x2)?;
        evaluations += 2;
        while hi - lo > config.angle_tol {
            if p1.score >= p2.score {
                hi = x2;
                x2 = x1;
                x1 = hi - INV_PHI * (hi - lo);
                let next = probe(&eval, x1)?;
                best = better(
                    best,
                    std::mem::replace(&mut p2, std::mem::replace(&mut p1, next)),
                );
            } else {
                lo = x1;
                x1 = x2;
                x2 = lo + INV_PHI * (hi - lo);
                let next = probe(&eval, x2)?;
                best = better(
                    best,
                    std::mem::replace(&mut p1, std::mem::replace(&mut p2, next)),
                );
            }
            evaluations += 1;
        }
        best = better(better(best, p1), p2);
    }
    Ok(SweepOutcome { best, evaluations })
}

/// The real-field sweep: `θ ∈ {0, π}`.
pub fn two_point_max<T>(eval: impl Fn(f64) -> Result<(f64, T)> + Sync) -> Result<SweepOutcome<T>> {
    let a = probe(&eval, 0.0)?;
    let b = probe(&eval, std::f64::consts::PI)?;
    Ok(SweepOutcome {
        best: better(a, b),
        evaluations: 2,
    })
}
