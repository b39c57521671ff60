//! Hermitian eigendecomposition by cyclic Jacobi on the real symmetric
//! embedding `[[A, -B], [B, A]]` of `A + iB`.
//!
//! Real input skips the embedding. [`PsdProjector`] keeps the previous
//! eigenbasis so that a slowly varying sequence of matrices (ADMM iterates)
//! needs only one or two sweeps per call.

use num_complex::Complex64;

use super::matrix::{HermitianMatrix, RealMatrix};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 512;
pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal stopping threshold relative to `‖M‖_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
/// Accepted Hermitian residual relative to `‖M‖_F`.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Eigenvalues in ascending order with the matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
    pub sweeps: usize,
}

impl Eigh {
    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `V diag(λ) V*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.values.len();
        let mut m = HermitianMatrix::zeros(n);
        for (lam, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                let vi = v[i] * *lam;
                for j in 0..n {
                    m[(i, j)] += vi * v[j].conj();
                }
            }
        }
        m
    }
}

/// Runs cyclic Jacobi on `a` in place, accumulating rotations into the
/// columns of `v`. Returns the number of sweeps.
pub(crate) fn jacobi_in_place(a: &mut RealMatrix, v: &mut RealMatrix, scale: f64) -> Result<usize> {
    let n = a.dim;
    let tol = OFF_DIAGONAL_TOL * scale.max(f64::MIN_POSITIVE);
    let skip = tol / (n.max(1) as f64) * 1e-2;
    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(a);
        if off <= tol {
            return Ok(sweep);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.data[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let app = a.data[p * n + p];
                let aqq = a.data[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.data[k * n + p];
                    let akq = a.data[k * n + q];
                    a.data[k * n + p] = c * akp - s * akq;
                    a.data[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a.data[p * n + k];
                    let aqk = a.data[q * n + k];
                    a.data[p * n + k] = c * apk - s * aqk;
                    a.data[q * n + k] = s * apk + c * aqk;
                }
                a.data[p * n + q] = 0.0;
                a.data[q * n + p] = 0.0;
                a.data[p * n + p] = app - t * apq;
                a.data[q * n + q] = aqq + t * apq;
                for k in 0..n {
                    let vkp = v.data[k * n + p];
                    let vkq = v.data[k * n + q];
                    v.data[k * n + p] = c * vkp - s * vkq;
                    v.data[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let off = off_diagonal_norm(a);
    if off <= tol {
        Ok(MAX_SWEEPS)
    } else {
        Err(Error::EigenNoConvergence {
            sweeps: MAX_SWEEPS,
            off_norm: off,
        })
    }
}

fn off_diagonal_norm(a: &RealMatrix) -> f64 {
    let n = a.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.data[i * n + j] * a.data[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Symmetric eigendecomposition of a real matrix, optionally starting from
/// an orthogonal basis that nearly diagonalizes it.
pub(crate) fn real_symmetric_eigen(
    a: &RealMatrix,
    warm: Option<&RealMatrix>,
) -> Result<(Vec<f64>, RealMatrix, usize)> {
    let n = a.dim;
    let scale = a.frobenius_norm();
    let (mut work, mut v) = match warm {
        Some(basis) if basis.dim == n => {
            let rotated = basis.transpose_mul(&a.mul(basis));
            (rotated, basis.clone())
        }
        _ => (a.clone(), RealMatrix::identity(n)),
    };
    // restore exact symmetry lost to rounding in the change of basis
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (work.data[i * n + j] + work.data[j * n + i]);
            work.data[i * n + j] = avg;
            work.data[j * n + i] = avg;
        }
    }
    let sweeps = jacobi_in_place(&mut work, &mut v, scale)?;
    let values = (0..n).map(|i| work.get(i, i)).collect();
    Ok((values, v, sweeps))
}

fn check_input(m: &HermitianMatrix) -> Result<f64> {
    if m.dim() > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "eigendecomposition supports dim <= {MAX_DIM}, got {}",
            m.dim()
        )));
    }
    let norm = m.frobenius_norm();
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_TOL * norm.max(1e-300) && residual > 0.0 {
        return Err(Error::NotHermitian { residual });
    }
    Ok(norm)
}

fn hermitian_part(m: &HermitianMatrix) -> HermitianMatrix {
    let n = m.dim();
    HermitianMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(m: &HermitianMatrix) -> Result<Eigh> {
    check_input(m)?;
    let n = m.dim();
    let h = hermitian_part(m);
    if h.is_real() {
        let (values, v, sweeps) = real_symmetric_eigen(&RealMatrix::real_part(&h), None)?;
        let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
            .map(|k| {
                let vec = (0..n).map(|i| Complex64::new(v.get(i, k), 0.0)).collect();
                (values[k], vec)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (values, vectors) = pairs.into_iter().unzip();
        return Ok(Eigh {
            values,
            vectors,
            sweeps,
        });
    }
    let (values, v, sweeps) = real_symmetric_eigen(&RealMatrix::embed(&h), None)?;
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let norm = h.frobenius_norm().max(1.0);
    let cluster_tol = 1e-8 * norm;

    let mut pairs: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(n);
    let mut start = 0;
    while start < 2 * n {
        let mut end = start + 1;
        while end < 2 * n
            && (values[order[end]] - values[order[end - 1]] <= cluster_tol
                || (end - start) % 2 == 1)
        {
            end += 1;
        }
        let candidates: Vec<Vec<Complex64>> = order[start..end]
            .iter()
            .map(|&k| {
                (0..n)
                    .map(|i| Complex64::new(v.get(i, k), v.get(i + n, k)))
                    .collect()
            })
            .collect();
        for vec in pivoted_gram_schmidt(candidates, (end - start) / 2) {
            let mv = h.matvec(&vec);
            let rayleigh: f64 = vec.iter().zip(&mv).map(|(a, b)| (a.conj() * b).re).sum();
            pairs.push((rayleigh, vec));
        }
        start = end;
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(Eigh {
        values,
        vectors,
        sweeps,
    })
}

// Picks `count` orthonormal vectors from the complex span of `candidates`,
// always taking the candidate with the largest remaining component.
fn pivoted_gram_schmidt(mut candidates: Vec<Vec<Complex64>>, count: usize) -> Vec<Vec<Complex64>> {
    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(count);
    for _ in 0..count {
        let (best, norm) = candidates
            .iter()
            .enumerate()
            .map(|(k, c)| (k, c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("cluster has candidates");
        let q: Vec<Complex64> = candidates
            .swap_remove(best)
            .iter()
            .map(|z| z / norm)
            .collect();
        for c in candidates.iter_mut() {
            let dot: Complex64 = q.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= dot * qi;
            }
        }
        chosen.push(q);
    }
    chosen
}

/// Nearest positive semidefinite matrix in Frobenius norm.
pub fn psd_project(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    check_input(m)?;
    let mut projector = PsdProjector::default();
    Ok(projector.project(m)?.0)
}

/// Spectral clamp that reuses its previous eigenbasis as a starting point.
#[derive(Debug, Clone, Default)]
pub struct PsdProjector {
    basis: Option<RealMatrix>,
    uses: usize,
}

impl PsdProjector {
    const REORTHONORMALIZE_EVERY: usize = 64;

    /// Returns the projection and the smallest eigenvalue of the input.
    pub fn project(&mut self, m: &HermitianMatrix) -> Result<(HermitianMatrix, f64)> {
        let n = m.dim();
        if n == 0 {
            return Ok((m.clone(), 0.0));
        }
        let h = hermitian_part(m);
        let real = h.is_real();
        let a = if real {
            RealMatrix::real_part(&h)
        } else {
            RealMatrix::embed(&h)
        };
        if self.basis.as_ref().is_some_and(|b| b.dim != a.dim) {
            self.basis = None;
        }
        self.uses += 1;
        if self.uses % Self::REORTHONORMALIZE_EVERY == 0 {
            if let Some(b) = self.basis.as_mut() {
                orthonormalize_columns(b);
            }
        }
        let (values, v, _) = real_symmetric_eigen(&a, self.basis.as_ref())?;
        let d = a.dim;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let negatives = values.iter().filter(|&&l| l < 0.0).count();
        // Reconstruct from whichever side of the spectrum is smaller.
        let (start, keep_negative) = if negatives <= d - negatives {
            (a.clone(), true)
        } else {
            (RealMatrix::zeros(d), false)
        };
        let mut out = start;
        for (k, &lam) in values.iter().enumerate() {
            let take = if keep_negative { lam < 0.0 } else { lam > 0.0 };
            if !take {
                continue;
            }
            let coef = if keep_negative { -lam } else { lam };
            // only the blocks read back below are accumulated
            let cols = if real { d } else { n };
            for i in 0..d {
                let vi = v.data[i * d + k] * coef;
                if vi == 0.0 {
                    continue;
                }
                for j in 0..cols {
                    out.data[i * d + j] += vi * v.data[j * d + k];
                }
            }
        }
        self.basis = Some(v);
        let result = if real {
            let mut r =
                HermitianMatrix::from_fn(n, |i, j| Complex64::new(out.data[i * d + j], 0.0));
            symmetrize_in_place(&mut r);
            r
        } else {
            let mut r = HermitianMatrix::from_fn(n, |i, j| {
                Complex64::new(out.data[i * d + j], out.data[(i + n) * d + j])
            });
            symmetrize_in_place(&mut r);
            r
        };
        Ok((result, min))
    }
}

fn symmetrize_in_place(m: &mut HermitianMatrix) {
    let n = m.dim();
    for i in 0..n {
        m[(i, i)].im = 0.0;
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
}

fn orthonormalize_columns(b: &mut RealMatrix) {
    let n = b.dim;
    for k in 0..n {
        for prev in 0..k {
            let dot: f64 = (0..n)
                .map(|i| b.data[i * n + k] * b.data[i * n + prev])
                .sum();
            for i in 0..n {
                b.data[i * n + k] -= dot * b.data[i * n + prev];
            }
        }
        let norm: f64 = (0..n)
            .map(|i| b.data[i * n + k].powi(2))
            .sum::<f64>()
            .sqrt();
        for i in 0..n {
            b.data[i * n + k] /= norm;
        }
    }
}
