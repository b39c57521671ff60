//! Simultaneous polynomial root finding by the Aberth–Ehrlich iteration.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 500;
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// All roots of `coeffs[0] + coeffs[1] z + ... + coeffs[d] z^d`, using the
/// default seed for the starting circle.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    poly_roots_seeded(coeffs, DEFAULT_SEED)
}

/// Horner evaluation of `p` and `p'` together.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |a_k| |z|^k`, the scale of rounding error in evaluating `p(z)`.
fn magnitude_at(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    eval_with_derivative(coeffs, z).0
}

/// [`poly_roots`] with an explicit seed for the angular perturbation of the
/// starting points.
pub fn poly_roots_seeded(coeffs: &[Complex64], seed: u64) -> Result<Vec<Complex64>> {
    let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].norm() <= 1e-12 * norm {
        end -= 1;
    }
    let mut trimmed = &coeffs[..end];
    if trimmed.len() < 2 {
        return Err(Error::InvalidArgument(
            "polynomial must have degree >= 1 after trimming".into(),
        ));
    }
    // exact zero roots
    let mut roots = Vec::new();
    while trimmed.len() > 1 && trimmed[0] == Complex64::new(0.0, 0.0) {
        roots.push(Complex64::new(0.0, 0.0));
        trimmed = &trimmed[1..];
    }
    let degree = trimmed.len() - 1;
    if degree == 0 {
        return Ok(roots);
    }
    let lead = trimmed[degree];
    let monic: Vec<Complex64> = trimmed.iter().map(|c| c / lead).collect();
    if degree == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();

    // perturbed circle around the root centroid, radius = geometric mean of moduli
    let center = -monic[degree - 1] / degree as f64;
    let radius = monic[0].norm().powf(1.0 / degree as f64).max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let jitter: f64 = rng.gen_range(-0.25..0.25);
            let angle = offset + std::f64::consts::TAU * (k as f64 + jitter) / degree as f64;
            center + Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; degree];
    let eps = f64::EPSILON;
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for k in 0..degree {
            if done[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&monic, z[k]);
            let bound = 4.0 * eps * magnitude_at(&abs_coeffs, z[k].norm());
            if p.norm() <= bound {
                done[k] = true;
                continue;
            }
            all_done = false;
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // nudge off a critical point
                let nudge = 1e-8 * (1.0 + z[k].norm());
                z[k] += Complex64::new(nudge, 1e-8);
                continue;
            }
            z[k] -= step;
            if step.norm() <= 4.0 * eps * z[k].norm().max(1e-300) {
                done[k] = true;
            }
        }
        if all_done {
            roots.extend(z);
            return Ok(roots);
        }
    }
    Err(Error::RootsNoConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Expands `lead · Π (z - r_i)` into ascending coefficients.
pub fn poly_from_roots(lead: Complex64, roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![lead];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn quadratic_examples() {
        let r = sorted(poly_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14 && (r[1] - c(1.0, 0.0)).norm() < 1e-14);
        let mut r = poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-14 && (r[1] - c(0.0, 1.0)).norm() < 1e-14);
        let r = sorted(poly_roots(&[c(1.0, 0.0), c(-2.5, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(0.5, 0.0)).norm() < 1e-14 && (r[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn trims_tiny_leading_terms_and_zero_roots() {
        let r = poly_roots(&[c(0.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), c(1e-15, 0.0)]).unwrap();
        let r = sorted(r);
        assert_eq!(r.len(), 2);
        assert!(r[0].norm() < 1e-15);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-14);
        assert!(poly_roots(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn reconstructs_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for degree in [3usize, 8, 15, 30] {
            let truth: Vec<Complex64> = (0..degree)
                .map(|_| Complex64::from_polar(rng.gen_range(0.3..1.7), rng.gen_range(0.0..6.3)))
                .collect();
            let coeffs = poly_from_roots(c(1.5, -0.5), &truth);
            let found = poly_roots(&coeffs).unwrap();
            let rebuilt = poly_from_roots(coeffs[degree], &found);
            let norm: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let err: f64 = rebuilt
                .iter()
                .zip(&coeffs)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err <= 1e-6 * norm, "degree {degree}: {err}");
            for r in &found {
                let scale = norm * r.norm().max(1.0).powi(degree as i32);
                assert!(eval(&coeffs, *r).norm() <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn double_roots_on_unit_circle() {
        let w = Complex64::from_polar(1.0, 1.1);
        let coeffs = poly_from_roots(c(1.0, 0.0), &[w, w, -w.conj(), -w.conj()]);
        let found = poly_roots(&coeffs).unwrap();
        for r in &found {
            let d = (r - w).norm().min((r + w.conj()).norm());
            assert!(d < 1e-6, "{r}");
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let coeffs = poly_from_roots(c(1.0, 0.0), &[c(0.2, 0.1), c(-1.0, 0.4), c(3.0, -2.0)]);
        assert_eq!(
            poly_roots_seeded(&coeffs, 7).unwrap(),
            poly_roots_seeded(&coeffs, 7).unwrap()
        );
    }
}
