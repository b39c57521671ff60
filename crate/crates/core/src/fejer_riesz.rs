//! Convolution square roots `ψ = θ ⋆ θ̃` and the transfer of a cyclic
//! witness into an ambient group.
//!
//! On `Z`, `ψ` supported in `[-N, N]` is pd iff `T(t) = Σ ψ(n) e^{2πint} >= 0`,
//! and then `T = |Θ|²` for a polynomial `Θ` of degree `<= N` (Fejér–Riesz).
//! On `Z_m` the square root is taken on the Fourier side, which loses all
//! control of the support.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclic::{dft, idft};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubsetMask};
use crate::linalg::{poly_from_roots, poly_roots_seeded, ROOTS_SEED};
use crate::posdef::{is_posdef, GroupFunction, PdCertificate, DEFAULT_TOLERANCE};

/// Points at which `T` is sampled for the nonnegativity check.
pub const GRID_POINTS: usize = 4096;
/// Roots this close to the unit circle are treated as lying on it.
pub const UNIT_CIRCLE_TOL: f64 = 1e-6;
/// Largest accepted `|r · conj(r') - 1|` for a matched root pair.
pub const PAIRING_TOL: f64 = 1e-4;

/// A sequence on `[-N, N]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WindowJson", into = "WindowJson")]
pub struct WindowedSequence {
    radius: usize,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    n: usize,
    values: Vec<[f64; 2]>,
}

impl TryFrom<WindowJson> for WindowedSequence {
    type Error = Error;

    fn try_from(j: WindowJson) -> Result<Self> {
        WindowedSequence::new(
            j.n,
            j.values
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<WindowedSequence> for WindowJson {
    fn from(w: WindowedSequence) -> Self {
        WindowJson {
            n: w.radius,
            values: w.values.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl WindowedSequence {
    /// `values[k]` holds `ψ(k - N)`.
    pub fn new(radius: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != 2 * radius + 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * radius + 1,
                got: values.len(),
            });
        }
        Ok(Self { radius, values })
    }

    pub fn from_real(radius: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            radius,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.radius {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(n + self.radius as i64) as usize]
        }
    }

    /// `max_n |ψ(-n) - conj ψ(n)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let r = self.radius as i64;
        (0..=r)
            .map(|n| (self.at(-n) - self.at(n).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `T(t) = Σ ψ(n) e^{2πint}` (real part).
    pub fn symbol(&self, t: f64) -> f64 {
        let r = self.radius as i64;
        (-r..=r)
            .map(|n| {
                (self.at(n) * Complex64::from_polar(1.0, std::f64::consts::TAU * n as f64 * t)).re
            })
            .sum()
    }

    pub fn max_distance(&self, other: &WindowedSequence) -> f64 {
        let r = self.radius.max(other.radius) as i64;
        (-r..=r)
            .map(|n| (self.at(n) - other.at(n)).norm())
            .fold(0.0, f64::max)
    }
}

/// `(θ ⋆ θ̃)(n) = Σ_k θ(k) conj θ(k - n)` for `θ` on `[0, N]`.
pub fn autocorrelate(theta: &[Complex64]) -> WindowedSequence {
    let len = theta.len();
    let radius = len.saturating_sub(1);
    let values = (-(radius as i64)..=radius as i64)
        .map(|n| {
            (0..len as i64)
                .filter(|&k| (0..len as i64).contains(&(k - n)))
                .map(|k| theta[k as usize] * theta[(k - n) as usize].conj())
                .sum()
        })
        .collect();
    WindowedSequence { radius, values }
}

/// `(θ ⋆ θ̃)` on `Z_m`.
pub fn autocorrelate_zm(theta: &[Complex64]) -> Vec<Complex64> {
    let m = theta.len();
    (0..m)
        .map(|n| {
            (0..m)
                .map(|k| theta[k] * theta[(k + m - n) % m].conj())
                .sum()
        })
        .collect()
}

/// Greedy pairing `r ↔ 1/conj(r)`; returns one representative root inside
/// (or on) the unit circle per pair.
fn pair_roots(mut roots: Vec<Complex64>) -> Result<Vec<Complex64>> {
    roots.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });
    let mut used = vec![false; roots.len()];
    let mut reps = Vec::with_capacity(roots.len() / 2);
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let r = roots[i];
        let (j, metric) = (0..roots.len())
            .filter(|&j| !used[j])
            .map(|j| (j, (r * roots[j].conj() - 1.0).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::RootPairing(format!("root {r} has no partner")))?;
        if metric > PAIRING_TOL {
            return Err(Error::RootPairing(format!(
                "root {r} best partner {} has |r·conj(r') - 1| = {metric:.3e}",
                roots[j]
            )));
        }
        used[j] = true;
        let s = roots[j];
        let on_circle = (r.norm() - 1.0).abs() <= UNIT_CIRCLE_TOL.max(metric)
            && (s.norm() - 1.0).abs() <= UNIT_CIRCLE_TOL.max(metric);
        let rep = if on_circle {
            let mid = 0.5 * (r + s);
            if mid.norm() > 0.0 {
                mid / mid.norm()
            } else {
                r / r.norm()
            }
        } else {
            let (inner, outer) = if r.norm() <= s.norm() { (r, s) } else { (s, r) };
            0.5 * (inner + 1.0 / outer.conj())
        };
        reps.push(rep);
    }
    Ok(reps)
}

/// Fejér–Riesz factor: `θ` on `[0, N]` with `θ ⋆ θ̃ = ψ` and `θ(0) >= 0`.
/// `tol` bounds how negative the symbol may be on the sampling grid.
pub fn factor_z(psi: &WindowedSequence, tol: f64) -> Result<Vec<Complex64>> {
    factor_z_seeded(psi, tol, ROOTS_SEED)
}

/// [`factor_z`] with an explicit seed for the root finder's starting points.
pub fn factor_z_seeded(psi: &WindowedSequence, tol: f64, seed: u64) -> Result<Vec<Complex64>> {
    let n = psi.radius();
    let scale = psi.at(0).norm().max(f64::MIN_POSITIVE);
    let defect = psi.hermitian_defect();
    if defect > 1e-9 * scale.max(1.0) {
        return Err(Error::NotHermitian { residual: defect });
    }
    let min_symbol = (0..GRID_POINTS)
        .map(|k| psi.symbol(k as f64 / GRID_POINTS as f64))
        .fold(f64::INFINITY, f64::min);
    if min_symbol < -tol {
        return Err(Error::NotPositiveDefinite(format!(
            "trigonometric polynomial reaches {min_symbol:.3e} < -{tol:.1e}"
        )));
    }
    let mut theta = vec![Complex64::new(0.0, 0.0); n + 1];
    let psi0 = psi.at(0).re;
    if psi0 <= 0.0 {
        return Ok(theta);
    }
    // actual support radius
    let d = (0..=n as i64)
        .rev()
        .find(|&k| psi.at(k).norm() > 1e-14 * psi0)
        .unwrap_or(0) as usize;
    if d == 0 {
        theta[0] = Complex64::new(psi0.sqrt(), 0.0);
        return Ok(theta);
    }
    let coeffs: Vec<Complex64> = (-(d as i64)..=d as i64).map(|k| psi.at(k)).collect();
    let roots = poly_roots_seeded(&coeffs, seed)?;
    if roots.len() != 2 * d {
        return Err(Error::RootPairing(format!(
            "expected {} roots, found {}",
            2 * d,
            roots.len()
        )));
    }
    let reps = pair_roots(roots)?;
    let q = poly_from_roots(Complex64::new(1.0, 0.0), &reps);
    let energy: f64 = q.iter().map(|c| c.norm_sqr()).sum();
    let modulus = (psi0 / energy).sqrt();
    let phase = if q[0].norm() > 0.0 {
        q[0].conj() / q[0].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    for (t, c) in theta.iter_mut().zip(&q) {
        *t = c * phase * modulus;
    }
    theta[0].im = 0.0;
    let err = autocorrelate(&theta).max_distance(psi);
    if err > 1e-6 * psi0 {
        return Err(Error::RootPairing(format!(
            "reconstruction error {err:.3e} exceeds 1e-6·ψ(0)"
        )));
    }
    Ok(theta)
}

/// Square root on `Z_m`: `θ = IDFT(sqrt(max(ψ̂, 0)))`.
pub fn factor_zm(psi: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    if psi.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    let hat = dft(psi);
    let scale = psi.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    let imag = hat.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > 1e-9 * scale * psi.len() as f64 {
        return Err(Error::NotHermitian { residual: imag });
    }
    if let Some((r, v)) = hat.iter().enumerate().find(|(_, v)| v.re < -tol) {
        return Err(Error::NotPositiveDefinite(format!(
            "on Z_{}: transform at r={r} is {:.3e}",
            psi.len(),
            v.re
        )));
    }
    let root: Vec<Complex64> = hat
        .iter()
        .map(|v| Complex64::new(v.re.max(0.0).sqrt(), 0.0))
        .collect();
    Ok(idft(&root))
}

/// `U* = ∪_k z^{-k} U z^k`.
pub fn conjugation_orbit(g: &FiniteGroup, u: &SubsetMask, z: usize) -> Result<SubsetMask> {
    g.check_element(z)?;
    let m = g.element_order(z);
    let mut out = SubsetMask::empty(g.order());
    for x in u.indices() {
        let mut y = x;
        for _ in 0..m {
            out.insert(y);
            y = g.conjugate(g.inv(z), y);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferReport {
    pub certificate: PdCertificate,
    pub support_in_omega: bool,
    pub value_at_identity: Complex64,
    pub value_at_z: Complex64,
    /// `|F(e) - f(e)|`.
    pub identity_error: f64,
    /// `|F(z) - ψ(1) f(e)|`.
    pub z_error: f64,
    /// Distance to the double-sum form `Σ θ(k) conj θ(j) f(z^j x z^{-k})`.
    pub double_sum_error: f64,
    /// `F / F(e)`.
    pub normalized: GroupFunction,
    /// `|F₀(z)|`.
    pub normalized_value: f64,
}

impl TransferReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.certificate.is_pd()
            && self.support_in_omega
            && self.identity_error <= tol
            && self.z_error <= tol
    }
}

fn precondition(condition: &'static str, detail: String) -> Error {
    Error::TransferPrecondition { condition, detail }
}

/// `F(x) = Σ_{n ∈ supp ψ} ψ(n) f(z^{-n} x)` after checking that `f` is pd and
/// invariant under conjugation by `z`, and the support conditions
/// (i) `U* ⊂ Ω`, (ii) `z^n U* ⊂ Ω` for `n ∈ supp ψ`, (iii) `z^n ∉ U*` for
/// `n ≢ 0`, with `U = supp f`.
pub fn transfer_construct(
    g: &FiniteGroup,
    z: usize,
    psi: &[Complex64],
    f: &GroupFunction,
    omega: &SubsetMask,
) -> Result<(GroupFunction, TransferReport)> {
    g.check_element(z)?;
    let n = g.order();
    if f.group_order() != n || omega.group_order() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: f.group_order(),
        });
    }
    let m = g.element_order(z);
    if psi.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: psi.len(),
        });
    }
    if (psi[0] - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(precondition("ψ(0) = 1", format!("ψ(0) = {}", psi[0])));
    }
    let theta = factor_zm(psi, 1e-9).map_err(|e| precondition("ψ pd on Z_m", e.to_string()))?;
    let cert_f = is_posdef(g, f, DEFAULT_TOLERANCE)?;
    if !cert_f.is_pd() {
        return Err(precondition(
            "f pd",
            format!("min eigenvalue {:.3e}", cert_f.min_eigenvalue),
        ));
    }
    let zinv = g.inv(z);
    if let Some(x) = (0..n).find(|&x| (f.at(g.conjugate(zinv, x)) - f.at(x)).norm() > 1e-12) {
        return Err(precondition(
            "invariance",
            format!("f(z⁻¹xz) ≠ f(x) at x = {}", g.label(x)),
        ));
    }
    let fe = f.at(g.identity());
    let u = f.support(1e-14 * fe.norm());
    let u_star = conjugation_orbit(g, &u, z)?;
    if let Some(x) = u_star.indices().into_iter().find(|&x| !omega.contains(x)) {
        return Err(precondition(
            "(i)",
            format!("U* contains {} outside Ω", g.label(x)),
        ));
    }
    let powers = g.generated_subgroup(z);
    let support: Vec<usize> = (0..m).filter(|&k| psi[k].norm() > 0.0).collect();
    for &k in &support {
        if let Some(x) = u_star
            .indices()
            .into_iter()
            .find(|&x| !omega.contains(g.mul(powers[k], x)))
        {
            return Err(precondition(
                "(ii)",
                format!("z^{k}·{} lies outside Ω", g.label(x)),
            ));
        }
    }
    if let Some(k) = (1..m).find(|&k| u_star.contains(powers[k])) {
        return Err(precondition("(iii)", format!("z^{k} ∈ U*")));
    }

    let values: Vec<Complex64> = (0..n)
        .map(|x| {
            support
                .iter()
                .map(|&k| psi[k] * f.at(g.mul(powers[(m - k) % m], x)))
                .sum()
        })
        .collect();
    let big_f = GroupFunction::new(values);

    // Σ_{j,k} θ(k) conj θ(j) f(z^j x z^{-k})
    let double: Vec<Complex64> = (0..n)
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, tj) in theta.iter().enumerate() {
                let left = g.mul(powers[j], x);
                for (k, tk) in theta.iter().enumerate() {
                    acc += tk * tj.conj() * f.at(g.mul(left, powers[(m - k) % m]));
                }
            }
            acc
        })
        .collect();
    let double_sum_error = big_f.max_distance(&GroupFunction::new(double));

    let certificate = is_posdef(g, &big_f, DEFAULT_TOLERANCE)?;
    let support_in_omega = (0..n).all(|x| omega.contains(x) || big_f.at(x).norm() == 0.0);
    let value_at_identity = big_f.at(g.identity());
    let value_at_z = big_f.at(z);
    let expect_z = if m > 1 { psi[1] * fe } else { psi[0] * fe };
    let normalized = big_f.scale(value_at_identity.inv());
    let normalized_value = normalized.at(z).norm();
    let report = TransferReport {
        certificate,
        support_in_omega,
        value_at_identity,
        value_at_z,
        identity_error: (value_at_identity - fe).norm(),
        z_error: (value_at_z - expect_z).norm(),
        double_sum_error,
        normalized,
        normalized_value,
    };
    Ok((big_f, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conj_invariant_core;
    use crate::posdef::conv_square;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factor_z_examples() {
        let delta = WindowedSequence::from_real(0, &[1.0]).unwrap();
        assert_eq!(factor_z(&delta, 1e-9).unwrap(), vec![c(1.0, 0.0)]);
        let delta2 = WindowedSequence::from_real(2, &[0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            factor_z(&delta2, 1e-9).unwrap(),
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );

        let psi = WindowedSequence::from_real(1, &[0.5, 1.0, 0.5]).unwrap();
        let theta = factor_z(&psi, 1e-9).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(
            (theta[0] - c(h, 0.0)).norm() < 1e-7 && (theta[1] - c(h, 0.0)).norm() < 1e-7,
            "{theta:?}"
        );

        let theta0 = vec![
            c(0.3, 0.1),
            c(-1.0, 0.4),
            c(0.2, 0.0),
            c(0.5, -0.7),
            c(0.1, 0.1),
            c(-0.4, 0.2),
        ];
        let psi = autocorrelate(&theta0);
        let theta = factor_z(&psi, 1e-9).unwrap();
        assert_eq!(theta.len(), 6);
        assert!(autocorrelate(&theta).max_distance(&psi) < 1e-8);
        assert!(theta[0].im == 0.0 && theta[0].re >= 0.0);
    }

    #[test]
    fn factor_z_rejects_non_pd() {
        let psi = WindowedSequence::from_real(1, &[1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            factor_z(&psi, 1e-9),
            Err(Error::NotPositiveDefinite(_))
        ));
        let psi = WindowedSequence::new(1, vec![c(0.0, 0.3), c(1.0, 0.0), c(0.0, 0.3)]).unwrap();
        assert!(matches!(
            factor_z(&psi, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
        assert!(WindowedSequence::from_real(1, &[1.0]).is_err());
    }

    #[test]
    fn factor_zm_examples() {
        for m in [1usize, 4, 7] {
            let mut delta = vec![c(0.0, 0.0); m];
            delta[0] = c(1.0, 0.0);
            // flat transform, so the root is δ_0 itself
            let theta = factor_zm(&delta, 1e-9).unwrap();
            assert!(theta
                .iter()
                .zip(&delta)
                .all(|(t, d)| (t - d).norm() < 1e-12));
            let ones = vec![c(1.0, 0.0); m];
            let theta = factor_zm(&ones, 1e-9).unwrap();
            let back = autocorrelate_zm(&theta);
            assert!(back.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-12));
        }
        let psi = [c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.5, 0.0)];
        let theta = factor_zm(&psi, 1e-9).unwrap();
        let back = autocorrelate_zm(&theta);
        assert!(back.iter().zip(&psi).all(|(a, b)| (a - b).norm() < 1e-12));
        assert!(matches!(
            factor_zm(&[c(1.0, 0.0), c(1.5, 0.0)], 1e-9),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn transfer_of_delta_is_trivial_extension() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let psi = [c(1.0, 0.0), c(0.5, 0.5), c(0.0, 0.0), c(0.5, -0.5)];
        let omega = SubsetMask::from_indices(8, &[0, 1, 3]).unwrap();
        let (big_f, report) =
            transfer_construct(&d4, 1, &psi, &GroupFunction::delta(8, 0), &omega).unwrap();
        for k in 0..4 {
            assert!((big_f.at(d4.pow(1, k as i64)) - psi[k]).norm() < 1e-15);
        }
        for x in 4..8 {
            assert_eq!(big_f.at(x), c(0.0, 0.0));
        }
        assert!(report.passes(1e-9));
        assert!(report.double_sum_error < 1e-12);
        assert!((report.normalized_value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn transfer_preconditions_are_named() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let psi = [c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.5, 0.0)];
        let small = SubsetMask::from_indices(8, &[0]).unwrap();
        let named = |r: Result<(GroupFunction, TransferReport)>| match r {
            Err(Error::TransferPrecondition { condition, .. }) => condition,
            other => panic!("expected a precondition failure, got {other:?}"),
        };
        assert_eq!(
            named(transfer_construct(
                &d4,
                1,
                &psi,
                &GroupFunction::delta(8, 0),
                &small
            )),
            "(ii)"
        );
        // f = χ_{e,s} ⋆ reversed: not invariant under conjugation by r
        let v = SubsetMask::from_indices(8, &[0, 4]).unwrap();
        let f = conv_square(&d4, &GroupFunction::indicator(&v))
            .unwrap()
            .scale(c(0.5, 0.0));
        assert_eq!(
            named(transfer_construct(&d4, 1, &psi, &f, &SubsetMask::full(8))),
            "invariance"
        );
        // U = ⟨r^2⟩ meets the powers of z = r
        let v = SubsetMask::from_indices(8, &[0, 2]).unwrap();
        let f = conv_square(&d4, &GroupFunction::indicator(&v))
            .unwrap()
            .scale(c(0.5, 0.0));
        assert_eq!(
            named(transfer_construct(&d4, 1, &psi, &f, &SubsetMask::full(8))),
            "(iii)"
        );
        assert_eq!(
            named(transfer_construct(
                &d4,
                1,
                &psi,
                &f,
                &SubsetMask::from_indices(8, &[0, 1, 3]).unwrap()
            )),
            "(i)"
        );
        let bad = [c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(
            named(transfer_construct(
                &d4,
                1,
                &bad,
                &GroupFunction::delta(8, 0),
                &small
            )),
            "ψ(0) = 1"
        );
    }

    #[test]
    fn invariant_core_gives_invariant_convolution_square() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let u = SubsetMask::from_indices(8, &[0, 4, 5, 6, 7, 2]).unwrap();
        let v = conj_invariant_core(&d4, &u, 1).unwrap();
        let f = conv_square(&d4, &GroupFunction::indicator(&v)).unwrap();
        for x in 0..8 {
            assert_eq!(f.at(d4.conjugate(d4.inv(1), x)), f.at(x));
        }
        let orbit = conjugation_orbit(&d4, &SubsetMask::from_indices(8, &[4]).unwrap(), 1).unwrap();
        assert_eq!(orbit.indices(), vec![4, 6]);
    }
}
