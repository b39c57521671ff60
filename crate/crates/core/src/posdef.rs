//! Positive definite functions on finite groups.
//!
//! `f` is positive definite when every matrix `[f(x_j x_k^{-1})]` is positive
//! semidefinite. Any such matrix is a principal submatrix of the full group
//! matrix `M[x][y] = f(x y^{-1})` (repeated points only duplicate rows), so on
//! a finite group one `|G| × |G|` eigenvalue test decides the question.
//!
//! Haar measure is counting measure: convolution is `Σ_y f(y) g(y^{-1} x)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubsetMask};
use crate::linalg::{eigh, HermitianMatrix};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A complex-valued function on a finite group, indexed by element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupFunctionJson", into = "GroupFunctionJson")]
pub struct GroupFunction {
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct GroupFunctionJson {
    group_order: usize,
    values: Vec<[f64; 2]>,
}

impl TryFrom<GroupFunctionJson> for GroupFunction {
    type Error = Error;

    fn try_from(j: GroupFunctionJson) -> Result<Self> {
        if j.values.len() != j.group_order {
            return Err(Error::LengthMismatch {
                expected: j.group_order,
                got: j.values.len(),
            });
        }
        Ok(Self {
            values: j
                .values
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        })
    }
}

impl From<GroupFunction> for GroupFunctionJson {
    fn from(f: GroupFunction) -> Self {
        Self {
            group_order: f.values.len(),
            values: f.values.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl GroupFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Self { values: vec![c; n] }
    }

    /// `δ_x`.
    pub fn delta(n: usize, x: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[x] = Complex64::new(1.0, 0.0);
        f
    }

    /// `χ_A`.
    pub fn indicator(mask: &SubsetMask) -> Self {
        Self {
            values: mask
                .members()
                .iter()
                .map(|&b| Complex64::new(if b { 1.0 } else { 0.0 }, 0.0))
                .collect(),
        }
    }

    pub fn group_order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn at(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn set(&mut self, x: usize, v: Complex64) {
        self.values[x] = v;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    /// Support as a mask, with entries of modulus `<= threshold` treated as zero.
    pub fn support(&self, threshold: f64) -> SubsetMask {
        SubsetMask::from_members(self.values.iter().map(|v| v.norm() > threshold).collect())
    }

    pub fn max_distance(&self, other: &GroupFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

fn check_len(g: &FiniteGroup, f: &GroupFunction) -> Result<()> {
    if f.group_order() == g.order() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: g.order(),
            got: f.group_order(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pd,
    NotPd,
    /// Smallest eigenvalue within ten tolerances of zero but below `-tol`.
    Borderline,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pd => "pd",
            Verdict::NotPd => "not_pd",
            Verdict::Borderline => "borderline",
        })
    }
}

/// Evidence for (or against) positive definiteness of a group function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdCertificate {
    pub min_eigenvalue: f64,
    /// `max |M - M*|` over the group matrix.
    pub hermitian_residual: f64,
    pub verdict: Verdict,
    /// Absolute tolerance used (relative tolerance times `f(e)`).
    pub tolerance: f64,
}

impl PdCertificate {
    pub fn is_pd(&self) -> bool {
        self.verdict == Verdict::Pd
    }

    /// The group matrix is numerically singular: an extremal witness typically is.
    pub fn is_rank_deficient(&self) -> bool {
        self.verdict == Verdict::Pd && self.min_eigenvalue.abs() < self.tolerance.max(f64::EPSILON)
    }
}

/// `M[x][y] = f(x y^{-1})`.
pub fn group_matrix(g: &FiniteGroup, f: &GroupFunction) -> Result<HermitianMatrix> {
    check_len(g, f)?;
    let n = g.order();
    Ok(HermitianMatrix::from_fn(n, |x, y| {
        f.values[g.mul(x, g.inv(y))]
    }))
}

/// Smallest eigenvalue of the Hermitian part of the group matrix.
pub fn min_group_eigenvalue(g: &FiniteGroup, f: &GroupFunction) -> Result<f64> {
    let m = group_matrix(g, f)?;
    let n = m.dim();
    let h = HermitianMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    Ok(eigh(&h)?.min_value())
}

/// Tests positive definiteness; `tol` is relative to `|f(e)|` and may be 0.
pub fn is_posdef(g: &FiniteGroup, f: &GroupFunction, tol: f64) -> Result<PdCertificate> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= 0, got {tol}"
        )));
    }
    check_len(g, f)?;
    let scale = f.values[g.identity()].norm();
    let abs_tol = tol * if scale > 0.0 { scale } else { 1.0 };
    let m = group_matrix(g, f)?;
    let hermitian_residual = m.hermitian_residual();
    let min_eigenvalue = min_group_eigenvalue(g, f)?;
    let verdict = if hermitian_residual > abs_tol {
        Verdict::NotPd
    } else if min_eigenvalue >= -abs_tol {
        Verdict::Pd
    } else if min_eigenvalue >= -10.0 * abs_tol {
        Verdict::Borderline
    } else {
        Verdict::NotPd
    };
    Ok(PdCertificate {
        min_eigenvalue,
        hermitian_residual,
        verdict,
        tolerance: abs_tol,
    })
}

/// `f̃(x) = conj(f(x^{-1}))`.
pub fn reversed(f: &GroupFunction, g: &FiniteGroup) -> Result<GroupFunction> {
    check_len(g, f)?;
    Ok(GroupFunction {
        values: (0..g.order()).map(|x| f.values[g.inv(x)].conj()).collect(),
    })
}

/// `(f ⋆ g)(x) = Σ_y f(y) g(y^{-1} x)`.
pub fn convolution(
    grp: &FiniteGroup,
    f: &GroupFunction,
    g: &GroupFunction,
) -> Result<GroupFunction> {
    check_len(grp, f)?;
    check_len(grp, g)?;
    let n = grp.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for y in 0..n {
        let fy = f.values[y];
        if fy == Complex64::new(0.0, 0.0) {
            continue;
        }
        let yinv = grp.inv(y);
        for (x, o) in out.iter_mut().enumerate() {
            *o += fy * g.values[grp.mul(yinv, x)];
        }
    }
    Ok(GroupFunction { values: out })
}

/// `g ⋆ g̃`, positive definite for every `g`.
pub fn conv_square(grp: &FiniteGroup, g: &GroupFunction) -> Result<GroupFunction> {
    convolution(grp, g, &reversed(g, grp)?)
}

/// Pointwise product `f g`.
pub fn schur_product(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    if f.group_order() != g.group_order() {
        return Err(Error::LengthMismatch {
            expected: f.group_order(),
            got: g.group_order(),
        });
    }
    Ok(GroupFunction {
        values: f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect(),
    })
}

/// `α f + β g` with `α, β > 0`.
pub fn conic_combination(
    alpha: f64,
    f: &GroupFunction,
    beta: f64,
    g: &GroupFunction,
) -> Result<GroupFunction> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "conic combination needs positive weights, got ({alpha}, {beta})"
        )));
    }
    if f.group_order() != g.group_order() {
        return Err(Error::LengthMismatch {
            expected: f.group_order(),
            got: g.group_order(),
        });
    }
    Ok(GroupFunction {
        values: f
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| a * alpha + b * beta)
            .collect(),
    })
}

/// The subgroup listed by `elements`, as a group in its own right whose
/// element `i` is `elements[i]`.
pub fn subgroup(g: &FiniteGroup, elements: &[usize]) -> Result<FiniteGroup> {
    if !g.is_subgroup(elements) {
        return Err(Error::NotSubgroup(format!("{elements:?}")));
    }
    let mut position = vec![usize::MAX; g.order()];
    for (i, &x) in elements.iter().enumerate() {
        if position[x] != usize::MAX {
            return Err(Error::NotSubgroup(format!("element {x} listed twice")));
        }
        position[x] = i;
    }
    let table = elements
        .iter()
        .map(|&x| elements.iter().map(|&y| position[g.mul(x, y)]).collect())
        .collect();
    let labels = elements.iter().map(|&x| g.label(x).to_string()).collect();
    FiniteGroup::from_table(table, Some(labels))
}

/// `f|_Z`, re-indexed along the order of `elements`.
pub fn restrict_to_subgroup(
    g: &FiniteGroup,
    f: &GroupFunction,
    elements: &[usize],
) -> Result<(FiniteGroup, GroupFunction)> {
    check_len(g, f)?;
    let sub = subgroup(g, elements)?;
    let values = elements.iter().map(|&x| f.values[x]).collect();
    Ok((sub, GroupFunction { values }))
}

/// Extends a pd function on the subgroup `elements` by zero to all of `G`.
pub fn trivial_extension(
    g: &FiniteGroup,
    elements: &[usize],
    h: &GroupFunction,
) -> Result<GroupFunction> {
    let sub = subgroup(g, elements)?;
    let cert = is_posdef(&sub, h, DEFAULT_TOLERANCE)?;
    if !cert.is_pd() {
        return Err(Error::NotPositiveDefinite(format!(
            "function on the subgroup: min eigenvalue {:.3e}, hermitian residual {:.3e}",
            cert.min_eigenvalue, cert.hermitian_residual
        )));
    }
    let mut out = GroupFunction::zeros(g.order());
    for (i, &x) in elements.iter().enumerate() {
        out.values[x] = h.values[i];
    }
    Ok(out)
}

/// `F(x) = Σ_{j,k} conj(a_j) a_k f(y_j^{-1} x y_k)`.
pub fn derived_function(
    g: &FiniteGroup,
    f: &GroupFunction,
    points: &[usize],
    coeffs: &[Complex64],
) -> Result<GroupFunction> {
    check_len(g, f)?;
    if points.is_empty() || points.len() != coeffs.len() {
        return Err(Error::LengthMismatch {
            expected: points.len().max(1),
            got: coeffs.len(),
        });
    }
    for &y in points {
        g.check_element(y)?;
    }
    let n = g.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (j, &yj) in points.iter().enumerate() {
        let left = g.inv(yj);
        for (k, &yk) in points.iter().enumerate() {
            let w = coeffs[j].conj() * coeffs[k];
            for (x, o) in out.iter_mut().enumerate() {
                *o += w * f.values[g.mul(g.mul(left, x), yk)];
            }
        }
    }
    Ok(GroupFunction { values: out })
}

/// `max_x |f(x) - conj(f(x^{-1}))|`.
pub fn hermitian_defect(g: &FiniteGroup, f: &GroupFunction) -> Result<f64> {
    check_len(g, f)?;
    Ok((0..g.order())
        .map(|x| (f.values[x] - f.values[g.inv(x)].conj()).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn group_matrix_examples() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let m = group_matrix(&z3, &GroupFunction::delta(3, 0)).unwrap();
        assert_eq!(m, HermitianMatrix::identity(3));
        let ones = group_matrix(&z3, &GroupFunction::constant(3, c(1.0, 0.0))).unwrap();
        assert!(ones.as_slice().iter().all(|&v| v == c(1.0, 0.0)));
        let w = c(0.3, 0.2);
        let f = GroupFunction::new(vec![c(1.0, 0.0), w, w.conj()]);
        let m = group_matrix(&z3, &f).unwrap();
        // entry (x, y) holds f(x - y mod 3): first row (1, conj w, w)
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(0, 1)], w.conj());
        assert_eq!(m[(0, 2)], w);
        assert_eq!(m[(1, 0)], w);
    }

    #[test]
    fn posdef_examples() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let cert = is_posdef(
            &s3,
            &GroupFunction::constant(6, c(1.0, 0.0)),
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::Pd);
        assert!(cert.min_eigenvalue.abs() < 1e-12);
        assert!(cert.is_rank_deficient());

        let z2 = FiniteGroup::cyclic(2).unwrap();
        let cert = is_posdef(
            &z2,
            &GroupFunction::from_real(&[1.0, 1.5]),
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::NotPd);
        assert!((cert.min_eigenvalue + 0.5).abs() < 1e-12);

        let z4 = FiniteGroup::cyclic(4).unwrap();
        let cert = is_posdef(
            &z4,
            &GroupFunction::from_real(&[1.0, 0.5, 0.0, 0.5]),
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::Pd);
        // DFT (2, 1, 0, 1): smallest eigenvalue 0
        assert!(cert.min_eigenvalue.abs() < 1e-12);

        let not_hermitian =
            GroupFunction::new(vec![c(1.0, 0.0), c(0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let cert = is_posdef(&z4, &not_hermitian, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(cert.verdict, Verdict::NotPd);
        assert!((cert.hermitian_residual - 0.1).abs() < 1e-15);
        assert!(is_posdef(&z4, &not_hermitian, -1.0).is_err());
    }

    #[test]
    fn borderline_band() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let f = GroupFunction::from_real(&[1.0, 1.0 + 5e-9]);
        let cert = is_posdef(&z2, &f, 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::Borderline);
    }

    #[test]
    fn reversal_examples() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let a = SubsetMask::from_indices(8, &[1, 5]).unwrap();
        let ainv = SubsetMask::from_indices(8, &[3, 5]).unwrap();
        assert_eq!(
            reversed(&GroupFunction::indicator(&a), &d4).unwrap(),
            GroupFunction::indicator(&ainv)
        );
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let even = GroupFunction::from_real(&[1.0, 0.3, -0.2, -0.2, 0.3]);
        assert_eq!(reversed(&even, &z5).unwrap(), even);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let f = GroupFunction::new(vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let r = reversed(&f, &z3).unwrap();
        assert_eq!(r.values(), &[c(0.0, -0.0), c(0.0, -0.0), c(0.0, -1.0)]);
    }

    #[test]
    fn convolution_examples() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let g = GroupFunction::new((0..8).map(|k| c(k as f64, 1.0 - k as f64)).collect());
        assert_eq!(
            convolution(&d4, &GroupFunction::delta(8, 0), &g).unwrap(),
            g
        );

        let a = SubsetMask::from_indices(8, &[0, 1, 4]).unwrap();
        let b = SubsetMask::from_indices(8, &[1, 2, 6, 7]).unwrap();
        let conv = convolution(
            &d4,
            &GroupFunction::indicator(&a),
            &GroupFunction::indicator(&b),
        )
        .unwrap();
        for x in 0..8 {
            // |A ∩ x B^{-1}|
            let count = (0..8)
                .filter(|&y| a.contains(y) && b.contains(d4.mul(d4.inv(y), x)))
                .count();
            let direct = b
                .indices()
                .iter()
                .filter(|&&bb| a.contains(d4.mul(x, d4.inv(bb))))
                .count();
            assert_eq!(count, direct);
            assert_eq!(conv.at(x), c(count as f64, 0.0));
        }

        let f = GroupFunction::delta(8, 1);
        let h = GroupFunction::delta(8, 4);
        let fg = convolution(&d4, &f, &h).unwrap();
        let gf = convolution(&d4, &h, &f).unwrap();
        assert_ne!(fg, gf);
    }

    #[test]
    fn conv_square_examples() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let v = SubsetMask::from_indices(8, &[0, 1, 4]).unwrap();
        let f = conv_square(&d4, &GroupFunction::indicator(&v)).unwrap();
        for x in 0..8 {
            // |V ∩ xV|
            let count = (0..8)
                .filter(|&y| v.contains(y) && v.contains(d4.mul(d4.inv(x), y)))
                .count();
            assert_eq!(f.at(x), c(count as f64, 0.0));
        }
        assert_eq!(f.at(0), c(3.0, 0.0));
        assert_eq!(
            conv_square(&d4, &GroupFunction::delta(8, 0)).unwrap(),
            GroupFunction::delta(8, 0)
        );
        assert!(is_posdef(&d4, &f, DEFAULT_TOLERANCE).unwrap().is_pd());
    }

    #[test]
    fn schur_and_conic() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let f = GroupFunction::from_real(&[1.0, 0.5, 0.0, 0.5]);
        let one = GroupFunction::constant(4, c(1.0, 0.0));
        assert_eq!(schur_product(&f, &one).unwrap(), f);
        let two_f = conic_combination(1.0, &f, 1.0, &f).unwrap();
        assert_eq!(two_f, f.scale(c(2.0, 0.0)));
        let ev1 = eigh(&group_matrix(&z4, &f).unwrap()).unwrap().values;
        let ev2 = eigh(&group_matrix(&z4, &two_f).unwrap()).unwrap().values;
        for (a, b) in ev1.iter().zip(&ev2) {
            assert!((2.0 * a - b).abs() < 1e-12);
        }
        assert!(conic_combination(0.0, &f, 1.0, &f).is_err());
        assert!(conic_combination(1.0, &f, -1.0, &f).is_err());
    }

    #[test]
    fn restriction_and_extension() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let ones = GroupFunction::constant(6, c(1.0, 0.0));
        let rotations = s3.generated_subgroup(3);
        let (sub, r) = restrict_to_subgroup(&s3, &ones, &rotations).unwrap();
        assert_eq!(sub.order(), 3);
        assert!(r.values().iter().all(|&v| v == c(1.0, 0.0)));
        assert!(restrict_to_subgroup(&s3, &ones, &[0, 1, 3]).is_err());

        let h = GroupFunction::constant(2, c(1.0, 0.0));
        let ext = trivial_extension(&s3, &[0, 1], &h).unwrap();
        assert_eq!(
            ext,
            GroupFunction::indicator(&SubsetMask::from_indices(6, &[0, 1]).unwrap())
        );
        assert!(is_posdef(&s3, &ext, DEFAULT_TOLERANCE).unwrap().is_pd());
        let delta = trivial_extension(&s3, &[0], &GroupFunction::delta(1, 0)).unwrap();
        assert_eq!(delta, GroupFunction::delta(6, 0));
        let bad = GroupFunction::from_real(&[1.0, 2.0]);
        assert!(matches!(
            trivial_extension(&s3, &[0, 1], &bad),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn restriction_to_rotations_has_nonnegative_dft() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let v = SubsetMask::from_indices(8, &[0, 1, 5]).unwrap();
        let f = conv_square(&d4, &GroupFunction::indicator(&v)).unwrap();
        let (_, r) = restrict_to_subgroup(&d4, &f, &d4.generated_subgroup(1)).unwrap();
        for k in 0..4 {
            let s: Complex64 = (0..4)
                .map(|n| {
                    r.at(n)
                        * Complex64::from_polar(1.0, -std::f64::consts::TAU * (n * k) as f64 / 4.0)
                })
                .sum();
            assert!(s.re >= -1e-12 && s.im.abs() < 1e-12);
        }
    }

    #[test]
    fn derived_function_examples() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let f = conv_square(
            &d4,
            &GroupFunction::indicator(&SubsetMask::from_indices(8, &[0, 2, 5]).unwrap()),
        )
        .unwrap();
        assert_eq!(derived_function(&d4, &f, &[0], &[c(1.0, 0.0)]).unwrap(), f);
        let g = 5;
        let conj = derived_function(&d4, &f, &[g], &[c(1.0, 0.0)]).unwrap();
        for x in 0..8 {
            assert_eq!(conj.at(x), f.at(d4.mul(d4.mul(d4.inv(g), x), g)));
        }
        let big = derived_function(
            &d4,
            &GroupFunction::delta(8, 0),
            &[0, 1],
            &[c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert_eq!(big.support(0.0).indices(), vec![0, 1, 3]);
        assert_eq!(big.at(0), c(2.0, 0.0));
        assert!(is_posdef(&d4, &big, DEFAULT_TOLERANCE).unwrap().is_pd());
        assert!(derived_function(&d4, &f, &[0, 1], &[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn json_schema() {
        let f = GroupFunction::new(vec![c(1.0, 0.0), c(0.5, -0.25)]);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"group_order":2,"values":[[1.0,0.0],[0.5,-0.25]]}"#
        );
        let back: GroupFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(
            serde_json::from_str::<GroupFunction>(r#"{"group_order":3,"values":[[1,0]]}"#).is_err()
        );
    }
}
