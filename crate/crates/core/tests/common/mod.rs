#![allow(dead_code)]

use cf_core::posdef::conv_square;
use cf_core::{FiniteGroup, GroupFunction};
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ℤ₆, S₃, D₄, Q₈.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z6", FiniteGroup::cyclic(6).unwrap()),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("D4", FiniteGroup::dihedral(4).unwrap()),
        ("Q8", FiniteGroup::quaternion()),
    ]
}

/// Distinct cyclic subgroups, sorted.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for z in 0..g.order() {
        let mut h = g.generated_subgroup(z);
        h.sort_unstable();
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `h ⋆ h̃` for a random, partly sparse `h`, scaled to `f(e) = 1`; one time
/// in four the rank-deficient indicator of a random cyclic subgroup.
pub fn random_pd(g: &FiniteGroup, rng: &mut impl Rng, real: bool) -> GroupFunction {
    if rng.gen_bool(0.25) {
        let subs = cyclic_subgroups(g);
        let h = &subs[rng.gen_range(0..subs.len())];
        let mut f = GroupFunction::zeros(g.order());
        h.iter().for_each(|&x| f.set(x, c(1.0, 0.0)));
        return f;
    }
    let density = rng.gen_range(0.2..1.0);
    let mut h: Vec<Complex64> = (0..g.order())
        .map(|_| {
            if rng.gen_bool(density) {
                let v = random_complex(rng);
                if real {
                    c(v.re, 0.0)
                } else {
                    v
                }
            } else {
                c(0.0, 0.0)
            }
        })
        .collect();
    h[g.identity()] += c(0.5, 0.0);
    let f = conv_square(g, &GroupFunction::new(h)).unwrap();
    let mut f = f.scale(c(1.0 / f.at(g.identity()).re, 0.0));
    if real {
        for v in f.values_mut() {
            v.im = 0.0;
        }
    }
    f
}

/// `|f(x)| <= f(e)` and `f(x^{-1}) = conj f(x)`, both up to `tol · f(e)`.
pub fn bounded_and_hermitian(g: &FiniteGroup, f: &GroupFunction, tol: f64) -> Result<(), String> {
    let fe = f.at(g.identity());
    if fe.im.abs() > tol * fe.re.abs().max(1.0) || fe.re < -tol {
        return Err(format!("f(e) = {fe}"));
    }
    for x in 0..g.order() {
        if f.at(x).norm() > fe.re * (1.0 + tol) + tol {
            return Err(format!("|f({x})| = {} > f(e) = {}", f.at(x).norm(), fe.re));
        }
        let d = (f.at(x) - f.at(g.inv(x)).conj()).norm();
        if d > tol * fe.re.max(1.0) {
            return Err(format!("f({x}) differs from conj f(x^-1) by {d:e}"));
        }
    }
    Ok(())
}
