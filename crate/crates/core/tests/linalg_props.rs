use cf_core::linalg::{
    eigh, lp_solve, poly_from_roots, poly_roots, psd_project, HermitianMatrix, LpProblem, LpStatus,
    Relation,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = HermitianMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
        for j in i + 1..n {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    m
}

/// Best objective over all feasible intersections of two boundary lines.
fn vertex_oracle(p: &LpProblem) -> Option<f64> {
    let mut lines: Vec<([f64; 2], f64)> = p
        .constraints
        .iter()
        .map(|c| ([c.coeffs[0], c.coeffs[1]], c.rhs))
        .collect();
    for (j, &(lo, hi)) in p.bounds.iter().enumerate() {
        let mut e = [0.0; 2];
        e[j] = 1.0;
        lines.push((e, lo));
        lines.push((e, hi));
    }
    let mut best: Option<f64> = None;
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            let ([a1, a2], r1) = lines[a];
            let ([b1, b2], r2) = lines[b];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = [(r1 * b2 - a2 * r2) / det, (a1 * r2 - r1 * b1) / det];
            if p.max_violation(&x) <= 1e-9 {
                let v = p.objective[0] * x[0] + p.objective[1] * x[1];
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
    }
    best
}

fn random_lp(seed: u64, vars: usize) -> LpProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objective: Vec<f64> = (0..vars).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let bounds = (0..vars)
        .map(|_| {
            let lo = rng.gen_range(-3.0..0.0);
            (lo, lo + rng.gen_range(0.5..5.0))
        })
        .collect();
    let mut p = LpProblem::new(objective).with_bounds(bounds);
    for _ in 0..rng.gen_range(0..=4) {
        let coeffs: Vec<f64> = (0..vars).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let relation = if rng.gen_bool(0.5) {
            Relation::Le
        } else {
            Relation::Ge
        };
        p.constrain(coeffs, relation, rng.gen_range(-2.0..2.0));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigh_reconstructs(n in 1usize..=64, seed in any::<u64>()) {
        let m = random_hermitian(n, seed);
        let e = eigh(&m).unwrap();
        let err = e.reconstruct().distance(&m);
        prop_assert!(err <= 1e-7 * m.frobenius_norm().max(1e-300), "{err:e}");
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn psd_projection_is_idempotent(n in 1usize..=24, seed in any::<u64>()) {
        let m = random_hermitian(n, seed);
        let p = psd_project(&m).unwrap();
        let norm = m.frobenius_norm();
        prop_assert!(eigh(&p).unwrap().min_value() >= -1e-10 * norm);
        prop_assert!(psd_project(&p).unwrap().distance(&p) <= 1e-8 * norm.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lp_matches_vertex_enumeration(seed in any::<u64>(), two in any::<bool>()) {
        let vars = if two { 2 } else { 1 };
        let mut p = random_lp(seed, vars);
        if vars == 1 {
            // embed as a 2-variable problem with a pinned second coordinate
            p.objective.push(0.0);
            p.bounds.push((0.0, 0.0));
            for c in &mut p.constraints {
                c.coeffs.push(0.0);
            }
        }
        let s = lp_solve(&p).unwrap();
        match vertex_oracle(&p) {
            Some(v) => {
                prop_assert_eq!(s.status, LpStatus::Optimal);
                prop_assert!((s.value - v).abs() <= 1e-5, "{} vs {}", s.value, v);
                prop_assert!(s.max_violation <= 1e-10);
            }
            None => prop_assert_eq!(s.status, LpStatus::Infeasible),
        }
    }

    #[test]
    fn roots_reconstruct_coefficients(deg in 1usize..=30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs: Vec<Complex64> = (0..=deg)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if coeffs[deg].norm() < 0.1 {
            coeffs[deg] = Complex64::new(1.0, 0.0);
        }
        let roots = poly_roots(&coeffs).unwrap();
        prop_assert_eq!(roots.len(), deg);
        let back = poly_from_roots(coeffs[deg], &roots);
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let err = back.iter().zip(&coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-6 * scale, "degree {}: {:e}", deg, err);
    }
}
