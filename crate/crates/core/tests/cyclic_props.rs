use cf_core::cyclic::{dft, solve_cf_m, solve_cf_z, solve_k_m, WindowSupport};
use cf_core::group_solver::{solve, ExtremalProblem};
use cf_core::{CyclicTrace, Field, FiniteGroup, SubsetMask};
use proptest::prelude::*;

/// Symmetric trace on `Z_m` containing 0, from bits for `1..=m/2`.
fn trace() -> impl Strategy<Value = CyclicTrace> {
    (2usize..=16).prop_flat_map(|m| {
        proptest::collection::vec(any::<bool>(), m / 2).prop_map(move |bits| {
            let mut members = vec![false; m];
            members[0] = true;
            for (i, &b) in bits.iter().enumerate() {
                let k = i + 1;
                members[k] = b;
                members[m - k] = b;
            }
            CyclicTrace::from_members(members).unwrap()
        })
    })
}

/// `h` with one more symmetric pair, when there is room.
fn enlarged(h: &CyclicTrace, pick: usize) -> CyclicTrace {
    let m = h.modulus();
    let mut members = h.members().to_vec();
    let missing: Vec<usize> = (1..=m / 2).filter(|&k| !members[k]).collect();
    if let Some(&k) = missing.get(pick % missing.len().max(1)) {
        members[k] = true;
        members[m - k] = true;
    }
    CyclicTrace::from_members(members).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_witnesses_are_feasible(h in trace()) {
        let m = h.modulus();
        for sol in [solve_cf_m(m, &h, 1).unwrap(), solve_k_m(m, &h, 1).unwrap()] {
            prop_assert!((sol.witness[0].re - 1.0).abs() <= 1e-9 && sol.witness[0].im.abs() <= 1e-9);
            for k in 0..m {
                if !h.contains(k as i64) {
                    prop_assert!(sol.witness[k].norm() <= 1e-9, "φ({k}) = {}", sol.witness[k]);
                }
            }
            let min = dft(&sol.witness).iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
            prop_assert!(min >= -1e-8, "transform reaches {min:e}");
            prop_assert!(sol.value >= -1e-12 && sol.value <= 1.0 + 1e-9);
            if h.is_full() {
                prop_assert!((sol.value - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn real_value_never_exceeds_complex(h in trace()) {
        let m = h.modulus();
        let k = solve_k_m(m, &h, 1).unwrap().value;
        let cf = solve_cf_m(m, &h, 1).unwrap().value;
        prop_assert!(k <= cf + 1e-6, "K = {k}, CF = {cf}");
    }

    #[test]
    fn values_grow_with_the_trace(h in trace(), pick in any::<usize>()) {
        let m = h.modulus();
        let big = enlarged(&h, pick);
        prop_assert!(solve_cf_m(m, &h, 1).unwrap().value <= solve_cf_m(m, &big, 1).unwrap().value + 1e-6);
        prop_assert!(solve_k_m(m, &h, 1).unwrap().value <= solve_k_m(m, &big, 1).unwrap().value + 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integer_gram_certificates_hold(n in 1usize..=6, bits in proptest::collection::vec(any::<bool>(), 6), real in any::<bool>()) {
        let mut elements = vec![0i64];
        for k in 1..=n {
            if k == 1 || bits[k - 1] {
                elements.push(k as i64);
                elements.push(-(k as i64));
            }
        }
        let support = WindowSupport::new(n, &elements).unwrap();
        let field = if real { Field::Real } else { Field::Complex };
        let sol = solve_cf_z(n, &support, 1, field).unwrap();
        prop_assert!(sol.min_certificate >= -1e-8, "{:e}", sol.min_certificate);
        prop_assert!(sol.value >= -1e-12 && sol.value <= 1.0 + 1e-9);
        prop_assert!((sol.at(0).re - 1.0).abs() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn group_solver_agrees_on_cyclic_groups(h in trace()) {
        let m = h.modulus();
        let g = FiniteGroup::cyclic(m).unwrap();
        let omega = SubsetMask::from_members(h.members().to_vec());
        let problem = ExtremalProblem::new(g, omega, 1, Field::Complex).unwrap();
        let group = solve(&problem).unwrap().value;
        let lp = solve_cf_m(m, &h, 1).unwrap().value;
        prop_assert!((group - lp).abs() <= 1e-4, "m = {m}: group {group}, LP {lp}");
    }
}
