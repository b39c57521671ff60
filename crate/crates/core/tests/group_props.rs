use cf_core::group::{check_cf_condition, conj_invariant_core, support_trace, symmetrize};
use cf_core::{CyclicTrace, FiniteGroup, GroupDescriptor, SubsetMask};
use proptest::prelude::*;

fn descriptor() -> impl Strategy<Value = GroupDescriptor> {
    let leaf = prop_oneof![
        (1usize..=12).prop_map(GroupDescriptor::Cyclic),
        (1usize..=6).prop_map(GroupDescriptor::Dihedral),
        Just(GroupDescriptor::Quaternion),
        (1usize..=4).prop_map(GroupDescriptor::Symmetric),
    ];
    prop_oneof![
        3 => leaf.clone(),
        1 => ((1usize..=4).prop_map(GroupDescriptor::Cyclic), leaf)
            .prop_map(|(a, b)| GroupDescriptor::Product(Box::new(a), Box::new(b))),
    ]
}

/// A group, an element and a subset (as raw membership bits, identity added).
fn instance() -> impl Strategy<Value = (FiniteGroup, usize, SubsetMask)> {
    descriptor().prop_flat_map(|d| {
        let g = FiniteGroup::make(&d).unwrap();
        let n = g.order();
        (Just(g), 0..n, proptest::collection::vec(any::<bool>(), n)).prop_map(|(g, z, mut bits)| {
            bits[g.identity()] = true;
            (g, z, SubsetMask::from_members(bits))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn powers_cycle_with_the_element_order((g, z, _s) in instance()) {
        let m = g.element_order(z);
        let powers = g.generated_subgroup(z);
        prop_assert_eq!(powers.len(), m);
        prop_assert_eq!(g.pow(z, m as i64), g.identity());
        for k in 1..m as i64 {
            prop_assert_ne!(g.pow(z, k), g.identity());
            prop_assert_eq!(g.pow(z, k + m as i64), g.pow(z, k));
            prop_assert_eq!(g.pow(z, -k), g.inv(g.pow(z, k)));
        }
    }

    #[test]
    fn traces_of_symmetrized_sets_are_symmetric((g, z, s) in instance()) {
        let sym = symmetrize(&g, &s).unwrap();
        prop_assert!(sym.mask.is_symmetric(&g));
        prop_assert!(sym.mask.is_subset_of(&s));
        let h = support_trace(&g, &sym.mask, z).unwrap();
        prop_assert!(h.is_symmetric());
        prop_assert!(h.contains(0));
        prop_assert_eq!(h.modulus(), g.element_order(z));
    }

    #[test]
    fn invariant_core_is_conjugation_invariant((g, z, s) in instance()) {
        let v = conj_invariant_core(&g, &s, z).unwrap();
        prop_assert!(v.is_subset_of(&s));
        let image: Vec<bool> = (0..g.order())
            .map(|x| v.contains(g.conjugate(g.inv(z), x)))
            .collect();
        prop_assert_eq!(image.as_slice(), v.members());
    }

    #[test]
    fn cf_condition_iff_window((g, z, s) in instance()) {
        let omega = symmetrize(&g, &s).unwrap().mask;
        let h = support_trace(&g, &omega, z).unwrap();
        let m = h.modulus();
        let windows: Vec<usize> = (0..m).filter(|&n| CyclicTrace::window(m, n) == h).collect();
        match check_cf_condition(&g, &omega, z).unwrap() {
            Some(n) => prop_assert!(windows.contains(&n)),
            None => prop_assert!(windows.is_empty()),
        }
    }
}
