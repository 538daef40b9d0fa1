mod common;

use common::*;
use milnor_zeta_core::zeta::zeta_holomorphic;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn boundary_geometry_matches_oracles((n, terms) in convenient_terms(3, false)) {
        if let Err(msg) = check_geometry(n, &terms) {
            prop_assert!(false, "{}", msg);
        }
    }

    #[test]
    fn pulled_back_faces_stay_strongly_polar(
        (n, terms) in convenient_terms(3, true),
        b in 0u32..3,
        gap in 1u32..3,
        seed in any::<u64>(),
    ) {
        if let Err(msg) = check_propagation(n, &terms, b + gap, b, seed) {
            prop_assert!(false, "{}", msg);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn zeta_is_invariant_under_variable_permutation(
        (n, terms) in convenient_terms(3, true),
        rot in 0usize..3,
    ) {
        let f = build(n, &terms);
        let perm: Vec<usize> = (0..n).map(|j| (j + rot) % n).collect();
        let g = f.permute(&perm).unwrap();
        prop_assert_eq!(zeta_holomorphic(&f).unwrap(), zeta_holomorphic(&g).unwrap());
    }

    #[test]
    fn zeta_degree_is_minus_euler_characteristic(
        (n, terms) in convenient_terms(3, true),
    ) {
        use milnor_zeta_core::zeta::{chi_fiber, contributions_holomorphic};
        let f = build(n, &terms);
        let contribs = contributions_holomorphic(&f).unwrap();
        let z = zeta_holomorphic(&f).unwrap();
        prop_assert_eq!(z.degree(), -chi_fiber(&contribs));
    }
}
