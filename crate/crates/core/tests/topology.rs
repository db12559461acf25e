mod common;

use common::*;
use gbundle::homology::{cohomology_direct, cohomology_uct, integral_homology};
use gbundle::oracle::{h1_hom_counting, uct_vs_direct};
use gbundle::{build_standard, CwComplex2, FgAbelianGroup, StandardSpace};
use proptest::prelude::*;

fn builders() -> Vec<StandardSpace> {
    let mut v = vec![StandardSpace::Sphere];
    v.extend((0..=4).map(|genus| StandardSpace::Orientable { genus }));
    v.extend((1..=4).map(|crosscaps| StandardSpace::NonOrientable { crosscaps }));
    v.extend((0..=4).map(|circles| StandardSpace::Wedge { circles }));
    v
}

fn coefficient_groups() -> Vec<FgAbelianGroup> {
    vec![g(1, &[]), g(0, &[2]), g(0, &[3]), g(0, &[4]), g(0, &[6]), g(2, &[]), g(1, &[2])]
}

#[test]
fn builders_are_valid_and_boundaries_compose() {
    for space in builders() {
        let m = build_standard(space).unwrap();
        m.validate().unwrap();
        let b = m.boundary_matrices().unwrap();
        assert!((&b.d1 * &b.d2).is_zero(), "{space}");
    }
}

#[test]
fn euler_characteristics() {
    for k in 0..=6u32 {
        let orient = build_standard(StandardSpace::Orientable { genus: k }).unwrap();
        assert_eq!(orient.euler_characteristic().unwrap(), 2 - 2 * k as i64);
        if k >= 1 {
            let non = build_standard(StandardSpace::NonOrientable { crosscaps: k }).unwrap();
            assert_eq!(non.euler_characteristic().unwrap(), 2 - k as i64);
        }
    }
}

#[test]
fn uct_equals_direct_on_grid() {
    for space in builders() {
        let m = build_standard(space).unwrap();
        for pi in coefficient_groups() {
            for n in 0..=3 {
                let uct = cohomology_uct(&m, &pi, n).unwrap().group;
                let direct = cohomology_direct(&m, &pi, n).unwrap().group;
                assert_eq!(uct, direct, "H^{n}({space}; {pi})");
            }
            // H⁰ ≅ π and H³ = 0
            assert_eq!(cohomology_uct(&m, &pi, 0).unwrap().group, pi);
            assert!(cohomology_uct(&m, &pi, 3).unwrap().group.is_trivial());
        }
    }
}

#[test]
fn genus_g_first_cohomology_is_free_power() {
    // Hom(Z^{2g}, Z/m) = (Z/m)^{2g}
    for genus in 1..=3u32 {
        let m = build_standard(StandardSpace::Orientable { genus }).unwrap();
        for modulus in [2u64, 3, 5, 6] {
            let expected = g(0, &vec![modulus; 2 * genus as usize]);
            assert_eq!(cohomology_uct(&m, &g(0, &[modulus]), 1).unwrap().group, expected);
        }
    }
}

#[test]
fn subdivided_surfaces_agree_with_one_vertex_models() {
    let pairs = [
        (two_vertex_torus(), StandardSpace::Orientable { genus: 1 }),
        (two_vertex_klein(), StandardSpace::NonOrientable { crosscaps: 2 }),
    ];
    for (fine, space) in pairs {
        let coarse = build_standard(space).unwrap();
        assert_eq!(integral_homology(&fine).unwrap(), integral_homology(&coarse).unwrap(), "{space}");
        for pi in coefficient_groups() {
            for n in 0..=3 {
                assert_eq!(
                    cohomology_uct(&fine, &pi, n).unwrap().group,
                    cohomology_uct(&coarse, &pi, n).unwrap().group
                );
                assert_eq!(
                    cohomology_direct(&fine, &pi, n).unwrap().group,
                    cohomology_uct(&coarse, &pi, n).unwrap().group
                );
            }
        }
        assert_eq!(
            fine.fundamental_group_presentation().unwrap().abelianization(),
            coarse.fundamental_group_presentation().unwrap().abelianization()
        );
    }
}

fn reversed(m: &CwComplex2) -> CwComplex2 {
    let mut r = m.clone();
    r.edges.reverse();
    r.vertices.reverse();
    r
}

#[test]
fn hom_counting_ignores_tree_choice() {
    for m in [two_vertex_torus(), two_vertex_klein()] {
        for target in [g(0, &[2]), g(0, &[3]), g(0, &[2, 2])] {
            let a = h1_hom_counting(&m, &target).unwrap();
            let b = h1_hom_counting(&reversed(&m), &target).unwrap();
            assert!(a.agreement && b.agreement);
            assert_eq!(a.oracle_value, b.oracle_value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn random_complexes_are_chain_complexes(m in arb_complex()) {
        prop_assert!(m.validate().is_ok(), "{:?}", m.validate());
        let b = m.boundary_matrices().unwrap();
        prop_assert!((&b.d1 * &b.d2).is_zero());
        prop_assert_eq!(integral_homology(&m).unwrap().h0, g(1, &[]));
    }

    #[test]
    fn abelianized_pi1_is_h1(m in arb_complex()) {
        let p = m.fundamental_group_presentation().unwrap();
        prop_assert!(p.is_well_formed());
        prop_assert_eq!(p.abelianization(), integral_homology(&m).unwrap().h1);
        prop_assert_eq!(
            reversed(&m).fundamental_group_presentation().unwrap().abelianization(),
            integral_homology(&m).unwrap().h1
        );
    }

    #[test]
    fn h1_via_cokernel_of_d2(m in arb_complex()) {
        // coker ∂₂ ≅ H₁ ⊕ im ∂₁ with im ∂₁ free of rank = rank ∂₁
        let b = m.boundary_matrices().unwrap();
        let coker = gbundle::linalg::cokernel_invariants(&b.d2);
        let rank_d1 = b.d1.cols() - gbundle::linalg::kernel_rank(&b.d1);
        let h1 = integral_homology(&m).unwrap().h1;
        prop_assert_eq!(coker.invariant_factors(), h1.invariant_factors());
        prop_assert_eq!(coker.free_rank(), h1.free_rank() + rank_d1);
    }

    #[test]
    fn two_routes_agree_on_random_complexes(m in arb_complex(), pi in arb_small_group()) {
        for r in uct_vs_direct(&m, &pi).unwrap() {
            prop_assert!(r.agreement, "{}: {} vs {}", r.subject, r.engine_value, r.oracle_value);
        }
    }

    #[test]
    fn additive_in_coefficients(m in arb_complex(), a in arb_small_group(), b in arb_small_group(), n in 0u32..=3) {
        let sum = cohomology_uct(&m, &a.direct_sum(&b), n).unwrap().group;
        let parts = cohomology_uct(&m, &a, n).unwrap().group
            .direct_sum(&cohomology_uct(&m, &b, n).unwrap().group);
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn hom_count_matches_h1(m in arb_complex(), modulus in prop::sample::select(vec![2u64, 3, 4])) {
        let target = g(0, &[modulus]);
        if let Ok(r) = h1_hom_counting(&m, &target) {
            prop_assert!(r.agreement, "{} vs {}", r.engine_value, r.oracle_value);
        }
    }
}
