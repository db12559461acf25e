mod common;

use common::*;
use gbundle::linalg::{self, cokernel_invariants, kernel_rank, smith_normal_form, IntMatrix};
use gbundle::FgAbelianGroup;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    // product of elementary transvections
    let mut m = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        if n == 0 || i % n == j % n {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i % n, j % n, BigInt::from(k));
        m = &e * &m;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_recomposes(a in arb_matrix(6)) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.u * &a) * &snf.v, snf.s.clone());
        prop_assert!(snf.u.determinant().unwrap().abs() == BigInt::from(1));
        prop_assert!(snf.v.determinant().unwrap().abs() == BigInt::from(1));
        // diagonal only
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
        prop_assert_eq!(nonzero, snf.rank);
        prop_assert!(diag[nonzero..].iter().all(Zero::is_zero));
        for w in diag[..nonzero].windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn rank_nullity(a in arb_matrix(6)) {
        prop_assert_eq!(kernel_rank(&a) + smith_normal_form(&a).rank, a.cols());
        let k = linalg::kernel_basis(&a);
        prop_assert!((&a * &k).is_zero());
    }

    #[test]
    fn cokernel_is_unimodular_invariant(
        a in arb_matrix(5),
        left in prop::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..6),
        right in prop::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..6),
        swap in (0usize..8, 0usize..8),
    ) {
        let base = cokernel_invariants(&a);
        let p = unimodular(a.rows(), &left);
        let q = unimodular(a.cols(), &right);
        prop_assert_eq!(cokernel_invariants(&(&(&p * &a) * &q)), base.clone());
        // permutation of rows and columns through transpose of a swapped identity
        if a.rows() > 0 && a.cols() > 0 {
            let mut pr = IntMatrix::identity(a.rows());
            let (i, j) = (swap.0 % a.rows(), swap.1 % a.rows());
            if i != j {
                pr.set(i, i, BigInt::from(0)); pr.set(j, j, BigInt::from(0));
                pr.set(i, j, BigInt::from(1)); pr.set(j, i, BigInt::from(1));
            }
            prop_assert_eq!(cokernel_invariants(&(&pr * &a)), base);
        }
    }

    #[test]
    fn canonical_form_is_stable(orders in prop::collection::vec(0u64..40, 0..6), extra in 0usize..3) {
        let grp = g(extra, &orders);
        let big: Vec<BigInt> = grp.invariant_factors().iter().map(|d| BigInt::from(d.clone())).collect();
        let again = FgAbelianGroup::canonicalize(&big, big.len() + grp.free_rank()).unwrap();
        prop_assert_eq!(&again, &grp);
        let f = factors(&grp);
        prop_assert!(f.iter().all(|&d| d >= 2));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        // the order is preserved by merging
        let product: u64 = orders.iter().filter(|&&d| d > 0).product();
        if grp.is_finite() {
            prop_assert_eq!(f.iter().product::<u64>(), product);
        }
        // cross-check against SNF of the diagonal presentation
        let diag: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        let n = orders.len();
        let snf_group = cokernel_invariants(&IntMatrix::diagonal(n + extra, n, &diag));
        prop_assert_eq!(snf_group, grp);
    }

    #[test]
    fn direct_sum_laws(a in arb_small_group(), b in arb_small_group(), c in arb_small_group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&FgAbelianGroup::trivial()), a);
    }

    #[test]
    fn hom_and_ext_match_matrix_oracles(a in arb_small_group(), b in arb_small_group()) {
        prop_assert_eq!(a.hom_group(&b), matrix_hom(&a, &b));
        prop_assert_eq!(a.ext_group(&b), matrix_ext(&a, &b));
        // Ext(Z/d, B) = B/dB, summed over the torsion of A
        let via_quotients = factors(&a).iter().fold(FgAbelianGroup::trivial(), |acc, &d| {
            acc.direct_sum(&b.quotient_by_integer(d as i64).unwrap())
        });
        prop_assert_eq!(a.ext_group(&b), via_quotients);
    }
}

#[test]
fn hom_brute_force_exhaustive() {
    let groups = small_finite_groups();
    assert!(groups.len() > 20);
    for a in &groups {
        for b in &groups {
            let hom = a.hom_group(b);
            let (fa, fb) = (factors(a), factors(b));
            // |Hom[n]| for all n up to the exponent bound determines the group
            for n in 1..=64 {
                assert_eq!(
                    torsion_count(&hom, n),
                    brute_hom_torsion_count(&fa, &fb, n),
                    "Hom({a}, {b})[{n}]"
                );
            }
            assert_eq!(matrix_ext(a, b), a.ext_group(b), "Ext({a}, {b})");
        }
    }
}

#[test]
fn hom_z4_z6_by_enumeration() {
    // images of the generator of Z/4 in Z/6 killed by 4
    let count = (0u64..6).filter(|x| (4 * x) % 6 == 0).count();
    assert_eq!(count, 2);
    assert_eq!(g(0, &[4]).hom_group(&g(0, &[6])), g(0, &[2]));
}

#[test]
fn enumeration_matches_cardinality() {
    for a in small_finite_groups() {
        let elems = a.enumerate_elements().unwrap();
        assert_eq!(gbundle::Cardinality::Finite(elems.len().into()), a.cardinality());
        assert!(elems[0].iter().all(|&x| x == 0));
    }
}

#[test]
fn quotient_oracles() {
    // (Z/3)/2(Z/3): doubling is invertible mod 3
    assert!((0u64..3).map(|x| (2 * x) % 3).collect::<std::collections::HashSet<_>>().len() == 3);
    assert!(g(0, &[3]).quotient_by_integer(2).unwrap().is_trivial());
    // image of doubling in Z/4 is {0,2}, quotient of order 2
    assert_eq!(g(0, &[4]).quotient_by_integer(2).unwrap(), g(0, &[2]));
}

#[test]
fn hom_counts_as_sizes() {
    // |Hom(A, B)| equals the brute count for finite groups
    for a in small_finite_groups() {
        for b in small_finite_groups().into_iter().take(12) {
            let count = brute_hom_torsion_count(&factors(&a), &factors(&b), 0);
            assert_eq!(gbundle::Cardinality::Finite(count.into()), a.hom_group(&b).cardinality());
        }
    }
}
