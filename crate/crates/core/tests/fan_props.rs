use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropcsm::bergman::{bergman_fan, sample_interior, support_contains_int};
use tropcsm::csm::{psi_polynomial, random_unimodular};
use tropcsm::matroid::{fano, graphic, small_matroid_suite, uniform, Matroid};
use tropcsm::polyfan::{primitive, recession_cycle, stable_intersection, Cone};
use tropcsm::{PolyhedralCycle, WeightedFan};

fn k4() -> Matroid {
    graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// All integer points of `[-b, b]^n`.
fn grid(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p: Vec<i64>| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn primitive_examples() {
    assert_eq!(primitive(&[2, 4]).unwrap(), vec![1, 2]);
    assert_eq!(primitive(&[-3, 6, -9]).unwrap(), vec![-1, 2, -3]);
    assert!(primitive(&[0, 0]).is_err());
}

#[test]
fn bergman_fans_are_balanced() {
    for (name, m) in small_matroid_suite() {
        assert!(bergman_fan(&m).is_balanced().balanced, "{name}");
    }
}

#[test]
fn psi_of_bergman_fan_is_reduced_characteristic_polynomial() {
    for (name, m) in small_matroid_suite() {
        if m.has_loops() || m.n() > 6 {
            continue;
        }
        let reduced = m.reduced_characteristic_polynomial().unwrap();
        assert_eq!(psi_polynomial(&bergman_fan(&m)).unwrap(), reduced, "{name}");
    }
}

#[test]
fn circuit_criterion_matches_cones_on_a_grid() {
    for m in [uniform(2, 3), uniform(3, 4), uniform(2, 5), k4()] {
        let fan = bergman_fan(&m);
        for x in grid(m.n() - 1, 2) {
            assert_eq!(support_contains_int(&m, &x).unwrap(), fan.support_contains(&x), "{x:?}");
        }
    }
}

#[test]
fn sampled_interior_points_lie_in_the_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [fano(), k4(), uniform(3, 5)] {
        let fan = bergman_fan(&m);
        for (cone, _) in fan.weighted_cones() {
            for _ in 0..20 {
                let x = sample_interior(cone, &mut rng, 5);
                assert!(cone.relative_interior_contains(&x));
                assert!(support_contains_int(&m, &x).unwrap());
            }
        }
    }
}

#[test]
fn intersecting_with_the_whole_space_is_the_identity() {
    let b = bergman_fan(&uniform(3, 5));
    assert_eq!(stable_intersection(&b, &WeightedFan::full_space(4)).unwrap(), b);
}

#[test]
fn self_intersection_of_a_plane_is_its_truncation() {
    let b = bergman_fan(&uniform(3, 4));
    assert_eq!(stable_intersection(&b, &b).unwrap(), bergman_fan(&uniform(2, 4)));
}

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fp_dimension_is_unimodular_invariant(seed in any::<u64>()) {
        let b = bergman_fan(&uniform(3, 5));
        let u = random_unimodular(4, &mut ChaCha8Rng::seed_from_u64(seed));
        let moved = b.map_linear(&u).unwrap();
        for p in 0..=b.dim() {
            prop_assert_eq!(moved.fp_dimension(p), b.fp_dimension(p));
        }
    }

    #[test]
    fn stable_intersection_is_commutative_and_balanced(seed in any::<u64>()) {
        let a = bergman_fan(&uniform(3, 4));
        let u = random_unimodular(3, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = bergman_fan(&uniform(3, 4)).map_linear(&u).unwrap();
        let ab = stable_intersection(&a, &b).unwrap();
        let ba = stable_intersection(&b, &a).unwrap();
        prop_assert!(ab.is_balanced().balanced);
        prop_assert_eq!(ab.without_zero_weights(), ba.without_zero_weights());
    }

    #[test]
    fn recession_of_a_translate_is_the_fan(p in prop::collection::vec(-20i64..20, 4), q in 1i64..7) {
        let b = bergman_fan(&k4().contract(0).unwrap().matroid);
        let shift: Vec<BigRational> = p.iter().map(|&x| rational(x, q)).collect();
        let cycle = PolyhedralCycle::from_fan(&b).translate(&shift);
        prop_assert_eq!(recession_cycle(&cycle).unwrap(), b);
    }

    #[test]
    fn cone_membership_agrees_with_generators(a in 0i64..5, b in 0i64..5, c in -3i64..3) {
        let cone = Cone::new(3, vec![vec![1, 0, 0], vec![0, 1, 0]], vec![vec![1, 1, 1]]).unwrap();
        let x = vec![a + c, b + c, c];
        prop_assert!(cone.contains(&x));
        prop_assert_eq!(cone.relative_interior_contains(&x), a > 0 && b > 0);
    }
}
