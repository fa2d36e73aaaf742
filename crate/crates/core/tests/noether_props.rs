use proptest::prelude::*;

use tropcsm::noether::{dual_census_check, noether_check, staircase, NoetherError, UnimodularTriangulation};
use tropcsm::LatticePolytope3;

/// Interior lattice points by brute force over the bounding box.
fn interior_by_enumeration(p: &LatticePolytope3) -> i64 {
    let v = p.vertices();
    let lo: Vec<i64> = (0..3).map(|k| v.iter().map(|x| x[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..3).map(|k| v.iter().map(|x| x[k]).max().unwrap()).collect();
    let mut count = 0;
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                count += i64::from(p.contains_strictly([x, y, z]));
            }
        }
    }
    count
}

fn apply(m: &[[i64; 3]; 3], p: [i64; 3]) -> [i64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|j| m[i][j] * p[j]).sum())
}

#[test]
fn closed_forms_for_simplices_and_boxes() {
    for d in 1..=6 {
        let s = LatticePolytope3::dilated_simplex(d);
        assert_eq!(s.normalized_volume(), d * d * d);
        assert_eq!(s.interior_points(), (1..=3).map(|k| d - k).product::<i64>().max(0) / 6);
        assert_eq!(s.lattice_perimeter(), 6 * d);
        assert_eq!(s.total_facet_area(), 4 * d * d);
    }
    let b = LatticePolytope3::cuboid(2, 3, 4);
    assert_eq!(b.normalized_volume(), 6 * 24);
    assert_eq!(b.interior_points(), 6);
    assert_eq!(b.total_facet_area(), 2 * 2 * (6 + 8 + 12));
    assert_eq!(b.lattice_perimeter(), 4 * 9);
}

#[test]
fn non_unimodular_tetrahedron_is_rejected() {
    let s = LatticePolytope3::dilated_simplex(2);
    let t = UnimodularTriangulation { points: s.vertices().to_vec(), tets: vec![[0, 1, 2, 3]] };
    assert!(matches!(dual_census_check(&s, &t), Err(NoetherError::NotUnimodular { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn boxes_satisfy_both_routes(a in 1i64..5, b in 1i64..5, c in 1i64..5) {
        let p = LatticePolytope3::cuboid(a, b, c);
        let r = noether_check(&p).unwrap();
        prop_assert!(r.holds);
        prop_assert_eq!(r.interior_points, (a - 1) * (b - 1) * (c - 1));
        let census = dual_census_check(&p, &staircase(&p).unwrap()).unwrap();
        prop_assert!(census.holds && census.facet_areas_agree && census.volume_agrees);
        prop_assert_eq!(census.census_value, r.rhs);
    }

    #[test]
    fn identity_is_translation_invariant(d in 1i64..5, t in prop::array::uniform3(-5i64..5)) {
        let p = LatticePolytope3::dilated_simplex(d);
        let moved = p.translated(t);
        prop_assert_eq!(noether_check(&moved).unwrap(), noether_check(&p).unwrap());
        let census = dual_census_check(&moved, &staircase(&moved).unwrap()).unwrap();
        prop_assert!(census.holds);
    }

    #[test]
    fn identity_is_unimodular_invariant(d in 1i64..4, shear in -2i64..3, swap in any::<bool>()) {
        let mut m = [[1, shear, 0], [0, 1, 0], [0, 0, 1]];
        if swap {
            m.swap(0, 2);
        }
        let p = LatticePolytope3::cuboid(d, d + 1, 2);
        let image = LatticePolytope3::hull(&p.vertices().iter().map(|&v| apply(&m, v)).collect::<Vec<_>>()).unwrap();
        let (a, b) = (noether_check(&p).unwrap(), noether_check(&image).unwrap());
        prop_assert!(b.holds);
        prop_assert_eq!((a.lhs, a.normalized_volume, a.total_facet_area, a.lattice_perimeter), (b.lhs, b.normalized_volume, b.total_facet_area, b.lattice_perimeter));
        prop_assert_eq!(b.interior_points, interior_by_enumeration(&image));
    }
}
