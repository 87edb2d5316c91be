//! Property tests for the invariants of the geometry, reflexivity, partition, cone and toric
//! layers.

mod common;

use proptest::prelude::*;
use toric_mirror::arith::{dot_q, frac, QVector, Rational, ZVector};
use toric_mirror::cones::{
    cone_over_polytope, is_almost_reflexive_gorenstein, is_reflexive_gorenstein, PolyhedralCone,
};
use toric_mirror::corpus::{self, reflexive_polygons, vertex_split_partition};
use toric_mirror::nef::{is_q_nef_partition, verify_duality};
use toric_mirror::reflexivity::{
    bullet_dual, circ_dual, classify, is_almost_reflexive, is_q_reflexive,
};
use toric_mirror::toric::{
    divisor_of_polytope, divisor_polytope, emit_ci_equations, emit_generalized_cy, is_qnef,
    monomials_of_divisor, normal_fan,
};
use toric_mirror::{Lattice, RationalPolytope};

fn rational() -> impl Strategy<Value = Rational> {
    (1i64..=3).prop_flat_map(|den| (-5 * den..=5 * den).prop_map(move |num| frac(num, den)))
}

fn point_set(d: usize) -> impl Strategy<Value = Vec<QVector>> {
    prop::collection::vec(prop::collection::vec(rational(), d), d + 1..=d + 5)
}

fn points_with_rank() -> impl Strategy<Value = (usize, Vec<QVector>)> {
    (1usize..=3).prop_flat_map(|d| point_set(d).prop_map(move |pts| (d, pts)))
}

fn integer_points_with_rank() -> impl Strategy<Value = (usize, Vec<QVector>)> {
    (2usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), d + 1..=d + 5).prop_map(
            move |pts| {
                let pts = pts
                    .iter()
                    .map(|p| p.iter().map(|&x| frac(x, 1)).collect())
                    .collect();
                (d, pts)
            },
        )
    })
}

fn hull(pts: &[QVector], d: usize) -> RationalPolytope {
    RationalPolytope::convex_hull(pts, d, Lattice::M).expect("points have the rank")
}

fn any_direction(d: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(rational(), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_dual_is_an_involution((d, pts) in points_with_rank()) {
        let p = hull(&pts, d);
        prop_assume!(p.origin_in_interior());
        let dd = p.polar_dual().unwrap().polar_dual().unwrap();
        prop_assert_eq!(dd, p);
    }

    #[test]
    fn vertices_and_facets_agree((d, pts) in points_with_rank()) {
        let p = hull(&pts, d);
        for v in p.vertices() {
            prop_assert!(p.facets().iter().all(|f| f.contains(v)));
        }
        for x in &pts {
            prop_assert!(p.contains(x));
        }
        if p.is_full_dimensional() {
            for f in p.facets() {
                let tight = p.vertices().iter().filter(|v| f.is_tight(v)).count();
                prop_assert!(tight >= d);
            }
            let halfspaces: Vec<(QVector, Rational)> = p
                .facets()
                .iter()
                .map(|f| (f.normal.iter().map(|x| Rational::from_integer(x.clone())).collect(), f.offset.clone()))
                .collect();
            prop_assert_eq!(RationalPolytope::from_halfspaces(&halfspaces, d, Lattice::M).unwrap(), p);
        }
    }

    #[test]
    fn lattice_points_match_the_scan((d, pts) in points_with_rank()) {
        let p = hull(&pts, d);
        prop_assume!(p.is_full_dimensional());
        let ours: Vec<ZVector> = p.lattice_points().into_iter().map(|x| x.0).collect();
        prop_assert_eq!(ours, common::lattice_points(&pts, d));
    }

    #[test]
    fn minkowski_support_is_additive(
        (d, a) in points_with_rank(),
        seed in any::<u64>(),
    ) {
        let p = hull(&a, d);
        let q = corpus::random_rational_polytope(&mut corpus::rng(seed), d, 3);
        let sum = p.minkowski_sum(&q).unwrap();
        let mut rng = corpus::rng(seed ^ 1);
        for _ in 0..4 {
            let y: QVector = (0..d)
                .map(|_| frac(rand::Rng::random_range(&mut rng, -4..=4), 1))
                .collect();
            prop_assert_eq!(sum.min_pairing(&y), p.min_pairing(&y) + q.min_pairing(&y));
        }
        for v in sum.vertices() {
            let found = p.vertices().iter().any(|x| {
                q.vertices().iter().any(|z| x.iter().zip(z).zip(v).all(|((a, b), c)| a + b == *c))
            });
            prop_assert!(found);
        }
    }

    #[test]
    fn lattice_hull_is_idempotent((d, pts) in points_with_rank()) {
        let p = hull(&pts, d);
        let h = p.lattice_hull();
        prop_assert_eq!(h.lattice_hull(), h.clone());
        prop_assert!(h.is_lattice_polytope());
        prop_assert_eq!(h.lattice_points(), p.lattice_points());
    }

    #[test]
    fn min_pairing_is_attained_at_a_vertex((d, pts) in points_with_rank(), y in any_direction(3)) {
        let p = hull(&pts, d);
        let y = &y[..d];
        let m = p.min_pairing(y);
        prop_assert!(pts.iter().all(|x| dot_q(x, y) >= m));
        prop_assert!(p.vertices().iter().any(|v| dot_q(v, y) == m));
    }

    #[test]
    fn reflexivity_implications((d, pts) in integer_points_with_rank()) {
        let p = hull(&pts, d);
        let r = classify(&p);
        if r.is_reflexive {
            prop_assert!(r.is_q_reflexive && r.is_almost_reflexive && r.is_canonical_fano);
        }
        if r.is_almost_reflexive {
            prop_assert!(r.is_lattice && r.zero_interior);
        }
        if r.is_q_reflexive {
            let dual = p.polar_dual().unwrap();
            prop_assert!(dual.is_lattice_polytope());
            prop_assert!(classify(&dual).is_canonical_fano);
        }
    }

    #[test]
    fn q_reflexive_and_almost_reflexive_are_dual((d, pts) in integer_points_with_rank(), k in 0usize..6) {
        let t = corpus::dilation_factors()[k].clone();
        for p in [hull(&pts, d), hull(&pts, d).scale(&t)] {
            prop_assume!(p.origin_in_interior());
            let dual = p.polar_dual().unwrap();
            prop_assert_eq!(is_q_reflexive(&p), is_almost_reflexive(&dual));
            prop_assert_eq!(is_almost_reflexive(&p), is_q_reflexive(&dual));
        }
    }

    #[test]
    fn partner_operators_preserve_the_class((d, pts) in integer_points_with_rank()) {
        let p = hull(&pts, d);
        if is_q_reflexive(&p) {
            let c = circ_dual(&p).unwrap();
            prop_assert!(is_q_reflexive(&c));
            prop_assert_eq!(circ_dual(&c).unwrap(), p.clone());
        }
        if is_almost_reflexive(&p) {
            let b = bullet_dual(&p).unwrap();
            prop_assert!(is_almost_reflexive(&b));
            prop_assert_eq!(bullet_dual(&b).unwrap(), p);
        }
    }

    #[test]
    fn divisor_round_trip((d, pts) in points_with_rank()) {
        let p = hull(&pts, d);
        prop_assume!(p.is_full_dimensional());
        let fan = normal_fan(&p).unwrap();
        let div = divisor_of_polytope(&p, &fan).unwrap();
        prop_assert_eq!(divisor_polytope(&div).unwrap(), p.clone());
        let ms = monomials_of_divisor(&div).unwrap();
        prop_assert_eq!(ms.monomials.len() + ms.warnings.len(), p.lattice_points().len());
        prop_assert!(ms.monomials.iter().all(|m| m.exponents.iter().all(|e| e >= &0.into())));
    }

    #[test]
    fn minkowski_nef_lemma(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = corpus::rng(seed);
        let fan = normal_fan(&corpus::random_rational_polytope(&mut rng, d, 2)).unwrap();
        let p = corpus::random_rational_polytope(&mut rng, d, 2);
        let q = corpus::random_rational_polytope(&mut rng, d, 2);
        let sum = p.minkowski_sum(&q).unwrap();
        let nef = |x: &RationalPolytope| is_qnef(&divisor_of_polytope(x, &fan).unwrap());
        prop_assert_eq!(nef(&sum), nef(&p) && nef(&q));
    }

    #[test]
    fn dual_cone_is_an_involution((d, pts) in points_with_rank()) {
        let gens: Vec<QVector> = pts
            .iter()
            .map(|p| {
                let mut g = p.clone();
                g.push(frac(1, 1));
                g
            })
            .collect();
        let Ok(c) = PolyhedralCone::from_generators(&gens, d + 1, Lattice::M) else {
            return Ok(());
        };
        let dual = c.dual_cone();
        for g in c.generators() {
            let gq: QVector = g.iter().map(|x| Rational::from_integer(x.clone())).collect();
            let nonnegative = dual.generators().iter().all(|h| {
                let hq: QVector = h.iter().map(|x| Rational::from_integer(x.clone())).collect();
                dot_q(&gq, &hq) >= frac(0, 1)
            });
            prop_assert!(nonnegative);
        }
        prop_assert_eq!(dual.dual_cone(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_polygon_partitions_satisfy_the_identities(idx in 0usize..16, seed in any::<u64>()) {
        let total = &reflexive_polygons()[idx];
        let mut rng = corpus::rng(seed);
        let Some(part) = vertex_split_partition(&mut rng, total, 2) else {
            return Ok(());
        };
        prop_assert!(is_q_nef_partition(&part));
        let cert = verify_duality(&part).unwrap();
        prop_assert!(cert.all_passed(), "{:?}", cert.failures().collect::<Vec<_>>());
        let sys = emit_ci_equations(&part).unwrap();
        prop_assert!(sys.all_exponents_nonnegative());
        prop_assert!(sys.equations.iter().all(|e| e.degree_consistent));
    }

    #[test]
    fn cones_over_reflexive_polytopes(seed in any::<u64>(), d in 2usize..=3) {
        let p = corpus::random_reflexive(&mut corpus::rng(seed), d);
        let c = cone_over_polytope(&p).unwrap();
        prop_assert_eq!(is_reflexive_gorenstein(&c), Some(1));
        prop_assert_eq!(is_almost_reflexive_gorenstein(&c).map(|(r, _)| r), Some(1));
        let dual_vertices: Vec<QVector> = p.polar_dual().unwrap().vertices().to_vec();
        let expected = common::lattice_points(&dual_vertices, d).len();
        prop_assert_eq!(emit_generalized_cy(&c).unwrap().term_count(), expected);
    }
}
