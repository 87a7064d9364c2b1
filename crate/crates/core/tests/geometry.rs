mod common;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use common::mat;
use nalgebra::{Matrix3, Vector3};
use num_bigint::BigInt;
use num_rational::BigRational;
use orisearch::geometry::{
    arrangement_error, circle_to_line, common_line_angles, line_intersection, line_to_circle, normal_to_line,
    verify_line_arrangement, verify_local_circle_arrangement, GeometryError, Intersection, Line,
    LineArrangementInstance, LineViolation, LocalCircleInstance, Orientation, Point,
};
use orisearch::instance_gen::{planted_common_line_instance, random_orientations, random_partite};
use orisearch::reductions::partite_to_line_instance;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(a: f64, b: f64, c: f64) -> Line<f64> {
    Line::new(a, b, c).unwrap()
}

fn pt(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

fn single_pair(n: usize, pts: Vec<Point<f64>>) -> LineArrangementInstance<f64> {
    LineArrangementInstance::new(n, BTreeMap::from([((0, 1), pts)])).unwrap()
}

#[test]
fn intersection_examples() {
    // y = x and y = -x
    let (l1, l2) = (line(1.0, -1.0, 0.0), line(1.0, 1.0, 0.0));
    assert_eq!(line_intersection(&l1, &l2), Intersection::Point(pt(0.0, 0.0)));
    assert_eq!(
        line_intersection(&Line::horizontal(0.0), &Line::horizontal(1.0)),
        Intersection::Parallel { coincident: false }
    );
    assert_eq!(line_intersection(&Line::vertical(0.0), &Line::horizontal(3.0)), Intersection::Point(pt(0.0, 3.0)));
    assert_eq!(
        line_intersection(&Line::horizontal(2.0), &line(0.0, 3.0, 6.0)),
        Intersection::Parallel { coincident: true }
    );
}

#[test]
fn line_verifier_examples() {
    let lines = [line(1.0, -1.0, 0.0), line(1.0, 1.0, 0.0)];
    assert!(verify_line_arrangement(&lines, &single_pair(2, vec![pt(0.0, 0.0)]), 1e-12).unwrap().accepted());
    let report = verify_line_arrangement(&lines, &single_pair(2, vec![pt(1.0, 1.0)]), 1e-12).unwrap();
    assert_eq!(report.violations, vec![LineViolation::Missed { i: 0, j: 1 }]);
    let parallel = [Line::horizontal(0.0), Line::horizontal(1.0)];
    assert!(!verify_line_arrangement(&parallel, &single_pair(2, vec![pt(0.0, 0.0)]), 1.0).unwrap().accepted());
}

#[test]
fn arrangement_error_examples() {
    let lines = [line(1.0, -1.0, 0.0), line(1.0, 1.0, 0.0)];
    assert_eq!(arrangement_error(&lines, &single_pair(2, vec![pt(1.0, 0.0)]), 2.0).unwrap(), 1.0);
    assert_eq!(arrangement_error(&lines, &single_pair(2, vec![pt(0.0, 0.0)]), 2.0).unwrap(), 0.0);
    assert!(matches!(
        arrangement_error(&lines, &single_pair(2, vec![]), 2.0),
        Err(GeometryError::EmptyAllowedSet { .. })
    ));
}

#[test]
fn arrangement_error_q_orderings_recomputed() {
    // three lines: x = 0, y = 0, x + y = 4; crossings (0,0), (0,4), (4,0)
    let lines = [Line::vertical(0.0), Line::horizontal(0.0), line(1.0, 1.0, 4.0)];
    let allowed = BTreeMap::from([
        ((0, 1), vec![pt(3.0, 4.0), pt(0.5, 0.0)]),
        ((0, 2), vec![pt(0.0, 1.0)]),
        ((1, 2), vec![pt(4.0, 0.2), pt(10.0, 10.0)]),
    ]);
    let inst = LineArrangementInstance::new(3, allowed).unwrap();
    let crossings = [((0, 1), (0.0, 0.0)), ((0, 2), (0.0, 4.0)), ((1, 2), (4.0, 0.0))];
    let direct = |q: f64| -> f64 {
        crossings
            .iter()
            .map(|&(k, (x, y))| {
                inst.allowed()[&k]
                    .iter()
                    .map(|p| ((p.x - x).powi(2) + (p.y - y).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min)
                    .powf(q)
            })
            .sum()
    };
    for q in [0.5, 1.0, 2.0, 3.0] {
        let got = arrangement_error(&lines, &inst, q).unwrap();
        assert!((got - direct(q)).abs() < 1e-12, "q = {q}: {got} vs {}", direct(q));
    }
    // distances 0.5, 3 and 0.2: q = 1 sums to 3.7, q = 2 to 9.29
    assert!((arrangement_error(&lines, &inst, 1.0).unwrap() - 3.7).abs() < 1e-12);
    assert!((arrangement_error(&lines, &inst, 2.0).unwrap() - 9.29).abs() < 1e-12);
}

#[test]
fn zero_error_iff_exact_realization() {
    for seed in 0..12 {
        let g = random_partite(3, 2, 0.5, seed).unwrap();
        let r = partite_to_line_instance(&g).unwrap();
        for code in 0..8usize {
            let choice: Vec<usize> = (0..3).map(|i| code >> i & 1).collect();
            let lines = r.lines_for(&choice);
            let ok = verify_line_arrangement(&lines, &r.instance, 0.0).unwrap().accepted();
            match arrangement_error(&lines, &r.instance, 2.0) {
                Ok(e) => assert_eq!(ok, e == 0.0),
                // two groups with no edges between them: nothing can be realized
                Err(GeometryError::EmptyAllowedSet { .. }) => assert!(!ok),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn exact_lines_cross_exactly() {
    let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    let l1 = Line::new(r(1, 3), r(1, 1), r(2, 7)).unwrap();
    let l2 = Line::new(r(-2, 5), r(1, 1), r(0, 1)).unwrap();
    let Intersection::Point(p) = line_intersection(&l1, &l2) else { panic!("lines cross") };
    assert!(l1.contains(&p) && l2.contains(&p));
}

#[test]
fn projection_examples() {
    let l = normal_to_line(&Vector3::y()).unwrap();
    assert_eq!(l.to_array(), [0.0, 1.0, 0.0]);
    assert_eq!(normal_to_line(&Vector3::z()), Err(GeometryError::DegenerateProjection));
    assert_eq!(circle_to_line(&Orientation::identity()), Err(GeometryError::DegenerateProjection));
}

#[test]
fn thousand_circle_line_roundtrips() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for _ in 0..1000 {
        let v = Vector3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let n = v.normalize();
        let back = line_to_circle(&normal_to_line(&n).unwrap());
        let err = (n - back.into_inner()).norm().min((n + back.into_inner()).norm());
        assert!(err < 1e-9, "{n:?} -> {back:?}");
    }
}

#[test]
fn common_line_examples() {
    let rx90 = Orientation::new(Matrix3::from_row_slice(&mat::row_major(&mat::rot_x(PI / 2.0)))).unwrap();
    let (a, b) = common_line_angles(&Orientation::identity(), &rx90).unwrap();
    assert!(common::angle_gap(a, PI) < 1e-12 && common::angle_gap(b, PI) < 1e-12);
    assert_eq!(
        common_line_angles(&Orientation::identity(), &Orientation::identity()),
        Err(GeometryError::ParallelPlanes)
    );
    let (ri, rj) = (mat::rot_z(30f64.to_radians()), mat::rot_x(45f64.to_radians()));
    let oi = Orientation::from_row_major(mat::row_major(&ri)).unwrap();
    let oj = Orientation::from_row_major(mat::row_major(&rj)).unwrap();
    let got = common_line_angles(&oi, &oj).unwrap();
    let want = mat::common_line(&ri, &rj);
    assert!(common::angle_gap(got.0, want.0) < 1e-12 && common::angle_gap(got.1, want.1) < 1e-12);
}

#[test]
fn common_lines_match_direct_formula() {
    for (k, o) in random_orientations(200, 8).windows(2).enumerate() {
        let rows = |o: &Orientation| {
            let r = o.to_row_major();
            [[r[0], r[1], r[2]], [r[3], r[4], r[5]], [r[6], r[7], r[8]]]
        };
        let got = common_line_angles(&o[0], &o[1]).unwrap();
        let want = mat::common_line(&rows(&o[0]), &rows(&o[1]));
        assert!(common::angle_gap(got.0, want.0) < 1e-12, "pair {k}");
        assert!(common::angle_gap(got.1, want.1) < 1e-12, "pair {k}");
    }
}

#[test]
fn circle_verifier_examples() {
    let o = random_orientations(2, 21);
    let (a, b) = common_line_angles(&o[0], &o[1]).unwrap();
    let inst = |p: (f64, f64)| LocalCircleInstance::new(2, BTreeMap::from([((0, 1), vec![p])])).unwrap();
    assert!(verify_local_circle_arrangement(&o, &inst((a, b)), 1e-9).unwrap().accepted());
    assert!(!verify_local_circle_arrangement(&o, &inst((a + 0.1, b)), 1e-6).unwrap().accepted());
    assert!(verify_local_circle_arrangement(&o, &inst((a + PI, b + PI)), 1e-9).unwrap().accepted());
    let same = [Orientation::identity(), Orientation::identity()];
    assert!(!verify_local_circle_arrangement(&same, &inst((a, b)), 1.0).unwrap().accepted());
}

#[test]
fn planted_instance_accepted() {
    let p = planted_common_line_instance(5, 4, 0.0, 99).unwrap();
    assert!(verify_local_circle_arrangement(&p.ground_truth, &p.instance, 1e-6).unwrap().accepted());
}

fn rotation_from(seed: u64) -> Matrix3<f64> {
    *random_orientations(1, seed)[0].matrix()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn common_lines_equivariant_under_global_rotation(seed in any::<u64>(), qseed in any::<u64>()) {
        let o = random_orientations(2, seed);
        let q = rotation_from(qseed ^ 0x9e37_79b9);
        let before = common_line_angles(&o[0], &o[1]).unwrap();
        let after = common_line_angles(&o[0].relabel(&q), &o[1].relabel(&q)).unwrap();
        prop_assert!(common::angle_gap(before.0, after.0) < 1e-9);
        prop_assert!(common::angle_gap(before.1, after.1) < 1e-9);
    }

    #[test]
    fn swapping_arguments_mirrors(seed in any::<u64>()) {
        let o = random_orientations(2, seed);
        let (a, b) = common_line_angles(&o[0], &o[1]).unwrap();
        let (c, d) = common_line_angles(&o[1], &o[0]).unwrap();
        prop_assert!(common::angle_gap(c, b + PI) < 1e-9);
        prop_assert!(common::angle_gap(d, a + PI) < 1e-9);
    }

    #[test]
    fn canonical_lines_survive_lifting(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -5.0f64..5.0) {
        prop_assume!(a.hypot(b) > 1e-3);
        let l = Line::new(a, b, c).unwrap();
        let back = normal_to_line(&line_to_circle(&l).into_inner()).unwrap();
        for (x, y) in l.to_array().iter().zip(back.to_array()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}
