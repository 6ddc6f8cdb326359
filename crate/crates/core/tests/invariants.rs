mod common;

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::Rng;

use common::*;
use thickknot::analysis::{alexander_determinant_along, radius_of_gyration};
use thickknot::canonicalize::{canonicalize, StageKind};
use thickknot::mcmc::{chain_step, renormalize_points, ChainConfig, NoiseDraw, NoiseRecord};
use thickknot::moves::{apply_arc_rotation, apply_reflection, ArcChoice, ReflectionMove};
use thickknot::polygon::{regular_angle, total_curvature, AngleClass};
use thickknot::{injectivity_radius, radius_via_tc, thickness, KnotPolygon, Point3, PointOnKnot};

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rotate(k: &KnotPolygon, axis: Point3, angle: f64, shift: Point3) -> KnotPolygon {
    let axis = axis.normalized().unwrap();
    let v = k
        .vertices()
        .iter()
        .map(|&p| thickknot::geom::rotate_about_axis(p, Point3::ZERO, axis, angle) + shift)
        .collect();
    KnotPolygon::new(v).unwrap()
}

proptest! {
    #![proptest_config(config(48, 11))]

    #[test]
    fn convex_planar_angle_sums(n in (2usize..10).prop_map(|h| 2 * h), seed in any::<u64>()) {
        let k = convex_symmetric(n, seed);
        let turning: f64 = k.turning_angles().iter().sum();
        let interior: f64 = k.interior_angles().iter().sum();
        prop_assert!((turning - TAU).abs() < 1e-9);
        prop_assert!((interior - PI * (n as f64 - 2.0)).abs() < 1e-9);
    }

    #[test]
    fn angle_classes_partition(n in 3usize..14, seed in any::<u64>()) {
        let k = random_polygon(n, seed);
        let reg = regular_angle(n);
        for a in k.interior_angles() {
            prop_assert!((0.0..=PI).contains(&a));
            let c = AngleClass::classify(a, n);
            let expect = if (a - reg).abs() <= 1e-12 {
                AngleClass::Regular
            } else if a < reg {
                AngleClass::Small
            } else {
                AngleClass::Large
            };
            prop_assert_eq!(c, expect);
        }
    }

    #[test]
    fn total_curvature_symmetric(n in 4usize..12, seed in any::<u64>(), e1 in 0usize..12, e2 in 0usize..12, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let k = random_polygon(n, seed);
        let a = PointOnKnot::on_edge(e1 % n, t1);
        let b = PointOnKnot::on_edge(e2 % n, t2);
        let ab = total_curvature(&k, a, b).unwrap();
        let ba = total_curvature(&k, b, a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
    }

    #[test]
    fn thickness_routes_agree(n in 4usize..11, seed in any::<u64>()) {
        let k = random_polygon(n, seed);
        let a = injectivity_radius(&k).injectivity_radius;
        let b = radius_via_tc(&k);
        prop_assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
    }

    #[test]
    fn convex_planar_radius_is_minrad(n in (2usize..9).prop_map(|h| 2 * h), seed in any::<u64>()) {
        let k = convex_symmetric(n, seed);
        let r = injectivity_radius(&k);
        prop_assert_eq!(r.injectivity_radius, r.minrad);
    }

    #[test]
    fn thickness_report_isometry_invariant(n in 4usize..12, seed in any::<u64>(), ax in (-1.0f64..1.0, -1.0f64..1.0, 0.1f64..1.0), angle in 0.0f64..TAU) {
        let k = random_polygon(n, seed);
        let m = rotate(&k, Point3::new(ax.0, ax.1, ax.2), angle, Point3::new(3.0, -1.0, 0.5));
        let (a, b) = (injectivity_radius(&k), injectivity_radius(&m));
        prop_assert!((a.minrad - b.minrad).abs() < 1e-12);
        prop_assert!((a.injectivity_radius - b.injectivity_radius).abs() < 1e-12);
        prop_assert!((a.thickness - b.thickness).abs() < 1e-12);
        match (a.dcsd, b.dcsd) {
            (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-12),
            (x, y) => prop_assert_eq!(x.is_some(), y.is_some()),
        }
    }

    #[test]
    fn radius_continuous(n in 5usize..11, seed in any::<u64>()) {
        let k = thick_polygon(n, 0.01, seed);
        let mut r = rng(seed ^ 0xabc);
        let shaken: Vec<Point3> = k
            .vertices()
            .iter()
            .map(|&p| p + Point3::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)) * 0.577e-6)
            .collect();
        let m = renormalize_points(&shaken);
        let a = injectivity_radius(&k).injectivity_radius;
        let b = injectivity_radius(&m).injectivity_radius;
        prop_assert!((a - b).abs() <= 1e-4);
    }
}

fn random_move(k: &KnotPolygon, r: &mut rand_chacha::ChaCha8Rng) -> ReflectionMove {
    let n = k.len();
    loop {
        let i = r.random_range(0..n);
        let j = r.random_range(0..n);
        if i != j {
            let mut m = ReflectionMove::new(i.min(j), i.max(j), r.random_range(0.0..TAU));
            if r.random_bool(0.5) {
                m.arc_choice = ArcChoice::Complement;
            }
            return m;
        }
    }
}

fn arc_sets(n: usize, m: &ReflectionMove) -> (Vec<usize>, Vec<usize>) {
    let moving = m.moving(n);
    let fixed: Vec<usize> = (0..n).filter(|x| !moving.contains(x)).collect();
    (moving, fixed)
}

proptest! {
    #![proptest_config(config(64, 23))]

    #[test]
    fn reflections_are_isometric_involutions(n in 4usize..16, seed in any::<u64>()) {
        let k = random_polygon(n, seed);
        let mut r = rng(seed);
        let m = random_move(&k, &mut r);
        let once = apply_reflection(&k, &m).unwrap();
        prop_assert!(max_edge_error(&once) <= 1e-12);
        let twice = apply_reflection(&once, &m).unwrap();
        prop_assert!(max_coord_diff(&k, &twice) <= 1e-12);

        let (moving, fixed) = arc_sets(n, &m);
        for set in [&moving, &fixed] {
            for &a in set.iter() {
                for &b in set.iter() {
                    let before = k.vertex(a as isize).dist(k.vertex(b as isize));
                    let after = once.vertex(a as isize).dist(once.vertex(b as isize));
                    prop_assert!((before - after).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn arc_rotation_inverse(n in 4usize..16, seed in any::<u64>(), phi in -PI..PI) {
        let k = random_polygon(n, seed);
        let mut r = rng(seed);
        let m = random_move(&k, &mut r);
        let there = apply_arc_rotation(&k, m.i, m.j, phi).unwrap();
        prop_assert!(max_edge_error(&there) <= 1e-12);
        let back = apply_arc_rotation(&there, m.i, m.j, -phi).unwrap();
        prop_assert!(max_coord_diff(&k, &back) <= 1e-12);
    }

    #[test]
    fn complement_is_congruent(n in 4usize..14, seed in any::<u64>()) {
        let k = random_polygon(n, seed);
        let mut r = rng(seed);
        let mut m = random_move(&k, &mut r);
        m.arc_choice = ArcChoice::Forward;
        let a = apply_reflection(&k, &m).unwrap();
        m.arc_choice = ArcChoice::Complement;
        let b = apply_reflection(&k, &m).unwrap();
        for (x, y) in sorted_distances(&a).iter().zip(sorted_distances(&b)) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn supporting_plane_reflections_keep_thickness(n in 4usize..12, seed in any::<u64>()) {
        let k = random_polygon(n, seed);
        let mut r = rng(seed);
        if let Some(m) = supporting_reflection(&k, &mut r) {
            let after = apply_reflection(&k, &m).unwrap();
            prop_assert!(thickness(&after) >= thickness(&k) - 1e-9);
        }
    }

    #[test]
    fn observables_isometry_invariant(n in 4usize..12, seed in any::<u64>(), angle in 0.0f64..TAU) {
        let k = random_polygon(n, seed);
        let m = rotate(&k, Point3::new(0.3, -0.2, 0.9), angle, Point3::new(-2.0, 5.0, 1.0));
        prop_assert!((radius_of_gyration(&k) - radius_of_gyration(&m)).abs() <= 1e-12);
        prop_assert!((thickness(&k) - thickness(&m)).abs() <= 1e-12);
    }

    #[test]
    fn straight_vertex_pair_is_fixed(theta in 0.0f64..TAU, shift in prop::sample::select(vec![0usize, 3, 4])) {
        // trapezoid with its long side split at a straight vertex
        let h = 3f64.sqrt() / 2.0;
        let base = [
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(2.0, 0.0, 0.0),
            Point3::new(1.5, h, 0.0),
            Point3::new(0.5, h, 0.0),
        ];
        let v: Vec<Point3> = (0..5).map(|k| base[(k + shift) % 5]).collect();
        let k = KnotPolygon::new(v).unwrap();
        // the forward arc from a to b is the straight one
        let a = (5 - shift) % 5;
        let b = a + 2;
        prop_assert!((k.vertex(a as isize).dist(k.vertex(b as isize)) - 2.0).abs() < 1e-15);
        let cfg = ChainConfig::new(5, 0.0, 0, 1);
        let rec = NoiseRecord { x: 0.1, theta, pair: (a, b) };
        let mut records = vec![rec; 6];
        records[1].x = 0.9;
        let out = chain_step(&k, &NoiseDraw { records }, &cfg);
        prop_assert!(out.accepted);
        prop_assert_eq!(out.m, 1);
        prop_assert_eq!(out.state, k);
    }

    #[test]
    fn rejected_steps_leave_state_untouched(seed in any::<u64>(), xs in prop::collection::vec(0.0f64..1.0, 6), pairs in prop::collection::vec((0usize..10, 0usize..10), 6)) {
        let k = thick_polygon(10, 0.06, seed);
        let cfg = ChainConfig::new(10, 0.06, seed, 1);
        let mut r = rng(seed);
        let records = xs
            .iter()
            .zip(&pairs)
            .map(|(&x, &(i, j))| {
                let (i, j) = if i == j { (i, (i + 1) % 10) } else { (i, j) };
                NoiseRecord { x, theta: r.random_range(0.0..TAU), pair: (i.min(j), i.max(j)) }
            })
            .collect();
        let out = chain_step(&k, &NoiseDraw { records }, &cfg);
        if out.accepted {
            prop_assert!(out.thickness_after >= 0.06);
        } else {
            prop_assert_eq!(out.state, k);
        }
    }
}

fn regular_count(k: &KnotPolygon) -> usize {
    let n = k.len();
    k.interior_angles()
        .into_iter()
        .filter(|&a| AngleClass::classify(a, n) == AngleClass::Regular)
        .count()
}

proptest! {
    #![proptest_config(config(24, 31))]

    #[test]
    fn canonicalization_trace_properties(n in 4usize..11, seed in any::<u64>(), t in prop::sample::select(vec![0.0, 0.01])) {
        let k = chain_polygon(n, t, seed, 300);
        let trace = canonicalize(&k).unwrap();
        let mut flattening = false;
        for (idx, e) in trace.entries.iter().enumerate() {
            let before = trace.before(idx);
            let mu_before = thickknot::canonicalize::mu(before);
            let inc_before = thickknot::canonicalize::incidence(before);
            let low_before = thickknot::canonicalize::min_height_count(before);
            prop_assert!(e.thickness_after >= e.thickness_before - 1e-9, "entry {idx}");
            match e.stage {
                StageKind::ExposeProjection => {
                    prop_assert!(e.mu > mu_before + 1e-12);
                    prop_assert!(e.incidence <= inc_before);
                }
                StageKind::Pushout => prop_assert!(e.incidence < inc_before),
                StageKind::FlattenRotate | StageKind::FlattenRigid => {
                    flattening = true;
                    prop_assert!(e.min_height_count > low_before);
                }
                StageKind::Regularize => {
                    prop_assert!(regular_count(&e.polygon) > regular_count(before));
                    for (&a, b) in before.interior_angles().iter().zip(e.polygon.interior_angles()) {
                        let (ca, cb) = (AngleClass::classify(a, n), AngleClass::classify(b, n));
                        prop_assert!(cb == ca || cb == AngleClass::Regular, "{ca:?} -> {cb:?}");
                    }
                }
                StageKind::RigidMotion => {}
            }
            if flattening {
                prop_assert!(e.min_height_count >= low_before);
            }
            if idx % 3 == 0 {
                for d in [1e-6, -1e-6] {
                    let moved = e.mv.perturbed(d).apply(before).unwrap();
                    prop_assert!(thickness(&moved) >= e.thickness_before - 1e-6);
                }
            }
        }
    }

    #[test]
    fn determinant_independent_of_direction(seed in any::<u64>(), n in 6usize..12) {
        let k = random_polygon(n, seed);
        let mut seen = Vec::new();
        let mut r = rng(seed);
        while seen.len() < 8 {
            let d = Point3::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
            if let Some(x) = alexander_determinant_along(&k, d) {
                seen.push(x);
            }
        }
        prop_assert!(seen.iter().all(|&x| x == seen[0]), "{seen:?}");
        prop_assert!(seen[0] % 2 == 1);
    }
}

#[test]
fn fixture_determinants_in_eight_directions() {
    for (name, want) in [("trefoil6", 3), ("figure_eight8", 5)] {
        let k = fixture(name);
        let mut r = rng(5);
        let mut seen = 0;
        while seen < 8 {
            let d = Point3::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
            if let Some(x) = alexander_determinant_along(&k, d) {
                assert_eq!(x, want, "{name}");
                seen += 1;
            }
        }
    }
}

#[test]
fn unconstrained_chain_never_errors() {
    let cfg = ChainConfig::new(10, 0.0, 99, 100_000);
    let mut chain = thickknot::mcmc::run_chain(cfg).unwrap();
    let mut count = 0;
    for s in chain.by_ref() {
        s.unwrap();
        count += 1;
    }
    assert_eq!(count, 100_000);
    assert!(chain.stats().acceptance_rate() > 0.999);
}

#[test]
fn audits_hold_over_a_million_moves() {
    let mut cfg = ChainConfig::new(10, 0.0, 4, 1_000_000);
    cfg.p = vec![0.75; 6];
    let mut chain = thickknot::mcmc::run_chain(cfg).unwrap();
    for s in chain.by_ref() {
        s.unwrap();
    }
    let st = chain.stats();
    let moves: u64 = st.accepted_by_m.iter().enumerate().map(|(m, c)| m as u64 * c).sum();
    assert!(moves >= 1_000_000, "{moves}");
    assert!(st.audits >= 90);
    assert!(st.max_audit_drift <= 1e-8, "{}", st.max_audit_drift);
}

#[test]
fn constrained_chain_stays_thick() {
    let cfg = ChainConfig::new(10, 0.01, 8, 1000);
    for s in thickknot::mcmc::run_chain(cfg).unwrap() {
        assert!(thickness(&s.unwrap().polygon) >= 0.01 - 1e-12);
    }
}

#[test]
fn tight_bound_lowers_acceptance() {
    let t = 0.9 * thickness(&regular(10));
    let cfg = ChainConfig::new(10, t, 8, 2000);
    let mut chain = thickknot::mcmc::run_chain(cfg).unwrap();
    for s in chain.by_ref() {
        assert!(s.unwrap().thickness >= t);
    }
    assert!(chain.stats().acceptance_rate() < 0.9);
}
