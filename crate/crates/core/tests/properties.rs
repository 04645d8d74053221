use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use isokit::calculus::{curvature_at, graph_curvatures};
use isokit::curves::{classify_parameter_curves, CurveState};
use isokit::families::{
    constant_h_profile, constant_k_profile, flat_helicoidal_profile, helicoidal_chart, polynomial_profile,
    translation_hypersurface, HelicoidalParams, HelicoidalType,
};
use isokit::isotropic::{i_distance, motion_preserves_distance, Motion, Point3};

fn point() -> impl Strategy<Value = Point3> {
    (-50.0..50.0f64, -50.0..50.0f64, -50.0..50.0f64).prop_map(|(a, b, c)| Point3::new(a, b, c))
}

fn motion() -> impl Strategy<Value = Motion> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -3.0..3.0f64, -3.0..3.0f64, -PI..PI)
        .prop_map(|(a, b, c, d, e, phi)| Motion::new(a, b, c, d, e, phi))
}

proptest! {
    #[test]
    fn motions_are_isometries(m in motion(), x in point(), y in point()) {
        prop_assert!(motion_preserves_distance(&m, &x, &y));
    }

    #[test]
    fn composition_matches_sequential_application(m1 in motion(), m2 in motion(), x in point()) {
        let a = m2.apply(&m1.apply(&x));
        let b = m2.compose(&m1).apply(&x);
        prop_assert!((a.x1 - b.x1).abs() < 1e-9 && (a.x2 - b.x2).abs() < 1e-9 && (a.x3 - b.x3).abs() < 1e-8);
    }

    #[test]
    fn distance_is_a_pseudometric(x in point(), y in point(), z in point(), lift in -100.0..100.0f64) {
        prop_assert_eq!(i_distance(&x, &y), i_distance(&y, &x));
        prop_assert!(i_distance(&x, &z) <= i_distance(&x, &y) + i_distance(&y, &z) + 1e-9);
        prop_assert_eq!(i_distance(&x, &Point3::new(x.x1, x.x2, x.x3 + lift)), 0.0);
    }

    #[test]
    fn graph_chart_agrees_with_hessian_formula(a1 in -2.0..2.0f64, a2 in -2.0..2.0f64, x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let gh = translation_hypersurface(2, &[a1, a2], &[0.3, -0.2], 1.0).unwrap();
        let chart = gh.as_chart().unwrap();
        let a = curvature_at(&chart, x, y).unwrap();
        let b = graph_curvatures(&gh, &[x, y]).unwrap();
        prop_assert!((a.k - b.k).abs() < 1e-12 && (a.h - b.h).abs() < 1e-12);
    }

    #[test]
    fn helicoidal_types_have_equal_curvature(pitch in -3.0..3.0f64, u in 0.5..5.0f64, v in -PI..PI) {
        let p = polynomial_profile(&[0.0, 0.5, -0.3, 0.1]).unwrap();
        let first = helicoidal_chart(&HelicoidalParams::new(p.clone(), pitch)).unwrap();
        let second = helicoidal_chart(&HelicoidalParams::new(p, pitch).with_kind(HelicoidalType::Second)).unwrap();
        let (a, b) = (curvature_at(&first, u, v).unwrap(), curvature_at(&second, u, v).unwrap());
        prop_assert!((a.k - b.k).abs() < 1e-12 && (a.h - b.h).abs() < 1e-12);
    }

    #[test]
    fn flat_profiles_are_flat(alpha in 0.3..3.0f64, h in -2.0..2.0f64, t in 0.05..0.95f64, v in -PI..PI) {
        let p = flat_helicoidal_profile(alpha, h).unwrap();
        let lo = p.valid_range().lo;
        let u = lo + 0.01 + t * 4.0;
        let chart = helicoidal_chart(&HelicoidalParams::new(p, h)).unwrap();
        prop_assert!(curvature_at(&chart, u, v).unwrap().k.abs() < 1e-8);
    }

    #[test]
    fn constant_k_profiles_have_constant_k(k0 in 0.2..2.0f64, gamma in 0.0..5.0f64, h in -2.0..2.0f64, t in 0.05..0.95f64) {
        let p = constant_k_profile(k0, gamma, h).unwrap();
        let lo = p.valid_range().lo;
        let u = lo + 0.02 + 3.0 * t;
        let chart = helicoidal_chart(&HelicoidalParams::new(p, h)).unwrap();
        prop_assert!((curvature_at(&chart, u, 0.4).unwrap().k - k0).abs() < 1e-8);
    }

    #[test]
    fn constant_h_riccati(h0 in -3.0..3.0f64, alpha in 0.2..3.0f64, u in 0.3..6.0f64) {
        let p = constant_h_profile(h0, alpha, 0.0).unwrap();
        prop_assert!((p.helicoidal_h_expr(u).unwrap() - h0).abs() < 1e-10);
    }

    #[test]
    fn parameter_curves_of_any_profile(h in -3.0..3.0f64, u0 in 0.5..5.0f64, v0 in -PI..PI) {
        let p = constant_h_profile(0.7, 1.2, 0.0).unwrap();
        let pc = classify_parameter_curves(&p, h, u0, v0).unwrap();
        assert_abs_diff_eq!(pc.along_u.kappa_g, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc.along_v.kappa_g, 1.0 / u0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc.along_u.tau_g_numerator, -h / u0, epsilon = 1e-12);
    }

    #[test]
    fn unit_speed_states_from_any_parametrization(u in 0.5..5.0f64, u1 in -2.0..2.0f64, v1 in -2.0..2.0f64, u2 in -1.0..1.0f64, v2 in -1.0..1.0f64) {
        prop_assume!(u1.abs() + v1.abs() > 0.1);
        let cs = CurveState::from_parametrization(u, 0.0, u1, v1, u2, v2).unwrap();
        prop_assert!(cs.check_unit_speed().is_ok());
        // d/ds of the unit-speed identity vanishes
        let d = cs.du * cs.ddu + cs.u * cs.du * cs.dv * cs.dv + cs.u * cs.u * cs.dv * cs.ddv;
        prop_assert!(d.abs() < 1e-9);
    }
}
