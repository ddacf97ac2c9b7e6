use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use su2opt_core::geometry::{delta, separatrix};
use su2opt_core::synthesis::{optimality_horizon, synthesize};
use su2opt_core::{DiskPoint, ExtremalLaw, ModelConstants, Su2Matrix, TargetParams};

fn su2() -> impl Strategy<Value = Su2Matrix> {
    (0.0..TAU, 0.0..TAU, 0.0..=1.0f64).prop_map(|(psi, phi, m)| {
        let a = Complex64::from_polar((1.0 - m * m).sqrt(), psi);
        Su2Matrix::from_complex_pair(a, Complex64::from_polar(m, phi)).unwrap()
    })
}

fn law() -> impl Strategy<Value = ExtremalLaw> {
    (0.05..=1.0f64, -5.0..5.0f64, 0.0..TAU).prop_map(|(g, w, p)| ExtremalLaw::new(g, w, p).unwrap())
}

proptest! {
    #[test]
    fn products_stay_special_unitary(x in su2(), y in su2()) {
        let z = x.multiply(&y);
        prop_assert!((z.det() - 1.0).norm() < 1e-12);
        let m = z.to_mat2() * z.adjoint().to_mat2() - su2opt_core::Mat2::identity();
        prop_assert!(m.max_abs() < 1e-12);
    }

    #[test]
    fn target_params_round_trip(psi in 0.0..TAU, phi in 0.0..TAU, m in 0.001..0.999f64) {
        let p = TargetParams::new(psi, phi, m).unwrap();
        let q = p.to_matrix().to_target_params();
        prop_assert!((q.m - m).abs() < 1e-12);
        prop_assert!(su2opt_core::su2::wrap_angle(q.psi - psi).abs() < 1e-12);
        prop_assert!(su2opt_core::su2::wrap_angle(q.phi - phi).abs() < 1e-12);
        prop_assert!((q.x_psi - (q.psi - PI) / PI).abs() == 0.0);
    }

    #[test]
    fn disk_point_is_a_class_invariant(x in su2(), theta in -10.0..10.0f64) {
        let y = x.z_conjugate(theta);
        prop_assert!(x.disk_point().dist(&y.disk_point()) < 1e-12);
        prop_assert!(su2opt_core::su2::z_conjugation_equivalent(&x, &y));
    }

    #[test]
    fn disk_curve_radius_matches_closed_form(l in law(), u in 0.0..10.0f64) {
        let s = u * PI / l.a();
        prop_assert!((l.disk_curve(s).r_sq() - l.radius_sq(s)).abs() < 1e-12);
        let x = l.propagate(s);
        prop_assert!((x.alpha().norm_sqr() + x.beta().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn controls_saturate_the_bound(l in law(), t in 0.0..100.0f64) {
        let (ux, uy) = l.controls_at(t);
        prop_assert!((ux.hypot(uy) - l.gamma()).abs() < 1e-15);
    }

    #[test]
    fn separatrix_extremal_stays_on_the_circle(g in 0.05..=1.0f64, s in 0.0..20.0f64) {
        let k = ModelConstants::new(g).unwrap();
        let c = separatrix(g).unwrap();
        let p = ExtremalLaw::new(g, k.omega_star, 0.0).unwrap().disk_curve(s);
        prop_assert!(c.signed_distance(&p).abs() < 1e-12);
    }

    #[test]
    fn diagonal_family_stays_outside(g in 0.05..=1.0f64, psi in 0.01..6.27f64, u in 0.0..=1.0f64) {
        let w = su2opt_core::synthesis::omega_opt(g, psi);
        let l = ExtremalLaw::new(g, w, 0.0).unwrap();
        prop_assert!(delta(&l, u * l.boundary_time()) > -1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn synthesis_inverts_forward_propagation(
        g in 0.6..=1.0f64,
        frac in 0.02..0.98f64,
        u in 0.01..0.99f64,
        phi in 0.0..TAU,
    ) {
        let k = ModelConstants::new(g).unwrap();
        // span both families: ω from -2 up to just below ω_c
        let w = -2.0 + frac * (k.omega_c - 0.01 + 2.0);
        prop_assume!((w - k.omega_star).abs() > 1e-3);
        let s = u * optimality_horizon(g, w).unwrap();
        let target = ExtremalLaw::new(g, w, phi).unwrap().propagate(s);
        let r = synthesize(g, &target).unwrap();
        prop_assert!(r.residual <= 1e-9);
        prop_assert!((r.t_curve - s).abs() <= 1e-6 * s.max(1.0));
        prop_assert!(r.law(g).unwrap().propagate(r.s_final).distance(&target) <= 1e-9);
    }

    #[test]
    fn classification_does_not_depend_on_phase(p in su2(), theta in 0.0..TAU) {
        let a = su2opt_core::geometry::classify(0.7, p.disk_point(), 1e-9);
        let q: DiskPoint = p.z_conjugate(theta).disk_point();
        prop_assert_eq!(a, su2opt_core::geometry::classify(0.7, q, 1e-9));
    }
}
