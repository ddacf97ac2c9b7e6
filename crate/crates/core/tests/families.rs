//! Global properties of the optimal families, checked on grids.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use su2opt_core::geometry::{
    critical_circle, critical_crossing_time, critical_point, delta, zeta, CriticalParam,
};
use su2opt_core::synthesis::{
    inside_candidates, optimality_horizon, outside_candidates, solve_tkm, synth_inside,
    synth_diagonal, t_min,
};
use su2opt_core::{singular_time, DiskPoint, ExtremalLaw, ModelConstants};

const GAMMAS: [f64; 4] = [0.577_350_269_189_625_8, 0.7, 0.9, 1.0];

#[test]
fn t10_beats_every_feasible_tkm() {
    for &g in &GAMMAS {
        for i in 1..=62 {
            let psi = 0.1 * f64::from(i);
            let t10 = synth_diagonal(g, psi).unwrap().t_curve;
            assert!(t10 < singular_time(psi));
            for k in 1..=6 {
                for m in 0..=6 {
                    if let Some(t) = solve_tkm(g, psi, k, m).unwrap().min_time() {
                        assert!(t >= t10 - 1e-12, "γ={g} ψ={psi} k={k} m={m}: {t} < {t10}");
                    }
                }
            }
        }
    }
}

#[test]
fn outside_family_stays_outside_the_separatrix() {
    for &g in &[0.3, 0.5, FRAC_1_SQRT_2, 1.0] {
        let k = ModelConstants::new(g).unwrap();
        for w in [-10.0, -3.0, -1.0, 0.0, 0.5 * k.omega_star, 0.9 * k.omega_star] {
            let l = ExtremalLaw::new(g, w, 0.0).unwrap();
            for i in 1..=2000 {
                let s = l.boundary_time() * f64::from(i) / 2000.0;
                let d = delta(&l, s);
                assert!(d > -1e-12, "γ={g} ω={w} s={s}: Δ={d}");
            }
        }
    }
}

#[test]
fn one_optimal_extremal_per_point() {
    for &g in &GAMMAS {
        let k = ModelConstants::new(g).unwrap();
        for i in 1..20 {
            for j in 0..24 {
                let r = f64::from(i) / 20.0;
                let p = DiskPoint::from_polar(r, PI * f64::from(j) / 12.0 + 0.01);
                let sep = su2opt_core::geometry::separatrix(g).unwrap().signed_distance(&p);
                if sep.abs() < 1e-3 {
                    continue;
                }
                let n = if sep > 0.0 {
                    outside_candidates(g, p).unwrap().len()
                } else {
                    inside_candidates(g, p)
                        .unwrap()
                        .iter()
                        .filter(|c| c.omega > k.omega_star)
                        .filter(|c| c.s <= optimality_horizon(g, c.omega).unwrap() + 1e-9)
                        .count()
                };
                assert_eq!(n, 1, "γ={g} p=({}, {})", p.x, p.y);
            }
        }
    }
}

#[test]
fn outside_phase_residual_is_monotone_along_the_family() {
    // Along the joined search path (descending branch walked back from
    // ψ_f = 2π to the tangency, then the ascending branch forward) the
    // phase reached at a fixed radius increases strictly.
    for &g in &GAMMAS {
        for &r in &[0.6, 0.8, 0.95] {
            let (mut desc, mut asc) = (Vec::new(), Vec::new());
            for i in 1..2000 {
                let psi = 2.0 * PI * f64::from(i) / 2000.0;
                let w = su2opt_core::synthesis::omega_opt(g, psi);
                let l = ExtremalLaw::new(g, w, 0.0).unwrap();
                if let Ok((s0, s1)) = su2opt_core::synthesis::radius_crossing_times(&l, r) {
                    desc.push(l.phase(s0));
                    asc.push(l.phase(s1));
                }
            }
            assert!(desc.len() > 10, "γ={g} r={r}");
            let path: Vec<f64> = desc.iter().rev().chain(asc.iter()).copied().collect();
            for (i, w) in path.windows(2).enumerate() {
                // the two branches share the tangency point
                let ok = if i + 1 == desc.len() { w[1] >= w[0] } else { w[1] > w[0] };
                assert!(ok, "γ={g} r={r} step {i}: {} -> {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn critical_trajectory_points_are_reached_by_zeta_at_the_loss_time() {
    for &g in &GAMMAS {
        let k = ModelConstants::new(g).unwrap();
        for &lam in &[0.2, 0.4, 0.6, 0.8, 0.95] {
            let p = critical_point(g, CriticalParam::new(lam).unwrap()).unwrap();
            let z = zeta(g, lam).unwrap().omega;
            let hit = inside_candidates(g, p)
                .unwrap()
                .into_iter()
                .find(|c| (c.omega - z).abs() < 1e-6);
            let hit = hit.unwrap_or_else(|| panic!("γ={g} λ={lam}: ζ={z} not among candidates"));
            let loss = optimality_horizon(g, z).unwrap();
            assert!((hit.s - loss).abs() < 1e-6, "γ={g} λ={lam}: {} vs {loss}", hit.s);
            // the critical extremal itself arrives no later
            let r = synth_inside(g, p).unwrap();
            assert!((r.omega - k.omega_c).abs() < 1e-9);
            assert!(r.t_curve <= hit.s + 1e-9);
        }
    }
}

#[test]
fn fast_outer_extremals_avoid_the_critical_set() {
    for &g in &[0.577_350_269_189_625_8, 0.7, 0.85, 1.0] {
        let k = ModelConstants::new(g).unwrap();
        let rc = critical_circle(g).unwrap().radius;
        for i in 1..=10 {
            let w = k.omega_c + (3.0 * k.omega_star - k.omega_c) * f64::from(i) / 10.0;
            let l = ExtremalLaw::new(g, w, 0.0).unwrap();
            for j in 0..=500 {
                let s = l.boundary_time() * (0.5 + 0.5 * f64::from(j) / 500.0);
                assert!(l.disk_curve(s).r() >= rc - 1e-12, "γ={g} ω={w} s={s}");
            }
            assert_eq!(critical_crossing_time(&l).unwrap(), None, "γ={g} ω={w}");
        }
    }
}

#[test]
fn diagonal_times_match_closed_form() {
    for &g in &GAMMAS {
        for i in 1..50 {
            let psi = 2.0 * PI * f64::from(i) / 50.0;
            let r = synth_diagonal(g, psi).unwrap();
            assert!((r.t_curve - t_min(g, psi)).abs() < 1e-12);
            // the ω extremal lands on the boundary exactly at ψ_f
            let l = ExtremalLaw::new(g, r.omega, 0.0).unwrap();
            assert!((l.boundary_time() - r.t_curve).abs() < 1e-12);
            let end = l.disk_curve(r.t_curve);
            assert!((end.x - psi.cos()).abs() < 1e-12 && (end.y - psi.sin()).abs() < 1e-12);
        }
    }
}
