//! Forward-propagate random optimal laws and recover them by synthesis.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su2opt_core::synthesis::{optimality_horizon, synthesize};
use su2opt_core::{ExtremalLaw, ModelConstants};

struct Case {
    gamma: f64,
    omega: f64,
    s: f64,
    phi: f64,
}

fn random_case(rng: &mut ChaCha8Rng) -> Case {
    let gamma = rng.gen_range(0.15..=1.0);
    let k = ModelConstants::new(gamma).unwrap();
    let (omega, end) = if rng.gen_bool(0.5) {
        let w = rng.gen_range(-3.0..0.98 * k.omega_star);
        (w, PI / (1.0 - w).hypot(gamma))
    } else {
        let w = rng.gen_range(1.02 * k.omega_star..0.98 * k.omega_c);
        (w, optimality_horizon(gamma, w).unwrap())
    };
    Case {
        gamma,
        omega,
        s: rng.gen_range(0.0005..0.9995) * end,
        phi: rng.gen_range(0.0..2.0 * PI),
    }
}

fn recover(seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        let c = random_case(&mut rng);
        let target = ExtremalLaw::new(c.gamma, c.omega, c.phi).unwrap().propagate(c.s);
        match synthesize(c.gamma, &target) {
            Ok(r) => {
                let grid_ok = r.grid_check.map_or(true, |g| g.consistent);
                if r.residual > 1e-9 || (r.t_curve - c.s).abs() > 1e-6 || !grid_ok {
                    failures.push(format!(
                        "#{i} γ={} ω={} s={}: got ω={} s={} residual={:e} grid={:?}",
                        c.gamma, c.omega, c.s, r.omega, r.s_final, r.residual, r.grid_check
                    ));
                }
            }
            Err(e) => failures.push(format!("#{i} γ={} ω={} s={}: {e}", c.gamma, c.omega, c.s)),
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn random_laws_are_recovered() {
    recover(11, 400);
}

/// Slow sweep; run with `cargo test -- --ignored`.
#[test]
#[ignore]
fn random_laws_are_recovered_stress() {
    recover(11, 10_000);
}
