//! Independent numerical checks: fixed-step RK4 propagation of the state
//! and of the adjoint, brute-force minimality over the extremal family, and
//! sampled checks of the qualitative facts about the disk curves.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{check_gamma, ExtremalLaw, ModelConstants};
use crate::roots::golden_section_min;
use crate::su2::{DiskPoint, Mat2, PauliBasis, Su2Matrix};
use crate::synthesis::{optimality_horizon, t_min};

const REUNITARIZE_EVERY: usize = 100;

/// Polar correction `X ← (X + X^{-†})/2`, twice.
fn reunitarize(x: &Mat2) -> Mat2 {
    let mut x = *x;
    for _ in 0..2 {
        match x.inverse() {
            Some(inv) => x = (x + inv.adjoint()).scale_re(0.5),
            None => break,
        }
    }
    x
}

/// Integrates `dX/ds = 2(σ_z + u_x σ_x + u_y σ_y) X` from the identity with
/// the law's controls evaluated at physical time `2s`.
pub fn rk4_propagate(law: &ExtremalLaw, s_final: f64, steps: usize) -> Su2Matrix {
    let steps = steps.max(1);
    let pauli = PauliBasis::new();
    let h = s_final / steps as f64;
    let rhs = |s: f64, x: &Mat2| -> Mat2 {
        let (ux, uy) = law.controls_at(2.0 * s);
        (pauli.generator(ux, uy) * *x).scale_re(2.0)
    };
    let mut x = Mat2::identity();
    for i in 0..steps {
        let s = i as f64 * h;
        let k1 = rhs(s, &x);
        let k2 = rhs(s + 0.5 * h, &(x + k1.scale_re(0.5 * h)));
        let k3 = rhs(s + 0.5 * h, &(x + k2.scale_re(0.5 * h)));
        let k4 = rhs(s + h, &(x + k3.scale_re(h)));
        x = x + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(h / 6.0);
        if (i + 1) % REUNITARIZE_EVERY == 0 {
            x = reunitarize(&x);
        }
    }
    Su2Matrix::project(&x).expect("RK4 state stays invertible")
}

/// Projections of the PMP multiplier on the rotated Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjointState {
    pub b_x: f64,
    pub b_y: f64,
    pub b_z: f64,
}

impl AdjointState {
    /// Initial adjoint generating the law's controls, normalized so that
    /// `‖(b_x, b_y)‖ = 1`; then `b_z = (1 - ω)/γ`.
    pub fn matched(law: &ExtremalLaw) -> Self {
        let (sin, cos) = law.phi_tilde().sin_cos();
        Self {
            b_x: sin,
            b_y: -cos,
            b_z: law.b() / law.gamma(),
        }
    }

    pub fn hamiltonian(&self, gamma: f64) -> f64 {
        self.b_z + gamma * self.b_x.hypot(self.b_y)
    }

    fn rhs(&self, ux: f64, uy: f64) -> [f64; 3] {
        [
            self.b_z * uy - self.b_y,
            self.b_x - self.b_z * ux,
            self.b_y * ux - self.b_x * uy,
        ]
    }

    fn add(&self, d: [f64; 3], h: f64) -> Self {
        Self {
            b_x: self.b_x + h * d[0],
            b_y: self.b_y + h * d[1],
            b_z: self.b_z + h * d[2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PmpResidual {
    pub max_drift_bz: f64,
    pub max_drift_h: f64,
    /// Largest angle (radians) between `(u_x, u_y)` and `(b_x, b_y)`.
    pub max_control_mismatch: f64,
}

/// Integrates the adjoint equations along the law's controls (in physical
/// time, up to `t = 2 s_final`) and measures how far the maximum principle's
/// conditions drift.
pub fn pmp_residual(law: &ExtremalLaw, s_final: f64, b0: AdjointState, steps: usize) -> Result<PmpResidual> {
    let steps = steps.max(1);
    let gamma = law.gamma();
    let t_final = 2.0 * s_final;
    let h = t_final / steps as f64;
    let h0 = b0.hamiltonian(gamma);
    let mut b = b0;
    let mut out = PmpResidual {
        max_drift_bz: 0.0,
        max_drift_h: 0.0,
        max_control_mismatch: 0.0,
    };
    let mut record = |t: f64, b: &AdjointState| -> Result<()> {
        let norm_sq = b.b_x * b.b_x + b.b_y * b.b_y;
        if norm_sq < 1e-20 {
            return Err(Error::SingularAdjoint { s: t / 2.0 });
        }
        let (ux, uy) = law.controls_at(t);
        let cross = ux * b.b_y - uy * b.b_x;
        let dot = ux * b.b_x + uy * b.b_y;
        out.max_drift_bz = out.max_drift_bz.max((b.b_z - b0.b_z).abs());
        out.max_drift_h = out.max_drift_h.max((b.hamiltonian(gamma) - h0).abs());
        out.max_control_mismatch = out.max_control_mismatch.max(cross.atan2(dot).abs());
        Ok(())
    };
    record(0.0, &b)?;
    for i in 0..steps {
        let t = i as f64 * h;
        let f = |t: f64, b: &AdjointState| {
            let (ux, uy) = law.controls_at(t);
            b.rhs(ux, uy)
        };
        let k1 = f(t, &b);
        let k2 = f(t + 0.5 * h, &b.add(k1, 0.5 * h));
        let k3 = f(t + 0.5 * h, &b.add(k2, 0.5 * h));
        let k4 = f(t + h, &b.add(k3, h));
        b = AdjointState {
            b_x: b.b_x + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            b_y: b.b_y + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            b_z: b.b_z + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        };
        record(t + h, &b)?;
    }
    Ok(out)
}

/// Search grid over the disk curves `(ω, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub omega_range: (f64, f64),
    pub s_max: f64,
    pub n_omega: usize,
    pub n_s: usize,
    /// Disk distance counted as reaching the target.
    pub tol_hit: f64,
}

impl GridSpec {
    pub fn s_step(&self) -> f64 {
        self.s_max / (self.n_s.max(2) - 1) as f64
    }

    pub fn omega_step(&self) -> f64 {
        (self.omega_range.1 - self.omega_range.0) / (self.n_omega.max(2) - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub omega: f64,
    pub s: f64,
    pub t_grid: f64,
    /// Disk distance to the target at `(omega, s)`.
    pub distance: f64,
}

/// Distance below which a refined grid hit counts as reaching the target.
pub const GRID_REFINED_HIT: f64 = 1e-7;

/// Grid times at which the `ω` curve has a local distance minimum within
/// `tol_hit` of `p`, in increasing order.
fn near_misses(law: &ExtremalLaw, p: Complex64, spec: &GridSpec) -> Vec<f64> {
    let ds = spec.s_step();
    let d = |j: usize| (law.entry11(j as f64 * ds) - p).norm();
    let mut out = Vec::new();
    let (mut prev, mut cur) = (d(0), d(1));
    for j in 1..spec.n_s - 1 {
        let next = d(j + 1);
        if cur <= prev && cur <= next && cur < spec.tol_hit {
            out.push(j as f64 * ds);
        }
        prev = cur;
        cur = next;
    }
    out
}

/// Minimizes the disk distance over `ω ± dω`, `s ± 2ds` around a near miss.
fn refine_hit(gamma: f64, p: Complex64, omega: f64, s: f64, spec: &GridSpec) -> (f64, f64, f64) {
    let (dw, ds) = (spec.omega_step(), spec.s_step());
    let inner = |w: f64| -> (f64, f64) {
        match ExtremalLaw::new(gamma, w, 0.0) {
            Ok(law) => golden_section_min(
                |x| (law.entry11(x) - p).norm(),
                (s - 2.0 * ds).max(0.0),
                s + 2.0 * ds,
                1e-14,
            ),
            Err(_) => (s, f64::INFINITY),
        }
    };
    let (w, d) = golden_section_min(|w| inner(w).1, omega - dw, omega + dw, 1e-14);
    newton_onto(gamma, p, w, inner(w).0, d)
}

/// Newton steps on `α(ω, s) = p` from a refined near miss; the nested
/// golden-section search alone stalls where neighbouring curves are nearly
/// tangent. Keeps the best iterate.
fn newton_onto(gamma: f64, p: Complex64, omega: f64, s: f64, dist: f64) -> (f64, f64, f64) {
    let mut best = (omega, s, dist);
    let (mut w, mut s) = (omega, s);
    for _ in 0..20 {
        let Ok(law) = ExtremalLaw::new(gamma, w, 0.0) else { break };
        let r = law.entry11(s) - p;
        let (js, jw) = (law.disk_velocity(s), law.disk_omega_derivative(s));
        let det = js.re * jw.im - js.im * jw.re;
        if !(det.abs() > 1e-300) {
            break;
        }
        s += (-r.re * jw.im + r.im * jw.re) / det;
        w += (-js.re * r.im + js.im * r.re) / det;
        let Ok(next) = ExtremalLaw::new(gamma, w, 0.0) else { break };
        let d = (next.entry11(s) - p).norm();
        if !(d < best.2) || s < 0.0 {
            break;
        }
        best = (w, s, d);
    }
    best
}

/// Brute-force minimum time over the grid of disk curves.
///
/// Every grid row's local distance minima within `tol_hit` of the target's
/// disk point are refined in `(ω, s)`; those that converge onto the target
/// (within [`GRID_REFINED_HIT`]) are genuine passes, and the earliest one is
/// returned. Rows run in parallel and the reduction takes the smallest
/// `(s, ω)` pair, so the result does not depend on scheduling.
pub fn grid_minimality(gamma: f64, target: &Su2Matrix, spec: &GridSpec) -> Result<GridResult> {
    check_gamma(gamma)?;
    if spec.n_omega < 2 || spec.n_s < 3 || !(spec.s_max > 0.0) {
        return Err(Error::InvalidArgument("grid needs n_omega ≥ 2, n_s ≥ 3, s_max > 0".into()));
    }
    let p = target.alpha();
    let (w0, w1) = spec.omega_range;
    (0..spec.n_omega)
        .into_par_iter()
        .filter_map(|i| {
            let w = w0 + (w1 - w0) * i as f64 / (spec.n_omega - 1) as f64;
            let law = ExtremalLaw::new(gamma, w, 0.0).ok()?;
            near_misses(&law, p, spec).into_iter().find_map(|s| {
                let (w, s, d) = refine_hit(gamma, p, w, s, spec);
                (d <= GRID_REFINED_HIT).then_some((s, w, d))
            })
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)))
        .map(|(s, omega, distance)| GridResult {
            omega,
            s,
            t_grid: s,
            distance,
        })
        .ok_or(Error::NotFound { tol_hit: spec.tol_hit })
}

/// Outcome of one sampled check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but do not fail the report.
    pub asserted: bool,
    pub detail: String,
}

impl Check {
    pub fn asserted(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            asserted: true,
            detail,
        }
    }

    pub fn informational(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            asserted: false,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub gamma: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.asserted)
    }
}

/// Default samples for [`verify_facts`]: frequencies spread over both
/// optimal families and beyond, and a curve-time resolution.
pub fn default_fact_samples(gamma: f64) -> Result<(Vec<f64>, usize)> {
    let k = ModelConstants::new(gamma)?;
    let mut omegas = vec![-5.0, -2.0, -1.0, -0.3, 0.0, 0.3];
    omegas.extend([0.6, 0.9, 0.99].map(|f| f * k.omega_star));
    omegas.extend([1.1, 1.3, 1.5, 1.7, 1.9].map(|f| f * k.omega_star));
    omegas.extend([1.0, 2.5, 4.0]);
    omegas.sort_by(f64::total_cmp);
    omegas.dedup();
    Ok((omegas, 400))
}

/// Samples the qualitative facts about the disk curves:
///
/// 1. `r` decreases on `[0, π/2a]` and increases on `[π/2a, π/a]`;
/// 2. the phase increases for `ω ≤ 1` and `ω ≥ ω_c` (not asserted in between);
/// 4. the zero-control arc from a boundary point stays on the unit circle
///    and is slower than the optimal law;
/// 6. distinct optimal curves do not intersect before losing optimality.
pub fn verify_facts(gamma: f64, omega_samples: &[f64], s_samples: usize) -> Result<Report> {
    let k = ModelConstants::new(gamma)?;
    let n = s_samples.max(8);
    let mut checks = Vec::new();

    // Fact 1
    let mut worst = 0.0f64;
    for &w in omega_samples {
        let law = ExtremalLaw::new(gamma, w, 0.0)?;
        let half = law.min_radius_time();
        let mut prev = law.radius_sq(0.0);
        for j in 1..=2 * n {
            let s = half * j as f64 / n as f64;
            let r2 = law.radius_sq(s);
            let step = if j <= n { r2 - prev } else { prev - r2 };
            worst = worst.max(step);
            prev = r2;
        }
    }
    checks.push(Check::asserted(
        "fact1_radius_monotone",
        worst <= 1e-15,
        format!("largest wrong-way radius step {worst:.3e}"),
    ));

    // Fact 2
    let rate_min = |w: f64| -> Result<f64> {
        let law = ExtremalLaw::new(gamma, w, 0.0)?;
        let end = law.boundary_time();
        Ok((0..=n)
            .map(|j| law.phase_rate(end * j as f64 / n as f64))
            .fold(f64::INFINITY, f64::min))
    };
    let mut min_rate = f64::INFINITY;
    for &w in omega_samples.iter().filter(|&&w| w <= 1.0 || w >= k.omega_c) {
        min_rate = min_rate.min(rate_min(w)?);
    }
    checks.push(Check::asserted(
        "fact2_phase_increasing",
        min_rate > 0.0,
        format!("smallest phase rate for ω ≤ 1 or ω ≥ ω_c: {min_rate:.6e}"),
    ));
    let mut between = Vec::new();
    for i in 1..20 {
        let w = 1.0 + (k.omega_c - 1.0) * i as f64 / 20.0;
        if rate_min(w)? < 0.0 {
            between.push(w);
        }
    }
    checks.push(Check::informational(
        "fact2_rate_sign_between_1_and_omega_c",
        true,
        format!(
            "{} of 19 sampled ω in (1, ω_c) have a negative phase rate somewhere",
            between.len()
        ),
    ));

    // Fact 4
    let mut off_circle = 0.0f64;
    let mut slower = true;
    for i in 1..32 {
        let psi = TAU * i as f64 / 32.0;
        let x1 = Su2Matrix::diagonal(psi);
        // zero control: X(s) = e^{2σ_z s} X_1, the (1,1) entry is e^{i(ψ + s)}
        for j in 0..=n {
            let s = TAU * j as f64 / n as f64;
            let alpha = Complex64::from_polar(1.0, s) * x1.alpha();
            off_circle = off_circle.max((alpha.norm() - 1.0).abs());
        }
        slower &= t_min(gamma, psi) < psi;
    }
    checks.push(Check::asserted(
        "fact4_singular_arc_on_boundary",
        off_circle <= 1e-15 && slower,
        format!("max | |α| - 1 | = {off_circle:.3e}; optimal time below singular time: {slower}"),
    ));

    // Fact 6
    let mut curves = Vec::new();
    for &w in omega_samples.iter().filter(|&&w| w <= k.omega_c) {
        let horizon = optimality_horizon(gamma, w)?;
        let law = ExtremalLaw::new(gamma, w, 0.0)?;
        let dense = 8 * n;
        let pts: Vec<DiskPoint> = (0..=dense)
            .map(|j| law.disk_curve(horizon * j as f64 / dense as f64))
            .collect();
        curves.push((law, horizon / dense as f64, pts));
    }
    // all curves leave (1, 0) tangent to each other and agree to third order
    // in s, so the neighbourhood of the start is left out, and polyline
    // crossings are confirmed by local re-sampling
    let exclusion = 0.2;
    let pairs: Vec<(usize, usize)> = (0..curves.len())
        .flat_map(|i| (i + 1..curves.len()).map(move |j| (i, j)))
        .collect();
    let crossings: Vec<(f64, f64)> = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let (a, b) = (&curves[i], &curves[j]);
            polyline_crossings(&a.2, &b.2, exclusion)
                .into_iter()
                .any(|(ia, ib)| {
                    let win = |k: usize, h: f64| (k as f64 * h, (k + 1) as f64 * h);
                    confirm_crossing(&a.0, &b.0, win(ia, a.1), win(ib, b.1), 3)
                })
        })
        .map(|&(i, j)| (curves[i].0.omega(), curves[j].0.omega()))
        .collect();
    // Below 1/√3 the inside-family horizons are conjectural, so crossings
    // between two inside curves are reported without failing the suite.
    let inside = |w: f64| w > k.omega_star && w <= k.omega_c;
    let (conjectural, asserted): (Vec<(f64, f64)>, Vec<(f64, f64)>) = crossings
        .into_iter()
        .partition(|&(w1, w2)| !k.proven_regime() && inside(w1) && inside(w2));
    let describe = |found: &[(f64, f64)]| {
        if found.is_empty() {
            format!("{} curve pairs, no crossings away from (1, 0)", pairs.len())
        } else {
            format!("crossing pairs (ω, ω'): {found:?}")
        }
    };
    checks.push(Check::asserted(
        "fact6_optimal_curves_disjoint",
        asserted.is_empty(),
        describe(&asserted),
    ));
    if !k.proven_regime() {
        checks.push(Check::informational(
            "fact6_inside_family_unproven_regime",
            conjectural.is_empty(),
            describe(&conjectural),
        ));
    }

    Ok(Report {
        suite: "facts".into(),
        gamma,
        checks,
    })
}

fn segments_cross(p1: DiskPoint, p2: DiskPoint, q1: DiskPoint, q2: DiskPoint) -> bool {
    let orient = |a: DiskPoint, b: DiskPoint, c: DiskPoint| (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Segment index pairs at which two polylines cross properly, ignoring
/// segments within `exclusion` of the common start `(1, 0)`. Segments are
/// grouped in blocks whose bounding boxes are compared first.
fn polyline_crossings(a: &[DiskPoint], b: &[DiskPoint], exclusion: f64) -> Vec<(usize, usize)> {
    const BLOCK: usize = 32;
    let far = |p: &DiskPoint| p.dist(&DiskPoint::START) > exclusion;
    let blocks = |pts: &[DiskPoint]| -> Vec<(usize, usize, [f64; 4])> {
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < pts.len() {
            let j = (i + BLOCK).min(pts.len() - 1);
            let mut bb = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
            for p in &pts[i..=j] {
                bb = [bb[0].min(p.x), bb[1].max(p.x), bb[2].min(p.y), bb[3].max(p.y)];
            }
            out.push((i, j, bb));
            i = j;
        }
        out
    };
    let (ba, bb) = (blocks(a), blocks(b));
    let mut out = Vec::new();
    for &(i0, i1, ra) in &ba {
        for &(j0, j1, rb) in &bb {
            if ra[1] < rb[0] || rb[1] < ra[0] || ra[3] < rb[2] || rb[3] < ra[2] {
                continue;
            }
            for i in i0..i1 {
                if !far(&a[i]) || !far(&a[i + 1]) {
                    continue;
                }
                for j in j0..j1 {
                    if far(&b[j]) && far(&b[j + 1]) && segments_cross(a[i], a[i + 1], b[j], b[j + 1]) {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out
}

/// Re-samples both curves 64× more finely around a polyline crossing, three
/// times over. Crossings produced by chord error between near-tangent curves
/// vanish once the chord sagitta falls below the curves' separation; genuine
/// crossings persist.
fn confirm_crossing(l1: &ExtremalLaw, l2: &ExtremalLaw, w1: (f64, f64), w2: (f64, f64), depth: u32) -> bool {
    const N: usize = 64;
    if depth == 0 {
        return true;
    }
    let sample = |l: &ExtremalLaw, (lo, hi): (f64, f64)| -> Vec<DiskPoint> {
        (0..=N).map(|j| l.disk_curve(lo + (hi - lo) * j as f64 / N as f64)).collect()
    };
    let (a, b) = (sample(l1, w1), sample(l2, w2));
    let (h1, h2) = ((w1.1 - w1.0) / N as f64, (w2.1 - w2.0) / N as f64);
    polyline_crossings(&a, &b, 0.0).into_iter().take(4).any(|(i, j)| {
        let win = |lo: f64, h: f64, k: usize| (lo + h * k as f64, lo + h * (k + 1) as f64);
        confirm_crossing(l1, l2, win(w1.0, h1, i), win(w2.0, h2, j), depth - 1)
    })
}

/// Closed-form state vs RK4 for one law; largest entrywise difference.
pub fn closed_form_gap(law: &ExtremalLaw, s_final: f64, steps: usize) -> f64 {
    let exact = law.propagate(s_final);
    let numeric = rk4_propagate(law, s_final, steps);
    (exact.alpha() - numeric.alpha())
        .norm()
        .max((exact.beta() - numeric.beta()).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn rk4_matches_closed_form() {
        let law = ExtremalLaw::new(1.0, 1.0, 0.0).unwrap();
        assert!(closed_form_gap(&law, FRAC_PI_2, 20_000) < 1e-8);
        assert_eq!(rk4_propagate(&law, 0.0, 10), Su2Matrix::identity());
        let law = ExtremalLaw::new(0.5, 1.0, 0.0).unwrap();
        let x = rk4_propagate(&law, PI, 50_000);
        // resonance at γ = 1/2: α = e^{iπ} cos(π/2) = 0, |β| = sin(π/2)
        assert!(x.alpha().norm() < 1e-9);
        assert!((x.beta().norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pmp_residual_small_for_matched_adjoint() {
        let law = ExtremalLaw::new(1.0, 1.0, 0.0).unwrap();
        let r = pmp_residual(&law, FRAC_PI_2, AdjointState::matched(&law), 20_000).unwrap();
        assert!(r.max_drift_bz < 1e-7 && r.max_drift_h < 1e-7 && r.max_control_mismatch < 1e-7, "{r:?}");
        let law = ExtremalLaw::new(0.6, -0.7, 1.3).unwrap();
        let r = pmp_residual(&law, 3.0, AdjointState::matched(&law), 20_000).unwrap();
        assert!(r.max_drift_bz < 1e-7 && r.max_drift_h < 1e-7 && r.max_control_mismatch < 1e-7, "{r:?}");
    }

    #[test]
    fn singular_adjoint_detected() {
        let law = ExtremalLaw::new(1.0, 0.0, 0.0).unwrap();
        let b0 = AdjointState {
            b_x: 0.0,
            b_y: 0.0,
            b_z: 1.0,
        };
        assert!(matches!(pmp_residual(&law, 1.0, b0, 10), Err(Error::SingularAdjoint { .. })));
    }

    #[test]
    fn grid_finds_swap_time() {
        let g = 0.5;
        let k = ModelConstants::new(g).unwrap();
        let spec = GridSpec {
            omega_range: (k.omega_star, k.omega_c),
            s_max: 4.0,
            n_omega: 101,
            n_s: 801,
            tol_hit: 2e-2,
        };
        let r = grid_minimality(g, &Su2Matrix::swap(), &spec).unwrap();
        assert!((r.t_grid - PI).abs() < 2e-3, "{r:?}");
    }

    #[test]
    fn grid_reports_not_found() {
        let spec = GridSpec {
            omega_range: (0.0, 0.1),
            s_max: 0.1,
            n_omega: 5,
            n_s: 5,
            tol_hit: 1e-6,
        };
        assert!(matches!(
            grid_minimality(1.0, &Su2Matrix::swap(), &spec),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn facts_pass_for_gamma_one() {
        let (ws, n) = default_fact_samples(1.0).unwrap();
        let r = verify_facts(1.0, &ws, n).unwrap();
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn segment_crossing() {
        let p = DiskPoint::new;
        assert!(segments_cross(p(0.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), p(1.0, 0.0)));
        assert!(!segments_cross(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)));
    }
}
