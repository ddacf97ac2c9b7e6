//! Time-optimal synthesis: target gate to optimal extremal `(ω, s, φ̃)`.
//!
//! Diagonal targets use closed forms. Other targets are reduced to their
//! disk point and solved by a phase-matching root search over the family
//! that covers their region: `ω < ω*` outside the separatrix, `ω ∈ [ω*, ω_c]`
//! inside it. The phase `φ̃` is fixed last so that the off-diagonal entry
//! matches too.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{check_gamma, ExtremalLaw, ModelConstants};
use crate::geometry::{self, classify, critical_crossing_time, separatrix_time, Region, DEFAULT_TOL};
use crate::oracle::{self, GridSpec};
use crate::roots::bisect;
use crate::su2::{lift_angle, DiskPoint, Su2Matrix};

/// Residual accepted for a synthesized law.
pub const RESIDUAL_TOL: f64 = 1e-9;

const BISECTION_XTOL: f64 = 1e-13;
const PSI_MARGIN: f64 = 1e-6;
const SCAN_SAMPLES: usize = 400;
const CANDIDATE_TOL: f64 = 1e-10;
const SAME_OMEGA: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisResult {
    pub omega: f64,
    pub s_final: f64,
    pub phi_tilde: f64,
    /// `φ̃` does not affect the final state (diagonal target).
    pub phase_free: bool,
    pub t_curve: f64,
    pub t_physical: f64,
    pub region: Region,
    /// Distance between the propagated state and the target.
    pub residual: f64,
    pub unproven_regime: bool,
    /// Brute-force cross-check, run for inside targets when `γ < 1/√3`.
    pub grid_check: Option<GridCheck>,
}

impl SynthesisResult {
    pub fn law(&self, gamma: f64) -> Result<ExtremalLaw> {
        ExtremalLaw::new(gamma, self.omega, self.phi_tilde)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCheck {
    /// Earliest grid pass through the target, `None` if the grid found none.
    pub omega: Option<f64>,
    pub t_grid: Option<f64>,
    /// `t_grid` is no smaller than the synthesized time minus two grid steps.
    pub consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisOptions {
    pub residual_tol: f64,
    pub classify_tol: f64,
    pub grid_check_unproven: bool,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            residual_tol: RESIDUAL_TOL,
            classify_tol: DEFAULT_TOL,
            grid_check_unproven: true,
        }
    }
}

/// Optimal time `T_{1,0}(ψ_f)` to the diagonal target `diag(e^{iψ_f}, e^{-iψ_f})`.
pub fn t_min(gamma: f64, psi_f: f64) -> f64 {
    let u = psi_f * (TAU - psi_f);
    let root = (PI * PI + gamma * gamma * u).sqrt();
    if psi_f <= PI {
        u / (PI - psi_f + root)
    } else {
        // same value, rearranged to avoid cancellation for ψ_f > π
        (root + psi_f - PI) / (1.0 + gamma * gamma)
    }
}

/// Frequency of the optimal law for a diagonal target.
pub fn omega_opt(gamma: f64, psi_f: f64) -> f64 {
    let x = (psi_f - PI) / PI;
    let root = (1.0 + gamma * gamma * (1.0 - x * x)).sqrt();
    if x <= 0.0 {
        x / (1.0 - x * x) * (root - x)
    } else {
        x * (1.0 + gamma * gamma) / (root + x)
    }
}

/// Boundary phase reached by the `ω` extremal at `s = π/a`; inverse of
/// [`omega_opt`] for `ω < ω_c`.
pub fn psi_of_omega(gamma: f64, omega: f64) -> f64 {
    PI * (1.0 + omega / (1.0 - omega).hypot(gamma))
}

pub fn synth_diagonal(gamma: f64, psi_f: f64) -> Result<SynthesisResult> {
    check_gamma(gamma)?;
    if psi_f == 0.0 || psi_f == TAU {
        return Err(Error::DegeneratePhase(psi_f));
    }
    if !(0.0..TAU).contains(&psi_f) {
        return Err(Error::InvalidArgument(format!("psi_f = {psi_f} outside (0, 2π)")));
    }
    let omega = omega_opt(gamma, psi_f);
    let t = t_min(gamma, psi_f);
    let law = ExtremalLaw::new(gamma, omega, 0.0)?;
    let residual = law.propagate(t).distance(&Su2Matrix::diagonal(psi_f));
    Ok(SynthesisResult {
        omega,
        s_final: t,
        phi_tilde: 0.0,
        phase_free: true,
        t_curve: t,
        t_physical: 2.0 * t,
        region: Region::Boundary,
        residual,
        unproven_regime: false,
        grid_check: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TkmRoot {
    pub omega: f64,
    pub t: f64,
}

/// Extremals reaching `diag(e^{iψ}, ·)` on the boundary after `k`
/// half-turns with `m` extra windings of the phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TkmSolution {
    pub k: u32,
    pub m: u32,
    pub roots: Vec<TkmRoot>,
}

impl TkmSolution {
    pub fn min_time(&self) -> Option<f64> {
        self.roots.iter().map(|r| r.t).reduce(f64::min)
    }
}

/// Solves `1 + ω/a(ω) = (ψ_f + 2mπ)/(kπ)`, each root reaching the target at
/// `T = kπ/a`. Infeasible `(k, m)` give an empty root set.
pub fn solve_tkm(gamma: f64, psi_f: f64, k: u32, m: u32) -> Result<TkmSolution> {
    check_gamma(gamma)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if !(psi_f > 0.0 && psi_f < TAU) {
        return Err(Error::InvalidArgument(format!("psi_f = {psi_f} outside (0, 2π)")));
    }
    let q = (psi_f + TAU * m as f64) / (PI * k as f64);
    let q_max = 1.0 + (1.0 + gamma * gamma).sqrt() / gamma;
    let mut roots = Vec::new();
    if q > 0.0 && q <= q_max * (1.0 + 1e-14) {
        let alpha = q - 1.0;
        let a2 = alpha * alpha;
        // ω² (1 - α²) + 2α² ω - α² (1 + γ²) = 0, with sign(ω) = sign(α)
        let (qa, qb, qc) = (1.0 - a2, 2.0 * a2, -a2 * (1.0 + gamma * gamma));
        let mut cands = Vec::new();
        if alpha == 0.0 {
            cands.push(0.0);
        } else if qa.abs() < 1e-14 {
            cands.push(-qc / qb);
        } else {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= -1e-14 * qb * qb {
                let sq = disc.max(0.0).sqrt();
                // numerically stable pair
                let t = -0.5 * (qb + qb.signum() * sq);
                cands.push(t / qa);
                if t != 0.0 {
                    cands.push(qc / t);
                }
            }
        }
        for w in cands {
            if w.signum() != alpha.signum() && w != 0.0 {
                continue;
            }
            let a = (1.0 - w).hypot(gamma);
            if (1.0 + w / a - q).abs() > 1e-10 * q.max(1.0) {
                continue;
            }
            if roots.iter().any(|r: &TkmRoot| (r.omega - w).abs() < 1e-12 * w.abs().max(1.0)) {
                continue;
            }
            roots.push(TkmRoot {
                omega: w,
                t: PI * k as f64 / a,
            });
        }
    }
    Ok(TkmSolution { k, m, roots })
}

/// `T_{k,0}` in closed form.
pub fn t_k0(gamma: f64, psi_f: f64, k: u32) -> f64 {
    let k = k as f64;
    let u = psi_f * (TAU * k - psi_f);
    let root = (k * k * PI * PI + gamma * gamma * u).sqrt();
    u / (k * PI - psi_f + root)
}

/// Curve times at which the extremal has radius `r_target`, on its
/// descending and ascending branch.
pub fn radius_crossing_times(law: &ExtremalLaw, r_target: f64) -> Result<(f64, f64)> {
    let m = (1.0 - r_target * r_target).max(0.0).sqrt();
    crossing_times(law, m).ok_or(Error::Unreachable {
        omega: law.omega(),
        radius: r_target,
    })
}

/// Crossing times in terms of the off-diagonal magnitude `m = √(1 - r²)`,
/// which is better conditioned near the boundary.
fn crossing_times(law: &ExtremalLaw, m: f64) -> Option<(f64, f64)> {
    let x = law.a() * m / law.gamma();
    if x > 1.0 + 1e-12 {
        return None;
    }
    let s = x.min(1.0).asin() / law.a();
    Some((s, law.boundary_time() - s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Descending,
    Ascending,
}

/// Extremal of a family passing through the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub omega: f64,
    pub s: f64,
    pub branch: Branch,
    /// `|α(s) - α_P|`.
    pub error: f64,
}

/// Target reduced to its `(1,1)` entry and off-diagonal magnitude.
#[derive(Debug, Clone, Copy)]
struct DiskTarget {
    alpha: Complex64,
    m: f64,
}

impl DiskTarget {
    fn from_matrix(x: &Su2Matrix) -> Self {
        Self {
            alpha: x.alpha(),
            m: x.beta().norm(),
        }
    }

    fn from_point(p: DiskPoint) -> Self {
        Self {
            alpha: p.to_complex(),
            m: (1.0 - p.r_sq()).max(0.0).sqrt(),
        }
    }

    fn point(&self) -> DiskPoint {
        DiskPoint::from_complex(self.alpha)
    }
}

/// Phase mismatch `arg(α(s_b) ᾱ_P) ∈ (-π, π]` on one branch.
fn phase_error(gamma: f64, t: &DiskTarget, omega: f64, branch: Branch) -> Option<(f64, f64)> {
    let law = ExtremalLaw::new(gamma, omega, 0.0).ok()?;
    let (sd, sa) = crossing_times(&law, t.m)?;
    let s = match branch {
        Branch::Descending => sd,
        Branch::Ascending => sa,
    };
    Some(((law.entry11(s) * t.alpha.conj()).arg(), s))
}

/// Residual `(Re Δα, Im Δα, |β| - m)` of the `ω` extremal at `s`; its norm
/// is the final-state distance once `φ̃` is matched.
fn state_residual(law: &ExtremalLaw, t: &DiskTarget, s: f64) -> [f64; 3] {
    let d = law.entry11(s) - t.alpha;
    let beta = law.gamma() / law.a() * (law.a() * s).sin();
    [d.re, d.im, beta - t.m]
}

fn norm3(r: [f64; 3]) -> f64 {
    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
}

/// Gauss-Newton on the full state residual in `(ω, s)`; returns the best
/// iterate and its residual norm. Matching `|β|` as well as `α` keeps the
/// problem well conditioned near the boundary, where `|β|` is small.
fn polish(gamma: f64, t: &DiskTarget, omega: f64, s0: f64) -> (f64, f64, f64) {
    let s = s0;
    let err = |w: f64, s: f64| match ExtremalLaw::new(gamma, w, 0.0) {
        Ok(l) => norm3(state_residual(&l, t, s)),
        Err(_) => f64::INFINITY,
    };
    let mut best = (omega, s, err(omega, s));
    let (mut w, mut s) = (omega, s);
    for _ in 0..16 {
        if best.2 < 1e-16 {
            break;
        }
        let Ok(law) = ExtremalLaw::new(gamma, w, 0.0) else { break };
        let r = state_residual(&law, t, s);
        let (a, b) = (law.a(), law.b());
        let (sin, cos) = (a * s).sin_cos();
        let ds = law.disk_velocity(s);
        let dw = law.disk_omega_derivative(s);
        let da = -b / a;
        let js = [ds.re, ds.im, gamma * cos];
        let jw = [dw.re, dw.im, gamma * da * (a * s * cos - sin) / (a * a)];
        let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        let (ss, sw, ww) = (dot(js, js), dot(js, jw), dot(jw, jw));
        let (gs, gw) = (dot(js, r), dot(jw, r));
        let det = ss * ww - sw * sw;
        if !(det.abs() > 1e-300) {
            break;
        }
        s -= (ww * gs - sw * gw) / det;
        w -= (ss * gw - sw * gs) / det;
        // the start is a bracketed root; a large step means the iteration
        // is heading for a different solution
        if (w - omega).abs() > 1e-4 * (1.0 + omega.abs()) || (s - s0).abs() > 1e-4 * (1.0 + s0) {
            break;
        }
        let e = err(w, s);
        if !(e < best.2) {
            break;
        }
        best = (w, s, e);
    }
    best
}

/// Brackets of sign changes of `f` on `[lo, hi]`, sampled adaptively so that
/// consecutive samples differ by less than a fixed phase step. Jumps of the
/// wrapped phase (differences near 2π) are not reported.
fn scan_sign_changes<F>(f: &F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> Option<f64>,
{
    fn refine<F: Fn(f64) -> Option<f64>>(
        f: &F,
        (t0, e0): (f64, f64),
        (t1, e1): (f64, f64),
        depth: u32,
        out: &mut Vec<(f64, f64)>,
    ) {
        if depth < 30 && (e1 - e0).abs() > 0.25 {
            let tm = 0.5 * (t0 + t1);
            if let Some(em) = f(tm) {
                refine(f, (t0, e0), (tm, em), depth + 1, out);
                refine(f, (tm, em), (t1, e1), depth + 1, out);
                return;
            }
        }
        let straddles = (e0 <= 0.0 && e1 > 0.0) || (e0 >= 0.0 && e1 < 0.0);
        if straddles && (e1 - e0).abs() < PI {
            out.push((t0, t1));
        }
    }
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let t = lo + (hi - lo) * i as f64 / n as f64;
        let cur = f(t).map(|e| (t, e));
        if let (Some(p), Some(c)) = (prev, cur) {
            refine(f, p, c, 0, &mut out);
        }
        prev = cur;
    }
    out.dedup();
    out
}

/// All extremals `ω = omega_of(t)`, `t ∈ [lo, hi]`, that reach the target
/// within the first half-period `s ≤ π/a`.
///
/// The two radius branches meet where the target radius is the curve's
/// minimum, which is an end of the feasible range. Each scan walks one
/// branch and returns along the other, so a root at the meeting point is
/// interior to one of the two paths.
fn find_candidates<W>(gamma: f64, t: &DiskTarget, lo: f64, hi: f64, omega_of: W) -> Vec<Candidate>
where
    W: Fn(f64) -> f64,
{
    let width = hi - lo;
    // u ∈ [0, 2]; `join_hi` paths turn around at `hi`, the others at `lo`
    let locate = |u: f64, join_hi: bool| -> (f64, Branch) {
        match (join_hi, u <= 1.0) {
            (true, true) => (lo + u * width, Branch::Descending),
            (true, false) => (hi - (u - 1.0) * width, Branch::Ascending),
            (false, true) => (hi - u * width, Branch::Ascending),
            (false, false) => (lo + (u - 1.0) * width, Branch::Descending),
        }
    };
    let mut found: Vec<Candidate> = Vec::new();
    for join_hi in [true, false] {
        let e = |u: f64| {
            let (p, branch) = locate(u, join_hi);
            phase_error(gamma, t, omega_of(p), branch).map(|(e, _)| e)
        };
        for (u0, u1) in scan_sign_changes(&e, 0.0, 2.0, 2 * SCAN_SAMPLES) {
            let Ok(u) = bisect(|u| e(u).unwrap_or(f64::NAN), u0, u1, BISECTION_XTOL) else {
                continue;
            };
            let (p, branch) = locate(u, join_hi);
            let omega = omega_of(p);
            let Some((_, s)) = phase_error(gamma, t, omega, branch) else { continue };
            let (omega, s, error) = polish(gamma, t, omega, s);
            if error > CANDIDATE_TOL {
                continue;
            }
            // near (1, 0) the curves nearly coincide and one root can be
            // reached from several brackets with ω differing in late digits
            let dup = found
                .iter()
                .any(|c| (c.omega - omega).abs() <= SAME_OMEGA && (c.s - s).abs() < 1e-9);
            if !dup {
                found.push(Candidate {
                    omega,
                    s,
                    branch,
                    error,
                });
            }
        }
    }
    found
}

/// Largest `ω` tolerance for which a target with off-diagonal magnitude
/// `m` is reachable: `|1 - ω| ≤ γ √(1 - m²) / m`.
fn reach_half_width(gamma: f64, m: f64) -> f64 {
    if m <= 0.0 {
        f64::INFINITY
    } else {
        gamma * (1.0 - m * m).max(0.0).sqrt() / m
    }
}

fn earliest(mut cands: Vec<Candidate>) -> Result<Candidate> {
    cands.sort_by(|a, b| a.s.total_cmp(&b.s));
    match cands.as_slice() {
        [] => Err(Error::NoConvergence(
            "no extremal of the family reaches the target".into(),
        )),
        [first, second, ..] if (second.s - first.s).abs() < 1e-12 && (second.omega - first.omega).abs() > SAME_OMEGA => {
            Err(Error::AmbiguousBranch {
                omega_a: first.omega,
                omega_b: second.omega,
            })
        }
        [first, ..] => Ok(*first),
    }
}

/// Curve time after which the `ω` extremal is no longer optimal: the
/// boundary for `ω ≤ ω*`, the first meeting with the critical trajectory for
/// `ω ∈ (ω*, ω_c]`.
pub fn optimality_horizon(gamma: f64, omega: f64) -> Result<f64> {
    let k = ModelConstants::new(gamma)?;
    let law = ExtremalLaw::new(gamma, omega, 0.0)?;
    if omega <= k.omega_star {
        return Ok(law.boundary_time());
    }
    Ok(critical_crossing_time(&law)?.unwrap_or(law.boundary_time()))
}

/// Extremals with `ω < ω*` through `p`, before they reach the boundary.
pub fn outside_candidates(gamma: f64, p: DiskPoint) -> Result<Vec<Candidate>> {
    outside_candidates_for(gamma, &DiskTarget::from_point(p))
}

fn outside_candidates_for(gamma: f64, t: &DiskTarget) -> Result<Vec<Candidate>> {
    let k = ModelConstants::new(gamma)?;
    let w_lo = 1.0 - reach_half_width(gamma, t.m);
    let psi_lo = if w_lo.is_finite() {
        psi_of_omega(gamma, w_lo).max(PSI_MARGIN)
    } else {
        PSI_MARGIN
    };
    let psi_hi = TAU - PSI_MARGIN;
    let cands = find_candidates(gamma, t, psi_lo, psi_hi, |psi| omega_opt(gamma, psi).max(w_lo));
    Ok(cands
        .into_iter()
        .filter(|c| {
            let a = (1.0 - c.omega).hypot(gamma);
            c.omega < k.omega_star + 1e-12 && c.s <= PI / a + 1e-12
        })
        .collect())
}

/// Extremals with `ω ∈ [ω*, ω_c]` through `p` within `s ≤ π/a`, whether or
/// not they are still optimal there.
pub fn inside_candidates(gamma: f64, p: DiskPoint) -> Result<Vec<Candidate>> {
    inside_candidates_for(gamma, &DiskTarget::from_point(p))
}

fn inside_candidates_for(gamma: f64, t: &DiskTarget) -> Result<Vec<Candidate>> {
    let k = ModelConstants::new(gamma)?;
    let half = reach_half_width(gamma, t.m);
    let lo = k.omega_star.max(1.0 - half);
    let hi = k.omega_c.min(1.0 + half);
    if lo > hi {
        return Ok(Vec::new());
    }
    Ok(find_candidates(gamma, t, lo, hi, |w| w))
}

struct Solved {
    omega: f64,
    s: f64,
}

impl Solved {
    fn from(c: Candidate) -> Self {
        Self {
            omega: c.omega,
            s: c.s,
        }
    }

    fn residual(&self, gamma: f64, t: &DiskTarget) -> f64 {
        ExtremalLaw::new(gamma, self.omega, 0.0)
            .map_or(f64::INFINITY, |l| norm3(state_residual(&l, t, self.s)))
    }
}

fn admissible_inside(gamma: f64, t: &DiskTarget) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for c in inside_candidates_for(gamma, t)? {
        if c.s <= optimality_horizon(gamma, c.omega)? + 1e-9 {
            out.push(c);
        }
    }
    Ok(out)
}

/// Closed-form answers for the special inside loci, if the target is one.
fn special_inside(gamma: f64, t: &DiskTarget, region: Region) -> Result<Option<Solved>> {
    let k = ModelConstants::new(gamma)?;
    // the origin is reached only at resonance
    if t.alpha.norm() <= 1e-13 {
        return Ok(Some(Solved {
            omega: 1.0,
            s: PI / (2.0 * gamma),
        }));
    }
    Ok(match region {
        Region::OnCriticalTrajectory => {
            let lambda = (t.m * (1.0 + gamma * gamma).sqrt()).min(1.0);
            Some(Solved {
                omega: k.omega_c,
                s: lambda.asin() / k.a_c,
            })
        }
        Region::OnSeparatrix => {
            let s0 = separatrix_time(gamma, t.point())?;
            let (w, s, _) = polish(gamma, t, k.omega_star, s0);
            // keep the polished iterate only if it stays on this curve
            Some(if (w - k.omega_star).abs() < 1e-6 {
                Solved { omega: w, s }
            } else {
                Solved {
                    omega: k.omega_star,
                    s: s0,
                }
            })
        }
        _ => None,
    })
}

/// Solves for a disk target in the family of its region. Close to `(1, 0)`
/// all curves agree to high order and the region test can pick the wrong
/// side of the separatrix; if the region's answer misses the target, both
/// families are searched and the earliest admissible candidate wins.
fn solve_disk(gamma: f64, t: &DiskTarget, region: Region, tol: f64) -> Result<Solved> {
    let primary = if region == Region::OutsideSeparatrix {
        earliest(outside_candidates_for(gamma, t)?).map(Solved::from)
    } else {
        match special_inside(gamma, t, region)? {
            Some(s) if s.residual(gamma, t) <= tol => Ok(s),
            _ => earliest(admissible_inside(gamma, t)?).map(Solved::from),
        }
    };
    match primary {
        Ok(s) if s.residual(gamma, t) <= tol => Ok(s),
        Err(e @ Error::AmbiguousBranch { .. }) => Err(e),
        first => {
            let mut all = outside_candidates_for(gamma, t)?;
            all.extend(admissible_inside(gamma, t)?);
            match earliest(all) {
                Ok(c) => Ok(Solved::from(c)),
                Err(_) => first,
            }
        }
    }
}

fn disk_result(gamma: f64, solved: Solved, region: Region, target: Complex64) -> Result<SynthesisResult> {
    let k = ModelConstants::new(gamma)?;
    let law = ExtremalLaw::new(gamma, solved.omega, 0.0)?;
    Ok(SynthesisResult {
        omega: solved.omega,
        s_final: solved.s,
        phi_tilde: 0.0,
        phase_free: true,
        t_curve: solved.s,
        t_physical: 2.0 * solved.s,
        region,
        residual: (law.entry11(solved.s) - target).norm(),
        unproven_regime: region.is_inside_family() && !k.proven_regime(),
        grid_check: None,
    })
}

/// Optimal extremal to a disk point outside the separatrix. `φ̃` is left
/// at 0; use [`synthesize`] for a full matrix target.
pub fn synth_outside(gamma: f64, p: DiskPoint) -> Result<SynthesisResult> {
    let region = classify(gamma, p, DEFAULT_TOL)?;
    if region != Region::OutsideSeparatrix {
        return Err(Error::InvalidArgument(format!(
            "point ({}, {}) is classified {region:?}, not outside the separatrix",
            p.x, p.y
        )));
    }
    let t = DiskTarget::from_point(p);
    disk_result(gamma, solve_disk(gamma, &t, region, RESIDUAL_TOL)?, region, t.alpha)
}

/// Optimal extremal to a disk point on or inside the separatrix.
pub fn synth_inside(gamma: f64, p: DiskPoint) -> Result<SynthesisResult> {
    let region = classify(gamma, p, DEFAULT_TOL)?;
    if !region.is_inside_family() {
        return Err(Error::InvalidArgument(format!(
            "point ({}, {}) is classified {region:?}, not inside the separatrix",
            p.x, p.y
        )));
    }
    let t = DiskTarget::from_point(p);
    disk_result(gamma, solve_disk(gamma, &t, region, RESIDUAL_TOL)?, region, t.alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseChoice {
    pub phi_tilde: f64,
    /// The target is diagonal, so any `φ̃` reaches it.
    pub free: bool,
}

/// Phase `φ̃` that gives the final off-diagonal entry the argument of the
/// target's.
pub fn match_phase(gamma: f64, omega: f64, s_final: f64, target: &Su2Matrix) -> Result<PhaseChoice> {
    let law = ExtremalLaw::new(gamma, omega, 0.0)?;
    let beta = target.beta();
    if beta.norm() == 0.0 {
        return Ok(PhaseChoice {
            phi_tilde: 0.0,
            free: true,
        });
    }
    let flip = if (law.a() * s_final).sin() < 0.0 { PI } else { 0.0 };
    Ok(PhaseChoice {
        phi_tilde: lift_angle(beta.arg() - omega * s_final - flip),
        free: false,
    })
}

pub fn synthesize(gamma: f64, target: &Su2Matrix) -> Result<SynthesisResult> {
    synthesize_with(gamma, target, &SynthesisOptions::default())
}

pub fn synthesize_with(gamma: f64, target: &Su2Matrix, opts: &SynthesisOptions) -> Result<SynthesisResult> {
    let k = ModelConstants::new(gamma)?;
    let tol = opts.classify_tol;
    if target.distance(&Su2Matrix::identity()) <= tol {
        return Ok(SynthesisResult {
            omega: 0.0,
            s_final: 0.0,
            phi_tilde: 0.0,
            phase_free: true,
            t_curve: 0.0,
            t_physical: 0.0,
            region: Region::Identity,
            residual: target.distance(&Su2Matrix::identity()),
            unproven_regime: false,
            grid_check: None,
        });
    }
    let t = DiskTarget::from_matrix(target);
    if t.m <= tol {
        // diagonal class; the off-diagonal part is below tolerance
        let mut r = synth_diagonal(gamma, lift_angle(t.alpha.arg()))?;
        r.residual = r.law(gamma)?.propagate(r.s_final).distance(target);
        return check_residual(r, opts);
    }
    let p = t.point();
    let region = match classify(gamma, p, tol)? {
        // the magnitude test above decides the diagonal class; points this
        // close to the boundary or to (1, 0) still have a definite side
        Region::Boundary | Region::Identity => {
            if geometry::separatrix(gamma)?.signed_distance(&p) > 0.0 {
                Region::OutsideSeparatrix
            } else {
                Region::InsideSeparatrix
            }
        }
        r => r,
    };
    let solved = solve_disk(gamma, &t, region, opts.residual_tol)?;
    let phase = match_phase(gamma, solved.omega, solved.s, target)?;
    let law = ExtremalLaw::new(gamma, solved.omega, phase.phi_tilde)?;
    let unproven_regime = region.is_inside_family() && !k.proven_regime();
    let grid_check = if unproven_regime && opts.grid_check_unproven {
        Some(unproven_grid_check(gamma, target, solved.s)?)
    } else {
        None
    };
    let r = SynthesisResult {
        omega: solved.omega,
        s_final: solved.s,
        phi_tilde: phase.phi_tilde,
        phase_free: phase.free,
        t_curve: solved.s,
        t_physical: 2.0 * solved.s,
        region,
        residual: law.propagate(solved.s).distance(target),
        unproven_regime,
        grid_check,
    };
    check_residual(r, opts)
}

fn check_residual(r: SynthesisResult, opts: &SynthesisOptions) -> Result<SynthesisResult> {
    if r.residual <= opts.residual_tol {
        Ok(r)
    } else {
        Err(Error::NoConvergence(format!(
            "residual {:.3e} above tolerance {:.1e} (omega = {}, s = {})",
            r.residual, opts.residual_tol, r.omega, r.s_final
        )))
    }
}

fn unproven_grid_check(gamma: f64, target: &Su2Matrix, t_curve: f64) -> Result<GridCheck> {
    let k = ModelConstants::new(gamma)?;
    let spec = GridSpec {
        omega_range: (k.omega_star, k.omega_c),
        s_max: 1.25 * t_curve.max(PI / k.a_c),
        n_omega: 161,
        n_s: 801,
        tol_hit: 5e-2,
    };
    match oracle::grid_minimality(gamma, target, &spec) {
        Ok(g) => Ok(GridCheck {
            omega: Some(g.omega),
            t_grid: Some(g.t_grid),
            consistent: g.t_grid >= t_curve - 2.0 * spec.s_step(),
        }),
        Err(Error::NotFound { .. }) => Ok(GridCheck {
            omega: None,
            t_grid: None,
            consistent: false,
        }),
        Err(e) => Err(e),
    }
}

/// Standard targets by name.
pub fn named_gate(name: &str) -> Option<Su2Matrix> {
    match name {
        "identity" => Some(Su2Matrix::identity()),
        "swap" => Some(Su2Matrix::swap()),
        "hadamard" => Some(Su2Matrix::hadamard()),
        _ => None,
    }
}

/// Disk point of the Hadamard gate.
pub const HADAMARD_POINT: DiskPoint = DiskPoint {
    x: FRAC_1_SQRT_2,
    y: 0.0,
};

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn t_min_examples() {
        assert_abs_diff_eq!(t_min(1.0, PI), PI / 2f64.sqrt(), epsilon = 1e-15);
        for g in [0.2, 0.7, 1.0] {
            for i in 1..63 {
                let psi = 0.1 * i as f64;
                let direct = psi * (TAU - psi)
                    / (PI - psi + (PI * PI + g * g * psi * (TAU - psi)).sqrt());
                assert_abs_diff_eq!(t_min(g, psi), direct, epsilon = 1e-12);
                let w = omega_opt(g, psi);
                assert_abs_diff_eq!(t_min(g, psi), PI / (1.0 - w).hypot(g), epsilon = 1e-12);
                assert_abs_diff_eq!(psi_of_omega(g, w), psi, epsilon = 1e-12);
                assert!(t_min(g, psi) < psi);
            }
        }
    }

    #[test]
    fn omega_opt_examples() {
        assert_eq!(omega_opt(0.5, PI), 0.0);
        for g in [0.3, 1.0] {
            let ws = (1.0 + g * g) / 2.0;
            assert_abs_diff_eq!(omega_opt(g, TAU - 1e-9), ws, epsilon = 1e-6);
        }
    }

    #[test]
    fn synth_diagonal_examples() {
        let r = synth_diagonal(1.0, PI).unwrap();
        assert_abs_diff_eq!(r.t_curve, PI / 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(r.omega, 0.0);
        assert_eq!(r.phi_tilde, 0.0);
        assert!(r.residual < 1e-14);
        assert_eq!(synth_diagonal(1.0, 0.0), Err(Error::DegeneratePhase(0.0)));
        assert_eq!(synth_diagonal(1.0, TAU), Err(Error::DegeneratePhase(TAU)));
    }

    #[test]
    fn tkm_examples() {
        for g in [0.6, 1.0] {
            for psi in [0.5, 2.0, 4.0, 6.0] {
                let s = solve_tkm(g, psi, 1, 0).unwrap();
                assert_eq!(s.roots.len(), 1);
                assert_abs_diff_eq!(s.roots[0].omega, omega_opt(g, psi), epsilon = 1e-12);
                assert_abs_diff_eq!(s.roots[0].t, t_min(g, psi), epsilon = 1e-12);
                for k in 1..5 {
                    let tk = solve_tkm(g, psi, k, 0).unwrap().min_time().unwrap();
                    assert_abs_diff_eq!(tk, t_k0(g, psi, k), epsilon = 1e-12);
                }
            }
        }
        // (ψ + 2mπ)/(kπ) above 1 + √(1+γ²)/γ
        assert!(solve_tkm(1.0, 6.0, 1, 3).unwrap().roots.is_empty());
    }

    #[test]
    fn crossing_time_examples() {
        let law = ExtremalLaw::new(0.6, 0.3, 0.0).unwrap();
        let (d, a) = radius_crossing_times(&law, 1.0).unwrap();
        assert_eq!(d, 0.0);
        assert_abs_diff_eq!(a, PI / law.a(), epsilon = 1e-15);
        let rmin = (1.0 - 0.36 / (law.a() * law.a())).sqrt();
        let (d, a) = radius_crossing_times(&law, rmin).unwrap();
        assert_abs_diff_eq!(d, a, epsilon = 1e-7);
        let (d, _) = radius_crossing_times(&law, 0.9).unwrap();
        assert_abs_diff_eq!(law.radius_sq(d), 0.81, epsilon = 1e-12);
        assert!(radius_crossing_times(&law, 0.1).is_err());
    }

    #[test]
    fn swap_and_hadamard() {
        for g in [0.5, 0.8, 1.0] {
            let r = synthesize(g, &Su2Matrix::swap()).unwrap();
            assert_abs_diff_eq!(r.t_curve, PI / (2.0 * g), epsilon = 1e-9);
            assert_abs_diff_eq!(r.omega, 1.0, epsilon = 1e-9);
        }
        let g = FRAC_1_SQRT_2;
        let ws = (1.0 + g * g) / 2.0;
        let r = synthesize(g, &Su2Matrix::hadamard()).unwrap();
        assert!((1.26..=1.30).contains(&(r.omega / ws)), "{r:?}");
        assert!((PI + 0.15..=PI + 0.25).contains(&r.s_final), "{r:?}");
        assert!(r.residual <= 1e-9);
    }

    #[test]
    fn identity_and_diagonal_dispatch() {
        let r = synthesize(1.0, &Su2Matrix::identity()).unwrap();
        assert_eq!((r.t_curve, r.omega, r.region), (0.0, 0.0, Region::Identity));
        let r = synthesize(1.0, &Su2Matrix::diagonal(PI)).unwrap();
        assert_abs_diff_eq!(r.t_curve, PI / 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(r.omega, 0.0, epsilon = 1e-12);
        assert!(r.phase_free);
    }

    #[test]
    fn outside_recovers_forward_point() {
        let g = 0.5;
        let law = ExtremalLaw::new(g, 0.0, 0.0).unwrap();
        let p = law.disk_curve(t_min(g, PI) / 2.0);
        let r = synth_outside(g, p).unwrap();
        assert_abs_diff_eq!(r.omega, 0.0, epsilon = 1e-6);
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn separatrix_points_use_omega_star() {
        let g = 0.8;
        let ws = (1.0 + g * g) / 2.0;
        let law = ExtremalLaw::new(g, ws, 0.0).unwrap();
        for s in [0.5, 1.5, 2.5] {
            let r = synth_inside(g, law.disk_curve(s)).unwrap();
            assert_eq!(r.region, Region::OnSeparatrix);
            assert_abs_diff_eq!(r.omega, ws, epsilon = 1e-9);
            assert_abs_diff_eq!(r.s_final, s, epsilon = 1e-9);
        }
    }

    #[test]
    fn match_phase_round_trip() {
        let g = 0.7;
        let law = ExtremalLaw::new(g, 1.2, 2.1).unwrap();
        for s in [0.4, 2.0, 4.5] {
            let target = law.propagate(s);
            let ph = match_phase(g, 1.2, s, &target).unwrap();
            let back = ExtremalLaw::new(g, 1.2, ph.phi_tilde).unwrap().propagate(s);
            assert!(back.distance(&target) < 1e-12);
        }
        let ph = match_phase(g, 0.3, 1.0, &Su2Matrix::diagonal(1.0)).unwrap();
        assert_eq!(ph, PhaseChoice { phi_tilde: 0.0, free: true });
    }
}
