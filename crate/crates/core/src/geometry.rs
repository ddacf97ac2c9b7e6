//! Separatrix and critical-trajectory geometry of the optimal synthesis.
//!
//! The separatrix is the `ω = ω*` extremal, a circle through `(1, 0)` that
//! separates targets reached by the boundary-bound family `ω < ω*` from those
//! reached with `ω ∈ [ω*, ω_c]`. Inside it, the `ω = ω_c` extremal up to its
//! cusp (the critical trajectory) is where every other optimal curve stops
//! being optimal. Points of the critical trajectory are indexed by
//! `λ = sin(a_c s) ∈ [0, 1]`.
//!
//! The functions `phi_p`, `phi_c`, `f_eps` and `zeta` compare phases of
//! extremals at equal radius; `zeta(λ)` is the frequency whose extremal meets
//! the critical trajectory at `λ`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{ExtremalLaw, ModelConstants};
use crate::roots::bisect;
use crate::su2::{lift_angle, DiskPoint};

/// Default tolerance for region membership tests.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: DiskPoint,
    pub radius: f64,
}

impl Circle {
    /// Distance to the center minus the radius: negative inside.
    pub fn signed_distance(&self, p: &DiskPoint) -> f64 {
        p.dist(&self.center) - self.radius
    }
}

pub fn separatrix(gamma: f64) -> Result<Circle> {
    let k = ModelConstants::new(gamma)?;
    Ok(Circle {
        center: DiskPoint::new(k.separatrix_center.0, k.separatrix_center.1),
        radius: k.separatrix_radius,
    })
}

pub fn critical_circle(gamma: f64) -> Result<Circle> {
    let k = ModelConstants::new(gamma)?;
    Ok(Circle {
        center: DiskPoint::new(0.0, 0.0),
        radius: k.critical_circle_radius,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Identity,
    Boundary,
    OutsideSeparatrix,
    OnSeparatrix,
    InsideSeparatrix,
    OnCriticalTrajectory,
    OnCriticalCircle,
}

impl Region {
    /// Regions handled by the `ω ∈ [ω*, ω_c]` family.
    pub fn is_inside_family(&self) -> bool {
        matches!(
            self,
            Region::OnSeparatrix
                | Region::InsideSeparatrix
                | Region::OnCriticalTrajectory
                | Region::OnCriticalCircle
        )
    }
}

/// Classifies a disk point. Tests run in order: outside the disk (error),
/// identity, boundary, separatrix side, then the critical trajectory and the
/// critical circle for points inside.
pub fn classify(gamma: f64, p: DiskPoint, tol: f64) -> Result<Region> {
    let r = p.r();
    if r > 1.0 + tol {
        return Err(Error::OutsideDisk { radius: r });
    }
    if p.dist(&DiskPoint::START) <= tol {
        return Ok(Region::Identity);
    }
    if r >= 1.0 - tol {
        return Ok(Region::Boundary);
    }
    let sep = separatrix(gamma)?;
    let d = sep.signed_distance(&p);
    if d.abs() <= tol {
        return Ok(Region::OnSeparatrix);
    }
    if d > 0.0 {
        return Ok(Region::OutsideSeparatrix);
    }
    let depth = (1.0 - p.r_sq()).max(0.0);
    if critical_trajectory_gap(gamma, p, depth.sqrt())?.is_some_and(|gap| gap <= tol) {
        return Ok(Region::OnCriticalTrajectory);
    }
    if (r - ModelConstants::new(gamma)?.critical_circle_radius).abs() <= tol {
        return Ok(Region::OnCriticalCircle);
    }
    Ok(Region::InsideSeparatrix)
}

/// Point of the critical trajectory indexed by `λ = sin(a_c s)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CriticalParam(f64);

impl CriticalParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(Self(lambda))
        } else {
            Err(Error::InvalidArgument(format!("lambda = {lambda} outside [0, 1]")))
        }
    }

    pub fn lambda(&self) -> f64 {
        self.0
    }

    /// Curve time `arcsin(λ) / a_c` on the critical trajectory.
    pub fn curve_time(&self, gamma: f64) -> Result<f64> {
        Ok(self.0.asin() / ModelConstants::new(gamma)?.a_c)
    }

    /// `λ` of the critical point whose off-diagonal magnitude is `m`
    /// (`r² = 1 - λ²/(1+γ²)`), if it lies on the trajectory.
    pub fn at_magnitude(gamma: f64, m: f64) -> Option<Self> {
        let lambda = m * (1.0 + gamma * gamma).sqrt();
        (lambda <= 1.0).then_some(Self(lambda.max(0.0)))
    }
}

fn critical_law(gamma: f64) -> Result<ExtremalLaw> {
    let k = ModelConstants::new(gamma)?;
    ExtremalLaw::new(gamma, k.omega_c, 0.0)
}

pub fn critical_point(gamma: f64, lambda: CriticalParam) -> Result<DiskPoint> {
    let law = critical_law(gamma)?;
    Ok(law.disk_curve(lambda.curve_time(gamma)?))
}

/// Distance from `p` to the critical point of equal radius, given the
/// off-diagonal magnitude `m = √(1 - r²)` of `p`. `None` when `p` lies inside
/// the critical circle.
pub fn critical_trajectory_gap(gamma: f64, p: DiskPoint, m: f64) -> Result<Option<f64>> {
    match CriticalParam::at_magnitude(gamma, m) {
        Some(lambda) => Ok(Some(critical_point(gamma, lambda)?.dist(&p))),
        None => Ok(None),
    }
}

/// Squared distance to the separatrix center minus its squared radius.
pub fn delta(law: &ExtremalLaw, s: f64) -> f64 {
    let g2 = law.gamma() * law.gamma();
    let p = law.disk_curve(s);
    let cx = g2 / (1.0 + g2);
    let rad = 1.0 / (1.0 + g2);
    (p.x - cx).powi(2) + p.y * p.y - rad * rad
}

/// The same quantity written through the radius identity:
/// `γ² (2/(1+γ²) - sin²(as)/a² - 2x/(1+γ²))`.
pub fn delta_expanded(law: &ExtremalLaw, s: f64) -> f64 {
    let g2 = law.gamma() * law.gamma();
    let a = law.a();
    let sin = (a * s).sin();
    let x = law.disk_curve(s).x;
    let k = 2.0 / (1.0 + g2);
    g2 * (k - sin * sin / (a * a) - k * x)
}

/// Coefficient of `s⁴` in the expansion of `Δ_ω(s) / γ²` about `s = 0`
/// (the lower orders vanish).
pub fn departure_coefficient(gamma: f64, omega: f64) -> f64 {
    let b = 1.0 - omega;
    let a2 = b * b + gamma * gamma;
    let w2 = omega * omega;
    -2.0 / (1.0 + gamma * gamma) * ((w2 * w2 + 6.0 * w2 * a2 + a2 * a2) / 24.0 + b * omega * (w2 + a2) / 6.0)
        + a2 / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Inside,
    Outside,
    OnSeparatrix,
}

/// Which side of the separatrix the `ω` extremal enters right after leaving
/// `(1, 0)`: inside for `ω ∈ (ω*, 3ω*)`, outside for `ω < ω*` or `ω > 3ω*`.
pub fn initial_departure_side(gamma: f64, omega: f64) -> Result<Side> {
    let k = ModelConstants::new(gamma)?;
    if (omega - k.omega_star).abs() <= 1e-12 * k.omega_star {
        return Ok(Side::OnSeparatrix);
    }
    let law = ExtremalLaw::new(gamma, omega, 0.0)?;
    let c4 = departure_coefficient(gamma, omega);
    let side_of = |v: f64| if v < 0.0 { Side::Inside } else { Side::Outside };
    let mut s0 = 1e-3;
    for _ in 0..=5 {
        let d = delta(&law, s0);
        if d.abs() >= 1e-15 {
            // the probe must agree with the leading-order term; otherwise
            // higher orders still matter at this s and the probe shrinks
            if c4.abs() < 1e-12 || (d < 0.0) == (c4 < 0.0) {
                return Ok(side_of(d));
            }
        } else if c4.abs() >= 1e-9 {
            return Ok(side_of(c4));
        }
        s0 *= 0.5;
    }
    Err(Error::Indeterminate { omega })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cusp {
    pub s_cusp: f64,
    pub dx: f64,
    pub dy: f64,
}

/// Velocity of the critical extremal at `s = π/(2a_c)`, by a five-point
/// central difference of the disk curve.
pub fn cusp_check(gamma: f64) -> Result<Cusp> {
    let law = critical_law(gamma)?;
    let s = law.min_radius_time();
    let h = 1e-3;
    let p = |k: f64| law.disk_curve(s + k * h);
    let (m2, m1, p1, p2) = (p(-2.0), p(-1.0), p(1.0), p(2.0));
    let d = |f2: f64, f1: f64, b1: f64, b2: f64| (-f2 + 8.0 * f1 - 8.0 * b1 + b2) / (12.0 * h);
    Ok(Cusp {
        s_cusp: s,
        dx: d(p2.x, p1.x, m1.x, m2.x),
        dy: d(p2.y, p1.y, m1.y, m2.y),
    })
}

/// Phase at which the `ω` extremal, on its descending branch, reaches the
/// radius of the critical point `λ`.
pub fn phi_p(gamma: f64, omega: f64, lambda: f64) -> Result<f64> {
    let (a, a_c) = radius_match(gamma, omega, lambda)?;
    let root = (a_c * a_c - a * a * lambda * lambda).max(0.0).sqrt();
    Ok(omega / a * (a * lambda / a_c).min(1.0).asin() + ((1.0 - omega) * lambda).atan2(root))
}

/// `dΦ_P/dλ = (a_c² - ωγ²λ²) / (√(a_c² - a²λ²) (a_c² - γ²λ²))`.
pub fn phi_p_derivative(gamma: f64, omega: f64, lambda: f64) -> Result<f64> {
    let (a, a_c) = radius_match(gamma, omega, lambda)?;
    let g2l2 = gamma * gamma * lambda * lambda;
    let a_c2 = a_c * a_c;
    Ok((a_c2 - omega * g2l2) / ((a_c2 - a * a * lambda * lambda).sqrt() * (a_c2 - g2l2)))
}

fn radius_match(gamma: f64, omega: f64, lambda: f64) -> Result<(f64, f64)> {
    let k = ModelConstants::new(gamma)?;
    CriticalParam::new(lambda)?;
    let a = (1.0 - omega).hypot(gamma);
    if a * lambda > k.a_c * (1.0 + 1e-12) {
        return Err(Error::RadiusUnreachable { omega, lambda });
    }
    Ok((a, k.a_c))
}

/// Phase of the critical point `λ`.
pub fn phi_c(gamma: f64, lambda: f64) -> Result<f64> {
    let k = ModelConstants::new(gamma)?;
    CriticalParam::new(lambda)?;
    let root = (1.0 - lambda * lambda).max(0.0).sqrt();
    Ok(k.omega_c / k.a_c * lambda.asin() + (lambda * (1.0 - k.omega_c)).atan2(k.a_c * root))
}

/// `dΦ_c/dλ = a_c √(1-λ²) / (a_c² - γ²λ²)`.
pub fn phi_c_derivative(gamma: f64, lambda: f64) -> Result<f64> {
    let k = ModelConstants::new(gamma)?;
    CriticalParam::new(lambda)?;
    Ok(k.a_c * (1.0 - lambda * lambda).sqrt() / (k.a_c * k.a_c - gamma * gamma * lambda * lambda))
}

fn f_domain(gamma: f64, lambda: f64, omega: f64) -> Result<(ModelConstants, f64)> {
    let k = ModelConstants::new(gamma)?;
    let slack = 1e-12;
    let a = (1.0 - omega).hypot(gamma);
    let ok = (0.0..=1.0).contains(&lambda)
        && omega >= k.omega_star - slack
        && omega <= k.omega_c + slack
        && a * lambda <= k.a_c * (1.0 + slack);
    if ok {
        Ok((k, a))
    } else {
        Err(Error::DomainError { lambda, omega })
    }
}

/// Phase mismatch `F^ε(λ, ω)` between the ascending branch of the `ω`
/// extremal and the ε-lowered critical trajectory at equal radius; its zero
/// in `ω` defines `ζ^ε(λ)`.
pub fn f_eps(gamma: f64, eps: f64, lambda: f64, omega: f64) -> Result<f64> {
    let (k, a) = f_domain(gamma, lambda, omega)?;
    let g2p1 = 1.0 + gamma * gamma;
    let root_p = (k.a_c * k.a_c - a * a * lambda * lambda).max(0.0).sqrt();
    let root_c = (1.0 - lambda * lambda).max(0.0).sqrt();
    Ok(omega / a * (PI - (a * lambda / k.a_c).min(1.0).asin()) - ((1.0 - omega) * lambda).atan2(root_p) - PI
        - g2p1.sqrt() / gamma * lambda.asin()
        + (gamma * lambda).atan2(g2p1.sqrt() * root_c)
        - eps * lambda)
}

/// `∂F^ε/∂λ`.
pub fn f_eps_dlambda(gamma: f64, eps: f64, lambda: f64, omega: f64) -> Result<f64> {
    let (k, a) = f_domain(gamma, lambda, omega)?;
    let g2p1 = 1.0 + gamma * gamma;
    let l2 = lambda * lambda;
    let root_p = (k.a_c * k.a_c - a * a * l2).sqrt();
    Ok(-(g2p1 - omega * l2) / ((g2p1 - l2) * root_p)
        - g2p1.sqrt() * (1.0 - l2).sqrt() / (gamma * (g2p1 - l2))
        - eps)
}

/// `∂F^ε/∂ω` (independent of ε).
pub fn f_eps_domega(gamma: f64, lambda: f64, omega: f64) -> Result<f64> {
    let (k, a) = f_domain(gamma, lambda, omega)?;
    let g2p1 = 1.0 + gamma * gamma;
    let root_p = (k.a_c * k.a_c - a * a * lambda * lambda).sqrt();
    Ok((g2p1 - omega) / a.powi(3) * (PI - (a * lambda / k.a_c).min(1.0).asin())
        + lambda * (g2p1 - omega) / (a * a * root_p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaRoot {
    pub omega: f64,
    /// `γ < 1/√3`: the correspondence is not established there.
    pub unproven_regime: bool,
}

/// Frequency whose extremal meets the critical trajectory at `λ`: the root
/// of `F⁰(λ, ·)` on `[ω*, ω_c]`.
pub fn zeta(gamma: f64, lambda: f64) -> Result<ZetaRoot> {
    let k = ModelConstants::new(gamma)?;
    CriticalParam::new(lambda)?;
    let unproven_regime = !k.proven_regime();
    let omega = if lambda == 0.0 {
        k.omega_star
    } else if lambda == 1.0 {
        k.omega_c
    } else {
        // below 1/√3 part of [ω*, ω_c] cannot reach the radius of λ
        let reach = ((k.a_c / lambda).powi(2) - gamma * gamma).max(0.0).sqrt();
        let lo = k.omega_star.max(1.0 - reach);
        let hi = k.omega_c.min(1.0 + reach);
        bisect(|w| f_eps(gamma, 0.0, lambda, w).unwrap_or(f64::NAN), lo, hi, 1e-13)?
    };
    Ok(ZetaRoot {
        omega,
        unproven_regime,
    })
}

/// Inverse of [`zeta`]: the `λ` at which the `ω` extremal meets the
/// critical trajectory, for `ω ∈ [ω*, ω_c]`.
pub fn zeta_inverse(gamma: f64, omega: f64) -> Result<f64> {
    let k = ModelConstants::new(gamma)?;
    if omega <= k.omega_star {
        return Ok(0.0);
    }
    if omega >= k.omega_c {
        return Ok(1.0);
    }
    let a = (1.0 - omega).hypot(gamma);
    let hi = (k.a_c / a).min(1.0);
    bisect(|l| f_eps(gamma, 0.0, l, omega).unwrap_or(f64::NAN), 0.0, hi, 1e-14)
}

/// Curve time at which the `ω ∈ [ω*, ω_c]` extremal meets the critical
/// trajectory, from the `ζ` correspondence (ascending branch).
pub fn loss_time_via_zeta(gamma: f64, omega: f64) -> Result<f64> {
    let k = ModelConstants::new(gamma)?;
    let lambda = zeta_inverse(gamma, omega)?;
    let a = (1.0 - omega).hypot(gamma);
    if omega >= k.omega_c {
        return Ok(FRAC_PI_2 / k.a_c);
    }
    Ok((PI - (a * lambda / k.a_c).min(1.0).asin()) / a)
}

/// First curve time in `(0, π/a]` at which the extremal meets the critical
/// trajectory, found directly by comparing phases at equal radius. Works for
/// any `γ`. Returns `None` if the extremal reaches the boundary first.
pub fn critical_crossing_time(law: &ExtremalLaw) -> Result<Option<f64>> {
    let gamma = law.gamma();
    let k = ModelConstants::new(gamma)?;
    if (law.omega() - k.omega_c).abs() <= 1e-12 {
        return Ok(Some(FRAC_PI_2 / k.a_c));
    }
    let end = law.boundary_time();
    let mismatch = |s: f64| -> Option<f64> {
        let m = (law.depth(s)).sqrt();
        let lambda = CriticalParam::at_magnitude(gamma, m)?;
        Some(law.phase(s) - phi_c(gamma, lambda.lambda()).ok()?)
    };
    // the descending branch stays strictly ahead in phase of the critical
    // trajectory, so only the ascending branch is scanned; this also keeps
    // away from s = 0 where the mismatch vanishes to high order
    let winding = law.omega().abs() * end + TAU;
    let n = ((16.0 * winding / PI).ceil() as usize).max(512);
    let start = law.min_radius_time();
    let level = |d: f64| (d / TAU).floor();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let s = start + (end - start) * i as f64 / n as f64;
        let cur = mismatch(s);
        if let (Some((s0, d0)), Some(d1)) = (prev, cur) {
            let (l0, l1) = (level(d0), level(d1));
            if l0 != l1 {
                let target = TAU * l0.max(l1);
                let root = bisect(
                    |x| mismatch(x).map_or(f64::NAN, |d| d - target),
                    s0,
                    s,
                    1e-14,
                )?;
                return Ok(Some(root));
            }
        }
        prev = cur.map(|d| (s, d));
    }
    Ok(None)
}

/// Curve time at which the separatrix passes through `p` (taken on the
/// separatrix circle).
pub fn separatrix_time(gamma: f64, p: DiskPoint) -> Result<f64> {
    let k = ModelConstants::new(gamma)?;
    let angle = lift_angle(p.y.atan2(p.x - k.separatrix_center.0));
    Ok(angle / (2.0 * k.omega_star))
}
