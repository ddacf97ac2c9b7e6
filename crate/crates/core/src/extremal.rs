//! Closed-form nonsingular extremals.
//!
//! With controls `u_x = γ sin(ω t + φ̃)`, `u_y = -γ cos(ω t + φ̃)` the system
//! integrates explicitly. Everything here is expressed in *curve time*
//! `s = t / 2`; the physical time of the original model is `2 s`.
//!
//! With `b = 1 - ω` and `a = √(b² + γ²)` the (1,1) entry of the trajectory is
//! `e^{iωs} (cos(as) + i (b/a) sin(as))`, which traces a curve in the unit
//! disk starting at `(1, 0)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{DiskPoint, Su2Matrix};

/// Checks `gamma ∈ (0, 1]`.
pub fn check_gamma(gamma: f64) -> Result<f64> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(gamma)
    } else {
        Err(Error::InvalidGamma(gamma))
    }
}

/// One extremal: control bound, control frequency and control phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalLaw {
    gamma: f64,
    omega: f64,
    phi_tilde: f64,
    b: f64,
    a: f64,
}

impl ExtremalLaw {
    pub fn new(gamma: f64, omega: f64, phi_tilde: f64) -> Result<Self> {
        check_gamma(gamma)?;
        if !omega.is_finite() || !phi_tilde.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "non-finite extremal parameters omega = {omega}, phi = {phi_tilde}"
            )));
        }
        let b = 1.0 - omega;
        Ok(Self {
            gamma,
            omega,
            phi_tilde,
            b,
            a: b.hypot(gamma),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn phi_tilde(&self) -> f64 {
        self.phi_tilde
    }

    /// `1 - ω`.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// `√(b² + γ²)`.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn with_phase(&self, phi_tilde: f64) -> Self {
        Self { phi_tilde, ..*self }
    }

    /// Curve time at which the extremal returns to the disk boundary.
    pub fn boundary_time(&self) -> f64 {
        PI / self.a
    }

    /// Curve time of minimum radius.
    pub fn min_radius_time(&self) -> f64 {
        FRAC_PI_2 / self.a
    }

    /// Control values at *physical* time `t_phys = 2 s`.
    pub fn controls_at(&self, t_phys: f64) -> (f64, f64) {
        let (sin, cos) = (self.omega * t_phys + self.phi_tilde).sin_cos();
        (self.gamma * sin, -self.gamma * cos)
    }

    /// `e^{iωs} (cos(as) + i (b/a) sin(as))`.
    pub fn entry11(&self, s: f64) -> Complex64 {
        let (sin, cos) = (self.a * s).sin_cos();
        Complex64::from_polar(1.0, self.omega * s) * Complex64::new(cos, self.b / self.a * sin)
    }

    /// `e^{i(ωs + φ̃)} (γ/a) sin(as)`.
    pub fn entry12(&self, s: f64) -> Complex64 {
        Complex64::from_polar(
            self.gamma / self.a * (self.a * s).sin(),
            self.omega * s + self.phi_tilde,
        )
    }

    /// State at curve time `s`.
    pub fn propagate(&self, s: f64) -> Su2Matrix {
        Su2Matrix::from_pair_unchecked(self.entry11(s), self.entry12(s))
    }

    pub fn disk_curve(&self, s: f64) -> DiskPoint {
        DiskPoint::from_complex(self.entry11(s))
    }

    /// `d/ds` of the disk curve: `e^{iωs} (i cos(as) - ((ωb + a²)/a) sin(as))`.
    pub fn disk_velocity(&self, s: f64) -> Complex64 {
        let (sin, cos) = (self.a * s).sin_cos();
        let k = (self.omega * self.b + self.a * self.a) / self.a;
        Complex64::from_polar(1.0, self.omega * s) * Complex64::new(-k * sin, cos)
    }

    /// `∂/∂ω` of the disk curve at fixed `s`.
    pub fn disk_omega_derivative(&self, s: f64) -> Complex64 {
        let (a, b, g) = (self.a, self.b, self.gamma);
        let (sin, cos) = (a * s).sin_cos();
        let da = -b / a;
        let inner = Complex64::new(cos, b / a * sin);
        let d_inner = Complex64::new(-s * da * sin, -g * g / (a * a * a) * sin + b / a * s * da * cos);
        let rot = Complex64::from_polar(1.0, self.omega * s);
        rot * (Complex64::new(0.0, s) * inner + d_inner)
    }

    /// `x² + y² = 1 - (γ²/a²) sin²(as)`.
    pub fn radius_sq(&self, s: f64) -> f64 {
        1.0 - self.depth(s)
    }

    /// `1 - r² = (γ/a)² sin²(as)`, without cancellation near the boundary.
    pub fn depth(&self, s: f64) -> f64 {
        let k = self.gamma / self.a * (self.a * s).sin();
        k * k
    }

    /// Continuous phase of the disk curve, `ψ(0) = 0`.
    ///
    /// `ψ(s) = ωs + arg(cos(as) + i (b/a) sin(as))` with the argument lifted
    /// continuously; when `b = 0` the curve passes through the origin and the
    /// lift takes the limit `b → 0⁺`.
    pub fn phase(&self, s: f64) -> f64 {
        self.omega * s + lifted_arg(self.a * s, self.b / self.a)
    }

    /// Piecewise arctan form of the phase, valid on `[0, π/a]`. Agrees with
    /// [`phase`](Self::phase) modulo 2π; exactly when `ω ≤ 1`.
    pub fn phase_piecewise(&self, s: f64) -> f64 {
        let t = self.a * s;
        let base = self.omega * s + (self.b / self.a * t.tan()).atan();
        if t <= FRAC_PI_2 {
            base
        } else {
            base + PI
        }
    }

    /// `dψ/ds = (a² - ωγ² sin²(as)) / (a² cos²(as) + b² sin²(as))`.
    ///
    /// At resonance (`b = 0`) the rate is identically `ω`, which is also the
    /// limit at the removable singularity `as = π/2 (mod π)`.
    pub fn phase_rate(&self, s: f64) -> f64 {
        if self.b == 0.0 {
            return self.omega;
        }
        let (a, b) = (self.a, self.b);
        let (sin, cos) = (a * s).sin_cos();
        let num = a * a - self.omega * self.gamma * self.gamma * sin * sin;
        let den = a * a * cos * cos + b * b * sin * sin;
        num / den
    }
}

/// Continuous lift of `arg(cos θ + i c sin θ)` with value 0 at `θ = 0`.
fn lifted_arg(theta: f64, c: f64) -> f64 {
    // on [kπ - π/2, kπ + π/2) the factor (-1)^k makes the real part
    // non-negative, so atan2 stays on its principal branch
    let k = ((theta + FRAC_PI_2) / PI).floor();
    let sign = if k.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
    let (sin, cos) = theta.sin_cos();
    let dir = if c >= 0.0 { 1.0 } else { -1.0 };
    (sign * c * sin).atan2(sign * cos) + dir * k * PI
}

/// Curve time of the singular arc (zero control) reaching phase `psi_f` on
/// the boundary. Never optimal; kept for comparison.
pub fn singular_time(psi_f: f64) -> f64 {
    psi_f
}

/// Frequencies and derived constants of the model for a given `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConstants {
    pub gamma: f64,
    /// `(1 + γ²) / 2`: the separatrix frequency.
    pub omega_star: f64,
    /// `1 + γ²`: the critical-trajectory frequency.
    pub omega_c: f64,
    pub a_star: f64,
    /// `γ √(1 + γ²)`.
    pub a_c: f64,
    pub separatrix_center: (f64, f64),
    pub separatrix_radius: f64,
    pub critical_circle_radius: f64,
}

impl ModelConstants {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        let g2 = gamma * gamma;
        let omega_star = (1.0 + g2) / 2.0;
        let omega_c = 1.0 + g2;
        Ok(Self {
            gamma,
            omega_star,
            omega_c,
            a_star: (1.0 - omega_star).hypot(gamma),
            a_c: (1.0 - omega_c).hypot(gamma),
            separatrix_center: (g2 / (1.0 + g2), 0.0),
            separatrix_radius: 1.0 / (1.0 + g2),
            critical_circle_radius: gamma / (1.0 + g2).sqrt(),
        })
    }

    /// Whether `γ ≥ 1/√3`, the range where the inside synthesis is proven.
    pub fn proven_regime(&self) -> bool {
        3.0 * self.gamma * self.gamma >= 1.0 - 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn law(g: f64, w: f64, p: f64) -> ExtremalLaw {
        ExtremalLaw::new(g, w, p).unwrap()
    }

    #[test]
    fn rejects_bad_gamma() {
        assert!(ExtremalLaw::new(0.0, 1.0, 0.0).is_err());
        assert!(ExtremalLaw::new(1.2, 1.0, 0.0).is_err());
        assert!(ExtremalLaw::new(-0.5, 1.0, 0.0).is_err());
        assert!(ExtremalLaw::new(1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn constants() {
        let k = ModelConstants::new(0.6).unwrap();
        assert_eq!(k.omega_c, 2.0 * k.omega_star);
        assert_abs_diff_eq!(k.a_star, k.omega_star, epsilon = 1e-15);
        assert_abs_diff_eq!(k.a_c, 0.6 * (1.36f64).sqrt(), epsilon = 1e-15);
        let l = law(0.6, -2.0, 0.0);
        assert!(l.a() >= l.gamma());
        assert_eq!(l.a() * l.a(), l.b().hypot(0.6).powi(2));
    }

    #[test]
    fn controls_examples() {
        let (ux, uy) = law(1.0, 1.0, 0.0).controls_at(0.0);
        assert_abs_diff_eq!(ux, 0.0);
        assert_abs_diff_eq!(uy, -1.0);
        let (ux, uy) = law(0.5, 0.0, FRAC_PI_2).controls_at(PI);
        assert_abs_diff_eq!(ux, 0.5);
        assert_abs_diff_eq!(uy, 0.0, epsilon = 1e-16);
        let l = law(0.37, -1.3, 2.2);
        for i in 0..50 {
            let (ux, uy) = l.controls_at(0.37 * i as f64);
            assert_abs_diff_eq!(ux * ux + uy * uy, 0.37 * 0.37, epsilon = 1e-16);
        }
    }

    #[test]
    fn propagate_examples() {
        let l = law(0.4, 0.3, 1.0);
        assert_eq!(l.propagate(0.0), Su2Matrix::identity());
        // resonance: e^{is} cos(γs) on the diagonal, sin(γs) up to the
        // phase e^{i(s + φ̃)} off it
        for g in [0.3, 0.5, 1.0] {
            let l = law(g, 1.0, 0.0);
            for s in [0.1, 0.7, 2.0, 5.0] {
                let x = l.propagate(s);
                assert!((x.alpha() - Complex64::from_polar((g * s).cos(), s)).norm() < 1e-15);
                assert!((x.beta() - Complex64::from_polar((g * s).sin(), s)).norm() < 1e-15);
                let real = l.with_phase(-s).propagate(s);
                assert!((real.beta() - Complex64::new((g * s).sin(), 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn propagate_stays_special_unitary() {
        let l = law(0.35, -2.5, 0.4);
        for i in 0..=200 {
            let s = 10.0 * PI / l.a() * i as f64 / 200.0;
            let x = l.propagate(s);
            assert!((x.det() - 1.0).norm() < 1e-12);
            let m = x.to_mat2() * x.to_mat2().adjoint();
            assert!((m - crate::su2::Mat2::identity()).max_abs() < 1e-12);
        }
    }

    #[test]
    fn disk_curve_examples() {
        assert_eq!(law(0.5, 0.2, 0.0).disk_curve(0.0), DiskPoint::new(1.0, 0.0));
        // γ = 1, ω = ω* = 1 traces the circle centred (1/2, 0) of radius 1/2
        let l = law(1.0, 1.0, 0.0);
        for i in 0..100 {
            let p = l.disk_curve(0.031 * i as f64);
            assert_abs_diff_eq!((p.x - 0.5).hypot(p.y), 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn radius_examples() {
        let l = law(0.7, 0.2, 0.0);
        assert_eq!(l.radius_sq(0.0), 1.0);
        assert_abs_diff_eq!(l.radius_sq(PI / l.a()), 1.0, epsilon = 1e-15);
        let l = law(1.0, 1.0, 0.0);
        assert_abs_diff_eq!(l.radius_sq(FRAC_PI_2), 0.0, epsilon = 1e-15);
        // range [1 - γ²/a², 1]
        let l = law(0.5, -0.7, 0.0);
        let lo = 1.0 - 0.25 / (l.a() * l.a());
        for i in 0..300 {
            let r2 = l.radius_sq(0.05 * i as f64);
            assert!(r2 >= lo - 1e-15 && r2 <= 1.0);
        }
    }

    #[test]
    fn phase_examples() {
        assert_eq!(law(0.5, 0.3, 0.0).phase(0.0), 0.0);
        for w in [-3.0, 0.0, 0.5, 0.9, 1.0] {
            let l = law(0.5, w, 0.0);
            let end = l.boundary_time();
            assert_abs_diff_eq!(l.phase(end), w * end + PI, epsilon = 1e-12);
        }
        // for ω > 1 the argument winds the other way
        let l = law(0.5, 1.2, 0.0);
        let end = l.boundary_time();
        assert_abs_diff_eq!(l.phase(end), 1.2 * end - PI, epsilon = 1e-12);
    }

    #[test]
    fn phase_is_increasing_below_resonance() {
        for w in [-5.0, -1.0, 0.0, 0.5, 1.0] {
            let l = law(0.6, w, 0.0);
            let mut prev = l.phase(0.0);
            for i in 1..2000 {
                let cur = l.phase(l.boundary_time() * 3.0 * i as f64 / 2000.0);
                assert!(cur > prev, "omega = {w}, step {i}");
                prev = cur;
            }
        }
    }

    #[test]
    fn phase_matches_piecewise_modulo_two_pi() {
        for w in [-2.0, 0.1, 0.8, 1.1, 1.3, 2.0] {
            let l = law(0.8, w, 0.0);
            for i in 1..100 {
                let s = l.boundary_time() * i as f64 / 100.0;
                let d = crate::su2::wrap_angle(l.phase(s) - l.phase_piecewise(s));
                assert!(d.abs() < 1e-10, "omega = {w}, s = {s}: {d}");
                if w <= 1.0 {
                    assert_abs_diff_eq!(l.phase(s), l.phase_piecewise(s), epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn phase_agrees_with_atan2_of_curve() {
        for w in [-2.0, 0.5, 1.0, 1.5, 3.0] {
            let l = law(0.45, w, 0.0);
            for i in 0..400 {
                let s = 0.037 * i as f64;
                let p = l.disk_curve(s);
                if p.r() < 1e-6 {
                    continue;
                }
                let d = crate::su2::wrap_angle(l.phase(s) - p.y.atan2(p.x));
                assert!(d.abs() < 1e-9, "omega {w}, s {s}, d {d}");
            }
        }
    }

    #[test]
    fn phase_rate_matches_central_differences() {
        let h = 1e-6;
        for w in [-1.0, 0.0, 0.6, 1.2, 1.5, 2.5] {
            let l = law(0.7, w, 0.0);
            for i in 1..60 {
                let s = 0.11 * i as f64;
                let fd = (l.phase(s + h) - l.phase(s - h)) / (2.0 * h);
                assert!((fd - l.phase_rate(s)).abs() < 1e-6, "omega {w} s {s}");
            }
        }
    }

    #[test]
    fn phase_rate_positive_outside_middle_band() {
        let g = 0.8;
        let k = ModelConstants::new(g).unwrap();
        for w in [0.0, -2.0, 1.0, k.omega_c, k.omega_c + 0.5] {
            let l = law(g, w, 0.0);
            for i in 0..1000 {
                assert!(l.phase_rate(0.013 * i as f64) > 0.0, "omega {w}");
            }
        }
        // at resonance the removable singularity gives rate ω
        let l = law(g, 1.0, 0.0);
        assert_eq!(l.phase_rate(FRAC_PI_2 / g), 1.0);
    }

    #[test]
    fn velocity_and_omega_derivative_match_differences() {
        let h = 1e-6;
        for w in [-1.5, 0.4, 1.0, 1.7] {
            let l = law(0.66, w, 0.0);
            for s in [0.2, 1.3, 3.7] {
                let fd = (l.entry11(s + h) - l.entry11(s - h)) / (2.0 * h);
                assert!((fd - l.disk_velocity(s)).norm() < 1e-8);
                let lp = law(0.66, w + h, 0.0);
                let lm = law(0.66, w - h, 0.0);
                let fd = (lp.entry11(s) - lm.entry11(s)) / (2.0 * h);
                assert!((fd - l.disk_omega_derivative(s)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn singular_time_examples() {
        assert_eq!(singular_time(PI), PI);
        assert_eq!(singular_time(1e-300), 1e-300);
    }
}
