//! Special-unitary 2×2 algebra, the (ψ, φ, M) target parametrization and
//! the unit-disk reduction.
//!
//! A group element is stored by its first row `(alpha, beta)`:
//!
//! ```text
//! X = [[ alpha,        beta       ],
//!      [ -conj(beta),  conj(alpha)]]
//! ```
//!
//! so unitarity and unit determinant reduce to `|alpha|² + |beta|² = 1`.
//! General (traceless or not) 2×2 complex matrices, such as the Pauli basis
//! of the Lie algebra, live in [`Mat2`].

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const UNITARY_TOL: f64 = 1e-9;

/// Lifts an angle into `[0, 2π)`.
pub fn lift_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can return exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Signed angular difference `a - b` wrapped into `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = (theta + PI).rem_euclid(TAU) - PI;
    if t <= -PI {
        t + TAU
    } else {
        t
    }
}

/// Dense complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn zero() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(zero, zero, zero, zero)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = self.m;
        Self::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() < 1e-300 {
            return None;
        }
        let m = self.m;
        Some(Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(det.inv()))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Hilbert–Schmidt inner product `Tr(A B†)`.
    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        (*self * other.adjoint()).trace()
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_inner(self).re.max(0.0).sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.m, rhs.m);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale_re(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.m, rhs.m);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// The basis `σ_x, σ_y, σ_z` of su(2), normalized so that
/// `[σ_x, σ_y] = σ_z` (cyclically) and each has Hilbert–Schmidt norm `1/√2`.
#[derive(Debug, Clone, Copy)]
pub struct PauliBasis {
    pub sigma_x: Mat2,
    pub sigma_y: Mat2,
    pub sigma_z: Mat2,
}

impl PauliBasis {
    pub fn new() -> Self {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        Self {
            sigma_x: Mat2::new(c(0.0, 0.0), c(0.0, 0.5), c(0.0, 0.5), c(0.0, 0.0)),
            sigma_y: Mat2::new(c(0.0, 0.0), c(-0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)),
            sigma_z: Mat2::new(c(0.0, 0.5), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -0.5)),
        }
    }

    /// `σ_z + u_x σ_x + u_y σ_y`.
    pub fn generator(&self, u_x: f64, u_y: f64) -> Mat2 {
        self.sigma_z + self.sigma_x.scale_re(u_x) + self.sigma_y.scale_re(u_y)
    }
}

impl Default for PauliBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Element of SU(2) stored by its first row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2Matrix {
    alpha: Complex64,
    beta: Complex64,
}

impl Su2Matrix {
    /// Builds a matrix from `(alpha, beta)`, renormalizing to unit norm.
    ///
    /// Fails with [`Error::NotUnitary`] when `|alpha|² + |beta|²` is further
    /// than `1e-9` from one.
    pub fn from_complex_pair(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > UNITARY_TOL {
            return Err(Error::NotUnitary { norm_sq });
        }
        let k = norm_sq.sqrt().recip();
        Ok(Self {
            alpha: alpha * k,
            beta: beta * k,
        })
    }

    pub(crate) fn from_pair_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        let k = (alpha.norm_sqr() + beta.norm_sqr()).sqrt().recip();
        Self {
            alpha: alpha * k,
            beta: beta * k,
        }
    }

    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// `[[0, 1], [-1, 0]]`, whose (1,1) entry is the disk origin.
    pub fn swap() -> Self {
        Self {
            alpha: Complex64::new(0.0, 0.0),
            beta: Complex64::new(1.0, 0.0),
        }
    }

    /// `(1/√2) [[1, 1], [-1, 1]]`.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: Complex64::new(h, 0.0),
            beta: Complex64::new(h, 0.0),
        }
    }

    /// `diag(e^{iψ}, e^{-iψ})`.
    pub fn diagonal(psi: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(1.0, psi),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// `exp(σ_z θ) = diag(e^{iθ/2}, e^{-iθ/2})`.
    pub fn z_rotation(theta: f64) -> Self {
        Self::diagonal(theta / 2.0)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::new(self.alpha, self.beta, -self.beta.conj(), self.alpha.conj())
    }

    /// Projects a near-unitary matrix onto SU(2) (nearest element in the
    /// Frobenius norm among matrices of the quaternion form).
    pub fn project(m: &Mat2) -> Option<Self> {
        let alpha = (m.m[0][0] + m.m[1][1].conj()) * 0.5;
        let beta = (m.m[0][1] - m.m[1][0].conj()) * 0.5;
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        (n > 1e-300).then(|| Self {
            alpha: alpha / n,
            beta: beta / n,
        })
    }

    pub fn multiply(&self, other: &Self) -> Self {
        // first row of the product; the second row follows from the SU(2) form
        let alpha = self.alpha * other.alpha - self.beta * other.beta.conj();
        let beta = self.alpha * other.beta + self.beta * other.alpha.conj();
        Self::from_pair_unchecked(alpha, beta)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        self.to_mat2().hs_inner(&other.to_mat2())
    }

    pub fn det(&self) -> Complex64 {
        self.to_mat2().det()
    }

    /// `e^{σ_z θ} X e^{-σ_z θ}`: leaves alpha alone and rotates beta by `e^{iθ}`.
    pub fn z_conjugate(&self, theta: f64) -> Self {
        let r = Self::z_rotation(theta);
        r.multiply(self).multiply(&r.adjoint())
    }

    /// Distance used for final-state residuals:
    /// `sqrt(|Δalpha|² + |Δbeta|²)`, i.e. the Frobenius distance over √2.
    pub fn distance(&self, other: &Self) -> f64 {
        ((self.alpha - other.alpha).norm_sqr() + (self.beta - other.beta).norm_sqr()).sqrt()
    }

    pub fn to_target_params(&self) -> TargetParams {
        TargetParams::from_matrix(self)
    }

    pub fn disk_point(&self) -> DiskPoint {
        DiskPoint::new(self.alpha.re, self.alpha.im)
    }
}

/// Tests whether two targets lie in the same class `e^{σ_z θ} X e^{-σ_z θ}`.
pub fn z_conjugation_equivalent(x: &Su2Matrix, y: &Su2Matrix) -> bool {
    let (p, q) = (x.to_target_params(), y.to_target_params());
    if (p.m - q.m).abs() > UNITARY_TOL {
        return false;
    }
    if !p.psi_defined || !q.psi_defined {
        return true;
    }
    wrap_angle(p.psi - q.psi).abs() <= UNITARY_TOL
}

/// `(ψ, φ, M)` coordinates with `alpha = e^{iψ}√(1-M²)`, `beta = e^{iφ}M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetParams {
    pub psi: f64,
    pub phi: f64,
    pub m: f64,
    pub x_psi: f64,
    /// False when `M = 1`: alpha vanishes and ψ is reported as 0.
    pub psi_defined: bool,
}

impl TargetParams {
    pub fn from_matrix(x: &Su2Matrix) -> Self {
        let m = x.beta.norm().min(1.0);
        let psi_defined = x.alpha.norm() > 0.0;
        let psi = if psi_defined { lift_angle(x.alpha.arg()) } else { 0.0 };
        let phi = if m > 0.0 { lift_angle(x.beta.arg()) } else { 0.0 };
        Self {
            psi,
            phi,
            m,
            x_psi: (psi - PI) / PI,
            psi_defined,
        }
    }

    pub fn new(psi: f64, phi: f64, m: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::InvalidArgument(format!("M = {m} outside [0, 1]")));
        }
        let psi = lift_angle(psi);
        Ok(Self {
            psi,
            phi: lift_angle(phi),
            m,
            x_psi: (psi - PI) / PI,
            psi_defined: m < 1.0,
        })
    }

    pub fn to_matrix(&self) -> Su2Matrix {
        let c = (1.0 - self.m * self.m).max(0.0).sqrt();
        Su2Matrix::from_pair_unchecked(
            Complex64::from_polar(c, self.psi),
            Complex64::from_polar(self.m, self.phi),
        )
    }
}

/// The (1,1) entry of a group element, as a point of the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub const START: DiskPoint = DiskPoint { x: 1.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, psi: f64) -> Self {
        Self::new(r * psi.cos(), r * psi.sin())
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn r_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Phase in `[0, 2π)`; 0 at the origin.
    pub fn psi(&self) -> f64 {
        lift_angle(self.y.atan2(self.x))
    }

    pub fn dist(&self, other: &DiskPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A drift-normalized problem: `dX/dt = (σ_z + u·σ) X` with `|u| ≤ gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedProblem {
    pub gamma: f64,
    /// Multiply a normalized time by this to get seconds.
    pub time_scale: f64,
    /// True when the drift sign is negative: solve for `X_f⁻¹` and negate
    /// the resulting controls.
    pub conjugate_target: bool,
}

/// Reduces `dU/dt = ±ω₀ σ_z U + v·σ U`, `|v| ≤ bound`, to the normalized
/// system with `gamma = bound / ω₀`.
pub fn normalize_problem(omega0: f64, drift_sign: i8, control_bound: f64) -> Result<NormalizedProblem> {
    if !(omega0 > 0.0) || !omega0.is_finite() {
        return Err(Error::InvalidArgument(format!("drift strength {omega0} must be positive")));
    }
    if drift_sign != 1 && drift_sign != -1 {
        return Err(Error::InvalidArgument(format!("drift sign {drift_sign} must be ±1")));
    }
    if control_bound > omega0 {
        return Err(Error::BoundExceedsDrift {
            bound: control_bound,
            omega0,
        });
    }
    let gamma = control_bound / omega0;
    if !(gamma > 0.0) {
        return Err(Error::InvalidGamma(gamma));
    }
    Ok(NormalizedProblem {
        gamma,
        time_scale: omega0.recip(),
        conjugate_target: drift_sign == -1,
    })
}
