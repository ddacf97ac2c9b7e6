use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not special unitary: |alpha|^2 + |beta|^2 = {norm_sq}")]
    NotUnitary { norm_sq: f64 },

    #[error("control bound {bound} exceeds drift strength {omega0}")]
    BoundExceedsDrift { bound: f64, omega0: f64 },

    #[error("control bound gamma = {0} must lie in (0, 1]")]
    InvalidGamma(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point at radius {radius} lies outside the unit disk")]
    OutsideDisk { radius: f64 },

    #[error("departure side of omega = {omega} is numerically indeterminate")]
    Indeterminate { omega: f64 },

    #[error("radius indexed by lambda = {lambda} is never reached by omega = {omega}")]
    RadiusUnreachable { omega: f64, lambda: f64 },

    #[error("radius {radius} is never reached by the extremal with omega = {omega}")]
    Unreachable { omega: f64, radius: f64 },

    #[error("(lambda = {lambda}, omega = {omega}) is outside the domain of F")]
    DomainError { lambda: f64, omega: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("diagonal target with psi_f = {0} is the identity class")]
    DegeneratePhase(f64),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("two branches reach the target at the same time (omega = {omega_a}, {omega_b})")]
    AmbiguousBranch { omega_a: f64, omega_b: f64 },

    #[error("adjoint vector (b_x, b_y) vanished at s = {s}")]
    SingularAdjoint { s: f64 },

    #[error("grid search found no extremal within {tol_hit} of the target")]
    NotFound { tol_hit: f64 },
}
