//! Target gates given on the command line.

use std::fmt;
use std::str::FromStr;

use su2opt_core::num_complex::Complex64;
use su2opt_core::Su2Matrix;

/// A named gate or a raw first row `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateSpec {
    Identity,
    Swap,
    Hadamard,
    /// `diag(1, e^{iψ})` up to global phase: `alpha = e^{-iψ/2}`.
    Phase(f64),
    /// `diag(e^{iψ}, e^{-iψ})`.
    Diag(f64),
    Raw {
        alpha: Complex64,
        beta: Complex64,
    },
}

impl GateSpec {
    pub fn matrix(&self) -> Result<Su2Matrix, su2opt_core::Error> {
        Ok(match *self {
            GateSpec::Identity => Su2Matrix::identity(),
            GateSpec::Swap => Su2Matrix::swap(),
            GateSpec::Hadamard => Su2Matrix::hadamard(),
            GateSpec::Phase(psi) => Su2Matrix::diagonal(-0.5 * psi),
            GateSpec::Diag(psi) => Su2Matrix::diagonal(psi),
            GateSpec::Raw { alpha, beta } => Su2Matrix::from_complex_pair(alpha, beta)?,
        })
    }
}

fn angle_arg(s: &str, name: &str) -> Option<f64> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.trim().parse().ok().filter(|v: &f64| v.is_finite())
}

impl FromStr for GateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "identity" | "id" => return Ok(GateSpec::Identity),
            "swap" => return Ok(GateSpec::Swap),
            "hadamard" | "h" => return Ok(GateSpec::Hadamard),
            _ => {}
        }
        if let Some(psi) = angle_arg(s, "phase") {
            return Ok(GateSpec::Phase(psi));
        }
        if let Some(psi) = angle_arg(s, "diag") {
            return Ok(GateSpec::Diag(psi));
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() == 4 {
            let v: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
            if let Ok(v) = v {
                if v.iter().all(|x| x.is_finite()) {
                    return Ok(GateSpec::Raw {
                        alpha: Complex64::new(v[0], v[1]),
                        beta: Complex64::new(v[2], v[3]),
                    });
                }
            }
        }
        Err(format!(
            "unknown gate `{s}`: expected identity, swap, hadamard, phase(ψ), diag(ψ) or a_re,a_im,b_re,b_im"
        ))
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateSpec::Identity => write!(f, "identity"),
            GateSpec::Swap => write!(f, "swap"),
            GateSpec::Hadamard => write!(f, "hadamard"),
            GateSpec::Phase(p) => write!(f, "phase({p})"),
            GateSpec::Diag(p) => write!(f, "diag({p})"),
            GateSpec::Raw { alpha, beta } => write!(f, "{},{},{},{}", alpha.re, alpha.im, beta.re, beta.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn parses_named_and_raw_gates() {
        assert_eq!("swap".parse::<GateSpec>().unwrap(), GateSpec::Swap);
        assert_eq!("Hadamard".parse::<GateSpec>().unwrap(), GateSpec::Hadamard);
        assert_eq!("diag(3.5)".parse::<GateSpec>().unwrap(), GateSpec::Diag(3.5));
        assert_eq!("phase( 1 )".parse::<GateSpec>().unwrap(), GateSpec::Phase(1.0));
        let raw: GateSpec = "0.6, 0, 0, 0.8".parse().unwrap();
        let m = raw.matrix().unwrap();
        assert!((m.alpha() - Complex64::new(0.6, 0.0)).norm() < 1e-15);
        assert!((m.beta() - Complex64::new(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_gates() {
        for bad in ["cnot", "diag()", "diag(x)", "1,2,3", "nan,0,0,1"] {
            assert!(bad.parse::<GateSpec>().is_err(), "{bad}");
        }
        let raw: GateSpec = "1,0,1,0".parse().unwrap();
        assert!(raw.matrix().is_err());
    }

    #[test]
    fn named_gates_match_standard_matrices() {
        let h = GateSpec::Hadamard.matrix().unwrap();
        assert!((h.alpha().re - FRAC_1_SQRT_2).abs() < 1e-15 && (h.beta().re - FRAC_1_SQRT_2).abs() < 1e-15);
        let s = GateSpec::Swap.matrix().unwrap();
        assert_eq!((s.alpha(), s.beta()), (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
        let p = GateSpec::Phase(PI).matrix().unwrap();
        assert!((p.alpha() - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }
}
