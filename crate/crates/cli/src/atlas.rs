//! Curve families of the phase-portrait figures.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::str::FromStr;

use su2opt_core::geometry::{critical_circle, separatrix};
use su2opt_core::synthesis::optimality_horizon;
use su2opt_core::{DiskPoint, ExtremalLaw, ModelConstants, Result};

use crate::output::{num, svg, SvgPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Optimal curves to the boundary, `ω ∈ {-3, 0, 1/2}` (and `8/9` when it
    /// is still below `ω*`), with the separatrix.
    DiagonalFamily,
    /// `ω ∈ {1.1, 1.2, 1.5, 1.8}·ω*` up to the critical trajectory, with the
    /// separatrix, the critical trajectory and the critical circle.
    InsideFamily,
    /// Resonant curves `ω = 1` for `γ ∈ {2/7, 1/2, 2/3, 1}` up to their first
    /// self-intersection.
    SwapFamily,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::DiagonalFamily, Preset::InsideFamily, Preset::SwapFamily];

    pub fn name(self) -> &'static str {
        match self {
            Preset::DiagonalFamily => "diagonal-family",
            Preset::InsideFamily => "inside-family",
            Preset::SwapFamily => "swap-family",
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}`: expected diagonal-family, inside-family or swap-family"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Extremal,
    Separatrix,
    CriticalTrajectory,
    CriticalCircle,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Extremal => "extremal",
            CurveKind::Separatrix => "separatrix",
            CurveKind::CriticalTrajectory => "critical_trajectory",
            CurveKind::CriticalCircle => "critical_circle",
        }
    }
}

/// One sampled curve. For circles `param` is the polar angle about the
/// centre; otherwise it is curve time.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub kind: CurveKind,
    pub gamma: f64,
    pub omega: f64,
    pub samples: Vec<(f64, DiskPoint)>,
}

impl Curve {
    fn extremal(kind: CurveKind, gamma: f64, omega: f64, s_end: f64, n: usize) -> Result<Self> {
        let law = ExtremalLaw::new(gamma, omega, 0.0)?;
        let samples = (0..n)
            .map(|j| {
                let s = s_end * j as f64 / (n - 1) as f64;
                (s, law.disk_curve(s))
            })
            .collect();
        Ok(Self {
            kind,
            gamma,
            omega,
            samples,
        })
    }

    fn circle(kind: CurveKind, gamma: f64, center: DiskPoint, radius: f64, n: usize) -> Self {
        let samples = (0..n)
            .map(|j| {
                let th = TAU * j as f64 / (n - 1) as f64;
                (th, DiskPoint::new(center.x + radius * th.cos(), center.y + radius * th.sin()))
            })
            .collect();
        Self {
            kind,
            gamma,
            omega: f64::NAN,
            samples,
        }
    }

    pub fn points(&self) -> Vec<DiskPoint> {
        self.samples.iter().map(|&(_, p)| p).collect()
    }
}

/// Samples the curves of a preset, `n ≥ 2` points each.
pub fn atlas(gamma: f64, preset: Preset, n: usize) -> Result<Vec<Curve>> {
    let n = n.max(2);
    let k = ModelConstants::new(gamma)?;
    let sep = separatrix(gamma)?;
    let sep_curve = || Curve::circle(CurveKind::Separatrix, gamma, sep.center, sep.radius, n);
    let mut out = Vec::new();
    match preset {
        Preset::DiagonalFamily => {
            for w in [-3.0, 0.0, 0.5, 8.0 / 9.0] {
                if w < k.omega_star {
                    let end = PI / (1.0 - w).hypot(gamma);
                    out.push(Curve::extremal(CurveKind::Extremal, gamma, w, end, n)?);
                }
            }
            out.push(sep_curve());
        }
        Preset::InsideFamily => {
            for f in [1.1, 1.2, 1.5, 1.8] {
                let w = f * k.omega_star;
                out.push(Curve::extremal(CurveKind::Extremal, gamma, w, optimality_horizon(gamma, w)?, n)?);
            }
            out.push(sep_curve());
            out.push(Curve::extremal(
                CurveKind::CriticalTrajectory,
                gamma,
                k.omega_c,
                FRAC_PI_2 / k.a_c,
                n,
            )?);
            let cc = critical_circle(gamma)?;
            out.push(Curve::circle(CurveKind::CriticalCircle, gamma, cc.center, cc.radius, n));
        }
        Preset::SwapFamily => {
            for g in [2.0 / 7.0, 0.5, 2.0 / 3.0, 1.0] {
                // α(s) = e^{is} cos(γs) revisits α(π/2γ - π/2) at π/2γ + π/2
                out.push(Curve::extremal(CurveKind::Extremal, g, 1.0, FRAC_PI_2 / g + FRAC_PI_2, n)?);
            }
        }
    }
    Ok(out)
}

pub const ATLAS_HEADER: &str = "curve,kind,gamma,omega,param,x,y";

pub fn atlas_csv(curves: &[Curve]) -> String {
    let mut out = String::from(ATLAS_HEADER);
    out.push('\n');
    for (i, c) in curves.iter().enumerate() {
        for &(t, p) in &c.samples {
            out.push_str(&format!(
                "{i},{},{},{},{},{},{}\n",
                c.kind.name(),
                num(c.gamma),
                num(c.omega),
                num(t),
                num(p.x),
                num(p.y)
            ));
        }
    }
    out
}

const PALETTE: [&str; 4] = ["#1f4fd1", "#d12f1f", "#1f9d3a", "#111111"];

pub fn atlas_svg(title: &str, preset: Preset, curves: &[Curve]) -> String {
    let points: Vec<Vec<DiskPoint>> = curves.iter().map(Curve::points).collect();
    let labels: Vec<String> = curves
        .iter()
        .map(|c| match c.kind {
            CurveKind::Extremal => format!("γ = {}, ω = {}", c.gamma, c.omega),
            k => k.name().to_string(),
        })
        .collect();
    let mut extremal = 0;
    let paths: Vec<SvgPath<'_>> = curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let color = match (preset, c.kind) {
                (Preset::SwapFamily, _) => {
                    extremal += 1;
                    // red, blue, green, black as in the figure
                    [PALETTE[1], PALETTE[0], PALETTE[2], PALETTE[3]][(extremal - 1) % 4]
                }
                (_, CurveKind::Extremal) => PALETTE[0],
                (_, CurveKind::Separatrix) | (_, CurveKind::CriticalCircle) => PALETTE[1],
                (_, CurveKind::CriticalTrajectory) => PALETTE[3],
            };
            SvgPath {
                label: &labels[i],
                color,
                points: &points[i],
            }
        })
        .collect();
    svg(title, &paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig9".parse::<Preset>().is_err());
    }

    #[test]
    fn diagonal_family_reaches_the_boundary() {
        let curves = atlas(0.5, Preset::DiagonalFamily, 200).unwrap();
        let omegas: Vec<f64> = curves.iter().filter(|c| c.kind == CurveKind::Extremal).map(|c| c.omega).collect();
        assert_eq!(omegas, vec![-3.0, 0.0, 0.5]);
        let end = curves[1].samples.last().unwrap().1;
        assert!((end.x + 1.0).abs() < 1e-9 && end.y.abs() < 1e-9);
        assert_eq!(curves.last().unwrap().kind, CurveKind::Separatrix);
        let at_one = atlas(1.0, Preset::DiagonalFamily, 10).unwrap();
        assert!(at_one.iter().any(|c| c.omega == 8.0 / 9.0));
    }

    #[test]
    fn swap_family_closes_at_gamma_one() {
        let curves = atlas(0.5, Preset::SwapFamily, 400).unwrap();
        assert_eq!(curves.len(), 4);
        let last = curves[3].samples.last().unwrap().1;
        assert!(last.dist(&DiskPoint::START) < 1e-12);
        // self-intersection: the γ = 1/2 curve revisits its point at π/2
        let law = ExtremalLaw::new(0.5, 1.0, 0.0).unwrap();
        assert!(law.disk_curve(PI - FRAC_PI_2).dist(&law.disk_curve(PI + FRAC_PI_2)) < 1e-12);
    }

    #[test]
    fn csv_is_deterministic() {
        let a = atlas_csv(&atlas(1.0, Preset::InsideFamily, 50).unwrap());
        let b = atlas_csv(&atlas(1.0, Preset::InsideFamily, 50).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 1 + 7 * 50);
    }
}
