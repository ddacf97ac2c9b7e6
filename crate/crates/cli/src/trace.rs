//! Uniform samples along one extremal.

use serde::Serialize;
use su2opt_core::geometry::delta;
use su2opt_core::{Error, ExtremalLaw, Result};

use crate::output::csv_row;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub r: f64,
    /// Continuous phase, `0` at `s = 0`.
    pub psi: f64,
    /// Signed squared-distance function to the separatrix.
    pub delta: f64,
}

pub fn trace(gamma: f64, omega: f64, s_max: f64, samples: usize) -> Result<Vec<TraceRow>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("samples = {samples}, need at least 2")));
    }
    if !(s_max > 0.0) || !s_max.is_finite() {
        return Err(Error::InvalidArgument(format!("s_max = {s_max} must be positive")));
    }
    let law = ExtremalLaw::new(gamma, omega, 0.0)?;
    Ok((0..samples)
        .map(|j| {
            let s = s_max * j as f64 / (samples - 1) as f64;
            let p = law.disk_curve(s);
            TraceRow {
                s,
                x: p.x,
                y: p.y,
                r: p.r(),
                psi: law.phase(s),
                delta: delta(&law, s),
            }
        })
        .collect())
}

pub const TRACE_HEADER: &str = "s,x,y,r,psi,delta";

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(&[r.s, r.x, r.y, r.r, r.psi, r.delta]));
        out.push('\n');
    }
    out
}
