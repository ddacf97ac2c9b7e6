//! The `synthesize` document: result, sampled controls and trajectory.

use serde::Serialize;
use su2opt_core::synthesis::{synthesize_with, SynthesisOptions};
use su2opt_core::{ModelConstants, Result, Su2Matrix, SynthesisResult};

use crate::output::{csv_row, num};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ControlSample {
    pub t_phys: f64,
    pub u_x: f64,
    pub u_y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub s: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisDocument {
    pub gamma: f64,
    pub gate: String,
    /// First row of the target, `[[re, im], [re, im]]`.
    pub target: [[f64; 2]; 2],
    pub omega_star: f64,
    pub omega_over_omega_star: f64,
    pub result: SynthesisResult,
    pub controls: Vec<ControlSample>,
    pub trajectory: Vec<TrajectorySample>,
}

pub fn synthesize_document(
    gamma: f64,
    gate: &str,
    target: &Su2Matrix,
    opts: &SynthesisOptions,
    samples: usize,
) -> Result<SynthesisDocument> {
    let k = ModelConstants::new(gamma)?;
    let result = synthesize_with(gamma, target, opts)?;
    let law = result.law(gamma)?;
    let n = samples.max(2);
    let mut controls = Vec::with_capacity(n);
    let mut trajectory = Vec::with_capacity(n);
    for j in 0..n {
        let s = result.s_final * j as f64 / (n - 1) as f64;
        let (u_x, u_y) = law.controls_at(2.0 * s);
        controls.push(ControlSample {
            t_phys: 2.0 * s,
            u_x,
            u_y,
        });
        let p = law.disk_curve(s);
        trajectory.push(TrajectorySample { s, x: p.x, y: p.y });
    }
    let (a, b) = (target.alpha(), target.beta());
    Ok(SynthesisDocument {
        gamma,
        gate: gate.to_string(),
        target: [[a.re, a.im], [b.re, b.im]],
        omega_star: k.omega_star,
        omega_over_omega_star: result.omega / k.omega_star,
        result,
        controls,
        trajectory,
    })
}

pub const SYNTH_HEADER: &str = "s,t_phys,x,y,u_x,u_y";

/// Summary as `# key = value` comment lines, then one row per sample.
pub fn synthesis_csv(doc: &SynthesisDocument) -> String {
    let r = &doc.result;
    let mut out = String::new();
    for (key, value) in [
        ("gamma", num(doc.gamma)),
        ("omega", num(r.omega)),
        ("omega_over_omega_star", num(doc.omega_over_omega_star)),
        ("s_final", num(r.s_final)),
        ("phi_tilde", num(r.phi_tilde)),
        ("t_curve", num(r.t_curve)),
        ("t_physical", num(r.t_physical)),
        ("residual", num(r.residual)),
        ("region", format!("{:?}", r.region)),
        ("unproven_regime", r.unproven_regime.to_string()),
    ] {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out.push_str(SYNTH_HEADER);
    out.push('\n');
    for (c, p) in doc.controls.iter().zip(&doc.trajectory) {
        out.push_str(&csv_row(&[p.s, c.t_phys, p.x, p.y, c.u_x, c.u_y]));
        out.push('\n');
    }
    out
}
