use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use su2opt_core::oracle::Report;
use su2opt_core::suites::{run_suite, Suite};
use su2opt_core::synthesis::SynthesisOptions;

use su2opt_cli::atlas::{atlas, atlas_csv, atlas_svg, Preset};
use su2opt_cli::gate::GateSpec;
use su2opt_cli::synth::{synthesis_csv, synthesize_document};
use su2opt_cli::trace::{trace, trace_csv};
use su2opt_cli::{CliError, Exit};

/// Time-optimal control of dX/dt = (σ_z + u_x σ_x + u_y σ_y) X on SU(2)
/// with |u| ≤ γ.
#[derive(Debug, Parser)]
#[command(name = "su2opt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Control bound relative to the drift, in (0, 1].
    #[arg(long)]
    gamma: f64,

    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal law, minimum time, controls and trajectory for a target gate.
    Synthesize {
        #[command(flatten)]
        common: Common,

        /// identity, swap, hadamard, phase(ψ), diag(ψ) or a_re,a_im,b_re,b_im.
        #[arg(long)]
        gate: String,

        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,

        /// Samples of the controls and the trajectory.
        #[arg(long, default_value_t = 101)]
        samples: usize,

        /// Final-state residual accepted.
        #[arg(long, env = "SU2OPT_TOL")]
        tol: Option<f64>,
    },
    /// Uniform samples (s, x, y, r, psi, delta) along one extremal.
    Trace {
        #[command(flatten)]
        common: Common,

        #[arg(long, allow_negative_numbers = true)]
        omega: f64,

        /// Final curve time; defaults to the boundary time π/a.
        #[arg(long)]
        s_max: Option<f64>,

        #[arg(long, default_value_t = 401)]
        samples: usize,

        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Curve families of the phase-portrait figures as CSV.
    Atlas {
        #[command(flatten)]
        common: Common,

        /// diagonal-family, inside-family or swap-family.
        #[arg(long)]
        preset: String,

        /// Samples per curve.
        #[arg(long, default_value_t = 400)]
        samples: usize,

        /// Also write an SVG plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Runs a verification suite and prints a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,

        /// facts, appendix-a, appendix-b, oracle or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Serialize)]
struct VerifyDocument {
    gamma: f64,
    passed: bool,
    reports: Vec<Report>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn check_gamma(gamma: f64) -> Result<(), CliError> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--gamma {gamma} must lie in (0, 1]")))
    }
}

fn run(cli: Cli) -> Result<Exit, CliError> {
    match cli.command {
        Command::Synthesize {
            common,
            gate,
            format,
            samples,
            tol,
        } => {
            check_gamma(common.gamma)?;
            let spec: GateSpec = gate.parse().map_err(CliError::Usage)?;
            let target = spec.matrix()?;
            let mut opts = SynthesisOptions::default();
            if let Some(tol) = tol {
                if !(tol > 0.0) {
                    return Err(CliError::Usage(format!("--tol {tol} must be positive")));
                }
                opts.residual_tol = tol;
            }
            let doc = synthesize_document(common.gamma, &spec.to_string(), &target, &opts, samples)?;
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Csv => synthesis_csv(&doc),
            };
            emit(&common.out, &text)?;
        }
        Command::Trace {
            common,
            omega,
            s_max,
            samples,
            format,
        } => {
            check_gamma(common.gamma)?;
            let s_max = s_max.unwrap_or_else(|| std::f64::consts::PI / (1.0 - omega).hypot(common.gamma));
            let rows = trace(common.gamma, omega, s_max, samples)?;
            let text = match format {
                Format::Csv => trace_csv(&rows),
                Format::Json => to_json(&rows),
            };
            emit(&common.out, &text)?;
        }
        Command::Atlas {
            common,
            preset,
            samples,
            svg,
        } => {
            check_gamma(common.gamma)?;
            let preset: Preset = preset.parse().map_err(CliError::Usage)?;
            if samples < 2 {
                return Err(CliError::Usage("--samples must be at least 2".into()));
            }
            let curves = atlas(common.gamma, preset, samples)?;
            emit(&common.out, &atlas_csv(&curves))?;
            if let Some(path) = svg {
                let title = format!("{} (γ = {})", preset.name(), common.gamma);
                std::fs::write(path, atlas_svg(&title, preset, &curves))?;
            }
        }
        Command::Verify { common, suite } => {
            check_gamma(common.gamma)?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(&suite).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown suite `{suite}`: expected facts, appendix-a, appendix-b, oracle or all"
                    ))
                })?]
            };
            let reports = suites
                .into_iter()
                .map(|s| run_suite(s, common.gamma))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(Report::passed);
            emit(
                &common.out,
                &to_json(&VerifyDocument {
                    gamma: common.gamma,
                    passed,
                    reports,
                }),
            )?;
            if !passed {
                return Ok(Exit::VerificationFailed);
            }
        }
    }
    Ok(Exit::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Usage as u8),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("su2opt: {e}");
            ExitCode::from(e.exit() as u8)
        }
    }
}
