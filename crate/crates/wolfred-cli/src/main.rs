//! Command-line front end: orbit classification, moment evaluation,
//! zero-locus sampling, gradient flow, G2 membership checks, and the static
//! tables, all over JSON with reproducible seeds.
//!
//! Exit codes: 0 success, 1 input error, 2 numerical conditioning,
//! 3 non-convergence report from the flow.

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::io::Read;
use std::process::ExitCode;
use wolfred::algebra::g2::{g2_algebra_residuals, g2_group_check};
use wolfred::algebra::{table::TableFixture, Algebra, SevenVector};
use wolfred::json::{FamilyJson, MatrixJson, TypeSumJson};
use wolfred::lie::Sig;
use wolfred::moment::flow::{flow, FlowOptions, FlowOutcome};
use wolfred::moment::sample::sample_zero_locus_canonical;
use wolfred::moment::{energy, moment, MomentAction};
use wolfred::orbit::{classify, classify_exact, family_label, is_proper_free, DEFAULT_TOL};
use wolfred::OrbitError;

#[derive(Parser)]
#[command(name = "wolfred", about = "Quaternionic-Kaehler reductions of the Grassmannian Wolf spaces: moment maps, zero loci, and adjoint-orbit classification for SO(7) and SO0(3,4)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file (defaults to stdin where input is required)
    #[arg(long = "in", global = true)]
    input: Option<std::path::PathBuf>,
    /// Output file (defaults to stdout)
    #[arg(long = "out", global = true)]
    output: Option<std::path::PathBuf>,
    /// Numerical tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Random seed
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Metric signature; must agree with the input's "sig" field when both
    /// are given
    #[arg(long, global = true, value_enum)]
    sig: Option<SigArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigArg {
    #[value(name = "7,0")]
    Compact,
    #[value(name = "3,4")]
    Split,
}

impl From<SigArg> for Sig {
    fn from(s: SigArg) -> Sig {
        match s {
            SigArg::Compact => Sig::Compact,
            SigArg::Split => Sig::Split,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum G2Level {
    Group,
    Algebra,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an element of so(3,4) (or so(7)) into its orbit type
    Classify,
    /// Evaluate the moment map: input {"v": matrix, "g": matrix}
    Moment,
    /// Sample the canonical zero locus of A_x
    ZeroLocus {
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Run the energy gradient flow: input {"v": matrix, "g0": matrix?}
    Flow {
        #[arg(long)]
        step: Option<f64>,
        #[arg(long, default_value_t = 20000)]
        max_steps: usize,
    },
    /// Check G2(V) membership of a matrix
    G2Check {
        #[arg(long, value_enum, default_value_t = G2Level::Group)]
        level: G2Level,
    },
    /// Dump the golden multiplication tables and the 24-family table
    Tables,
}

fn read_input(cli: &Cli) -> Result<String, String> {
    match &cli.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn write_output(cli: &Cli, value: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match &cli.output {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[derive(Deserialize)]
struct MomentInput {
    v: MatrixJson,
    g: MatrixJson,
}

#[derive(Deserialize)]
struct ZeroLocusInput {
    sig: Sig,
    x: [f64; 7],
}

#[derive(Deserialize)]
struct FlowInput {
    v: MatrixJson,
    g0: Option<MatrixJson>,
}

#[derive(Serialize)]
struct ClassifyReport {
    type_sum: TypeSumJson,
    family: FamilyJson,
    properness: wolfred::orbit::Properness,
    height: u32,
    exact: bool,
    /// Canonical representative of the computed type sum; feeding it back
    /// into `classify` reproduces the same family.
    representative: Option<MatrixJson>,
    tol: f64,
}

fn check_sig(cli: &Cli, input_sig: Sig) -> Result<(), String> {
    if let Some(flag) = cli.sig {
        if Sig::from(flag) != input_sig {
            return Err("--sig disagrees with the input's signature".into());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    if let Some(t) = cli.tol {
        if t <= 0.0 || t.is_nan() {
            return Err("tolerance must be positive".into());
        }
    }
    match &cli.command {
        Command::Classify => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let input = read_input(cli)?;
            let mj: MatrixJson = serde_json::from_str(&input).map_err(|e| e.to_string())?;
            check_sig(cli, mj.sig)?;
            let a = mj.to_skew_adjoint()?;
            MomentAction::new(a.clone())
                .map_err(|_| "zero matrix does not generate a one-dimensional action".to_string())?;
            // exact path first when the entries are rational
            let mut used_exact = false;
            let ts = match mj.to_qmat().and_then(|q| classify_exact(&q, mj.sig).ok().flatten()) {
                Some(ts) => {
                    used_exact = true;
                    ts
                }
                None => match classify(&a, tol) {
                    Ok(ts) => ts,
                    Err(e @ OrbitError::IllConditioned { .. }) => {
                        eprintln!("error: {e}");
                        return Ok(ExitCode::from(2));
                    }
                    Err(e) => return Err(e.to_string()),
                },
            };
            if mj.sig == Sig::Compact {
                let rates = wolfred::orbit::classify_compact(a.matrix());
                let report = json!({
                    "type_sum": TypeSumJson::from_type_sum(&ts),
                    "rotation_rates": rates,
                    "height": ts.height(),
                    "exact": used_exact,
                    "tol": tol,
                });
                write_output(cli, &report)?;
                return Ok(ExitCode::SUCCESS);
            }
            let fl = family_label(&ts).map_err(|e| e.to_string())?;
            let representative = wolfred::orbit::canonical_representative(&ts)
                .ok()
                .map(|r| MatrixJson::from_mat(Sig::Split, r.matrix()));
            let report = ClassifyReport {
                type_sum: TypeSumJson::from_type_sum(&ts),
                family: FamilyJson::from_label(&fl),
                properness: is_proper_free(&fl),
                height: ts.height(),
                exact: used_exact,
                representative,
                tol,
            };
            write_output(cli, &serde_json::to_value(report).map_err(|e| e.to_string())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Moment => {
            let tol = cli.tol.unwrap_or(1e-9);
            let input = read_input(cli)?;
            let mi: MomentInput = serde_json::from_str(&input).map_err(|e| e.to_string())?;
            check_sig(cli, mi.v.sig)?;
            let action = MomentAction::new(mi.v.to_skew_adjoint()?).map_err(|e| e.to_string())?;
            let v = action.generator().clone();
            let g = mi.g.to_group_element(1e-8)?;
            let mu = moment(&v, &g).map_err(|e| e.to_string())?;
            let e = energy(&v, &g).map_err(|e| e.to_string())?;
            let regularity = wolfred::moment::classify_regularity(&v, &g, tol);
            write_output(
                cli,
                &json!({
                    "moment": [mu[0], mu[1], mu[2]],
                    "energy": e,
                    "on_zero_locus": mu.norm() <= tol,
                    "regularity": regularity,
                    "tol": tol,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ZeroLocus { n } => {
            let tol = cli.tol.unwrap_or(1e-9);
            let input = read_input(cli)?;
            let zi: ZeroLocusInput = serde_json::from_str(&input).map_err(|e| e.to_string())?;
            check_sig(cli, zi.sig)?;
            let x = SevenVector::new(zi.sig.algebra(), zi.x);
            let pts = sample_zero_locus_canonical(&x, *n, cli.seed, tol)
                .map_err(|e| e.to_string())?;
            let max_residual = pts.iter().map(|p| p.residual).fold(0.0f64, f64::max);
            let points: Vec<serde_json::Value> = pts
                .iter()
                .map(|p| {
                    json!({
                        "g": MatrixJson::from_mat(zi.sig, p.g.matrix()),
                        "residual": p.residual,
                        "regularity": p.regularity,
                    })
                })
                .collect();
            write_output(
                cli,
                &json!({
                    "points": points,
                    "max_residual": max_residual,
                    "n": n,
                    "seed": cli.seed,
                    "tol": tol,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Flow { step, max_steps } => {
            let tol = cli.tol.unwrap_or(1e-9);
            let input = read_input(cli)?;
            let fi: FlowInput = serde_json::from_str(&input).map_err(|e| e.to_string())?;
            check_sig(cli, fi.v.sig)?;
            let action = MomentAction::new(fi.v.to_skew_adjoint()?).map_err(|e| e.to_string())?;
            let v = action.generator().clone();
            let sig = v.sig();
            let g0 = match fi.g0 {
                Some(m) => m.to_group_element(1e-8)?,
                None => wolfred::lie::GroupElement::identity(sig),
            };
            let opts = FlowOptions {
                step: step.unwrap_or(0.25),
                max_steps: *max_steps,
                tol,
                record: true,
                ..FlowOptions::default()
            };
            let res = flow(&v, &g0, &opts).map_err(|e| e.to_string())?;
            let trajectory: Vec<serde_json::Value> = res
                .trajectory
                .iter()
                .map(|s| {
                    json!({
                        "t": s.t,
                        "energy": s.energy,
                        "g": MatrixJson::from_mat(sig, s.g.matrix()),
                    })
                })
                .collect();
            let report = json!({
                "outcome": res.outcome,
                "steps": res.steps,
                "final_energy": res.trajectory.last().map(|s| s.energy),
                "trajectory": trajectory,
                "g": MatrixJson::from_mat(sig, res.g.matrix()),
                "tol": tol,
            });
            write_output(cli, &report)?;
            match res.outcome {
                FlowOutcome::NotConverged => Ok(ExitCode::from(3)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Command::G2Check { level } => {
            let tol = cli.tol.unwrap_or(1e-9);
            let input = read_input(cli)?;
            let mj: MatrixJson = serde_json::from_str(&input).map_err(|e| e.to_string())?;
            let m = mj.to_mat()?;
            let alg = mj.sig.algebra();
            let (is_member, max_residual) = match level {
                G2Level::Group => {
                    let chk = g2_group_check(&m, alg, tol);
                    (chk.is_member, chk.max_residual)
                }
                G2Level::Algebra => {
                    // algebra-level membership presumes eta-skewness
                    let a = mj.to_skew_adjoint()?;
                    let res = g2_algebra_residuals(a.matrix(), alg);
                    let worst = res.iter().fold(0.0f64, |m, r| m.max(r.abs()));
                    (worst <= tol, worst)
                }
            };
            write_output(
                cli,
                &json!({ "is_member": is_member, "max_residual": max_residual, "tol": tol }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables => {
            let o = TableFixture::build(Algebra::Octonion);
            let s = TableFixture::build(Algebra::SplitOctonion);
            let families: Vec<serde_json::Value> = wolfred::orbit::FamilyName::ALL
                .iter()
                .map(|name| {
                    json!({
                        "name": name.label(),
                        "params": name.param_count(),
                    })
                })
                .collect();
            write_output(
                cli,
                &json!({ "mult_tables": [o, s], "families": families }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
