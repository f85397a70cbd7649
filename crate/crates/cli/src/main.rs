//! Command-line frontend: entropy vectors, bound checks, face queries,
//! distribution construction, brute-force verification, and the one-shot
//! reproduction harness.

mod output;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use entrocone::bounds::{run_named_check, CheckInput, BOUND_NAMES};
use entrocone::construct::{
    mod_m_uniform, solve_interior_p, xnor_triple_from_pair, TablePair, XnorFamilyParams,
};
use entrocone::entropy::entropy_vector;
use entrocone::faces::{face_membership, strict_interiority, FaceSpec};
use entrocone::oracle::{
    hypothesis_preset, scan_face_for_inner_bound_gaps, verify_universal, Conclusion, GridSpec,
};
use entrocone::quad::parse_prob;
use entrocone::{EntropyVector, Error, JointDistribution};

use output::{render, Format};

#[derive(Parser)]
#[command(name = "entrocone")]
#[command(about = "entropy vectors and entropic bounds on the faces of the three-variable Shannon cone")]
struct Cli {
    /// Base of the logarithm used for entropies.
    #[arg(long, global = true, default_value_t = 2.0)]
    base: f64,

    /// Tolerance for equality checks on entropy-valued quantities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the entropy vector of a distribution file
    Entropy {
        /// Distribution JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a named bound check against a distribution or vector file
    Check {
        /// One of the registered bound names.
        #[arg(long)]
        bound: String,
        /// Distribution or vector JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Face membership, decomposition and strict interiority
    Face {
        /// Comma-separated ray list, e.g. R12,R23,R123p.
        #[arg(long)]
        face: String,
        /// Distribution or vector JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Build a distribution from a named family
    Construct {
        /// Family: xnor or modm.
        #[arg(long)]
        family: String,
        /// XNOR family: which two variables the table describes (12, 13, 23).
        #[arg(long)]
        pair: Option<String>,
        /// Table cell p; solved from q and r when omitted.
        #[arg(long)]
        p: Option<String>,
        /// Table cell q.
        #[arg(long)]
        q: Option<String>,
        /// Table cell r.
        #[arg(long)]
        r: Option<String>,
        /// Mod-m family: the support size m.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Brute-force enumeration and universal verification
    Oracle {
        #[command(subcommand)]
        action: OracleCommand,
    },
    /// Re-derive every recorded reference value and sweep end to end
    Reproduce,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Enumerate a constrained grid and verify a conclusion on every pmf
    Verify {
        /// Constraint preset: eqs14-17 (alias same-marginal) or eqs903-902 (alias maxmin).
        #[arg(long)]
        constraints: String,
        /// Comma-separated support sizes, e.g. 2,2,2.
        #[arg(long)]
        supports: String,
        /// Grid denominator D: probabilities are multiples of 1/D.
        #[arg(long)]
        grid: u32,
        /// Conclusion: marginal-equality, entropy-equality or maxmin.
        #[arg(long)]
        conclusion: String,
    },
    /// Scan a face for points strictly inside it but outside its inner bound
    Scan {
        /// Face ray list: R12,R23,R123p or the dependent five-ray face.
        #[arg(long)]
        face: String,
        /// Grid denominator.
        #[arg(long)]
        grid: u32,
    },
}

/// Either kind of JSON input file.
fn load_input(path: &PathBuf) -> Result<CheckInput, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("bad JSON in {}: {e}", path.display()))?;
    if value.get("pmf").is_some() {
        Ok(CheckInput::Distribution(
            JointDistribution::from_json(&value).map_err(|e| e.to_string())?,
        ))
    } else if value.get("h").is_some() {
        Ok(CheckInput::Vector(
            EntropyVector::from_json_str(&text).map_err(|e| e.to_string())?,
        ))
    } else {
        Err(format!(
            "{} is neither a distribution (pmf) nor a vector (h) file",
            path.display()
        ))
    }
}

fn emit(report: &serde_json::Value, format: Format, out: &Option<PathBuf>) -> Result<(), String> {
    let text = render(report, format);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_supports(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad support size `{s}`"))
        })
        .collect()
}

/// Exit code contract: 0 satisfied/inside, 1 violated/outside, 2 errors and
/// precondition mismatches.
fn run(cli: Cli) -> Result<u8, String> {
    let base = cli.base;
    let tol = cli.tol;
    if base <= 1.0 {
        return Err(format!("--base must exceed 1, got {base}"));
    }
    if tol <= 0.0 {
        return Err(format!("--tol must be positive, got {tol}"));
    }

    match cli.command {
        Command::Entropy { input } => {
            let loaded = load_input(&input)?;
            let dist = match loaded {
                CheckInput::Distribution(d) => d,
                CheckInput::Vector(_) => {
                    return Err("entropy expects a distribution file".into())
                }
            };
            let h = entropy_vector(&dist, base).map_err(|e| e.to_string())?;
            let report = serde_json::json!({
                "n": dist.n(),
                "base": base,
                "h": h.components(),
                "config": { "base": base, "tol": tol },
            });
            emit(&report, cli.format, &cli.out)?;
            Ok(0)
        }
        Command::Check { bound, input } => {
            if !BOUND_NAMES.contains(&bound.as_str()) {
                return Err(format!(
                    "unknown bound `{bound}`; expected one of {}",
                    BOUND_NAMES.join(", ")
                ));
            }
            let loaded = load_input(&input)?;
            match run_named_check(&bound, &loaded, base, tol) {
                Ok(verdict) => {
                    let code = if verdict.satisfied { 0 } else { 1 };
                    let mut report = serde_json::to_value(&verdict).expect("serializable");
                    report["config"] = serde_json::json!({ "base": base, "tol": tol });
                    emit(&report, cli.format, &cli.out)?;
                    Ok(code)
                }
                Err(e @ (Error::FaceMismatch(_) | Error::ConstraintReport(_))) => {
                    let report = serde_json::json!({
                        "bound": bound,
                        "precondition_error": e.to_string(),
                        "config": { "base": base, "tol": tol },
                    });
                    emit(&report, cli.format, &cli.out)?;
                    Ok(2)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Face { face, input } => {
            let face = FaceSpec::parse(&face).map_err(|e| e.to_string())?;
            let loaded = load_input(&input)?;
            let h = match &loaded {
                CheckInput::Vector(h) => h.clone(),
                CheckInput::Distribution(d) => {
                    entropy_vector(d, base).map_err(|e| e.to_string())?
                }
            };
            let membership = face_membership(&h, &face, tol).map_err(|e| e.to_string())?;
            let mut report = match membership {
                None => serde_json::json!({
                    "face": face.display_name(),
                    "catalog": face.is_catalog(),
                    "member": false,
                }),
                Some(m) => {
                    let interiority =
                        strict_interiority(&h, &face, tol).map_err(|e| e.to_string())?;
                    serde_json::json!({
                        "face": face.display_name(),
                        "catalog": face.is_catalog(),
                        "dimension": face.dimension(),
                        "member": true,
                        "coefficients": m.coefficients,
                        "unique": m.unique,
                        "residual": m.residual,
                        "parameters": m.parameters,
                        "strict_interior": interiority.strict,
                        "subface_hits": interiority.hits,
                    })
                }
            };
            report["config"] = serde_json::json!({ "base": base, "tol": tol });
            let member = report["member"].as_bool().unwrap_or(false);
            emit(&report, cli.format, &cli.out)?;
            Ok(if member { 0 } else { 1 })
        }
        Command::Construct {
            family,
            pair,
            p,
            q,
            r,
            m,
        } => {
            let dist = match family.as_str() {
                "modm" => {
                    let m = m.ok_or("modm needs --m")?;
                    mod_m_uniform(m).map_err(|e| e.to_string())?
                }
                "xnor" => {
                    let pair = TablePair::parse(&pair.ok_or("xnor needs --pair")?)
                        .map_err(|e| e.to_string())?;
                    let q_text = q.ok_or("xnor needs --q")?;
                    let r_text = r.ok_or("xnor needs --r")?;
                    let q = parse_prob(&q_text, None).map_err(|e| e.to_string())?;
                    let r = parse_prob(&r_text, None).map_err(|e| e.to_string())?;
                    let p = match p {
                        Some(text) => parse_prob(&text, None).map_err(|e| e.to_string())?,
                        None => {
                            // Solve the pair-independence quadratic; take the
                            // + root as the canonical choice.
                            let q_rat = q.as_rational().ok_or(
                                "solving for p needs rational q and r",
                            )?;
                            let r_rat = r
                                .as_rational()
                                .ok_or("solving for p needs rational q and r")?;
                            solve_interior_p(q_rat, r_rat)
                                .map_err(|e| e.to_string())?
                                .plus
                        }
                    };
                    let params =
                        XnorFamilyParams::new(p, q, r).map_err(|e| e.to_string())?;
                    xnor_triple_from_pair(&params.cells(), pair).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown family `{other}` (xnor or modm)")),
            };
            emit(&dist.to_json(), cli.format, &cli.out)?;
            Ok(0)
        }
        Command::Oracle { action } => match action {
            OracleCommand::Verify {
                constraints,
                supports,
                grid,
                conclusion,
            } => {
                let constraints = hypothesis_preset(&constraints).map_err(|e| e.to_string())?;
                let supports = parse_supports(&supports)?;
                let conclusion = Conclusion::parse(&conclusion).map_err(|e| e.to_string())?;
                let mut spec =
                    GridSpec::new(supports, grid, constraints).map_err(|e| e.to_string())?;
                spec.tol = tol;
                let report = verify_universal(&spec, conclusion, base)
                    .map_err(|e| e.to_string())?;
                let clean = report.failures.is_empty();
                let mut report = serde_json::to_value(&report).expect("serializable");
                report["config"] = serde_json::json!({ "base": base, "tol": tol });
                emit(&report, cli.format, &cli.out)?;
                Ok(if clean { 0 } else { 1 })
            }
            OracleCommand::Scan { face, grid } => {
                let face = FaceSpec::parse(&face).map_err(|e| e.to_string())?;
                let mut spec = GridSpec::new(vec![2, 2, 2], grid, vec![])
                    .map_err(|e| e.to_string())?;
                spec.tol = tol;
                let gaps = scan_face_for_inner_bound_gaps(&face, &spec, base)
                    .map_err(|e| e.to_string())?;
                let report = serde_json::json!({
                    "face": face.display_name(),
                    "grid": grid,
                    "count": gaps.len(),
                    "gaps": gaps.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
                    "config": { "base": base, "tol": tol },
                });
                emit(&report, cli.format, &cli.out)?;
                Ok(0)
            }
        },
        Command::Reproduce => {
            let (report, pass) = reproduce::run(base, tol);
            emit(&report, cli.format, &cli.out)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
