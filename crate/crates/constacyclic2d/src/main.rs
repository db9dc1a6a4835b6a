//! Command-line frontend: parse field/ambient specs, run constructions,
//! emit matrices, tables and JSON.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 budget refusal,
//! 4 internal invariant violation.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use constacyclic2d::error::Error;
use constacyclic2d::reduction::ReductionProfile;
use constacyclic2d::ring2d::{Ambient, AmbientSpec};
use constacyclic2d::wmin::DistanceBudget;
use constacyclic2d::{duality, priorcheck, textio, wmin, Code2D};

#[derive(Parser)]
#[command(
    name = "constacyclic2d",
    about = "Construct, canonicalize, dualize and analyze 2D constacyclic codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Field spec, e.g. GF(2) or GF(9; w^2+1)
    #[arg(long)]
    field: Option<String>,
    /// x-direction length
    #[arg(long)]
    n: Option<usize>,
    /// y-direction length
    #[arg(long)]
    m: Option<usize>,
    /// x-direction shift constant
    #[arg(long, default_value = "1")]
    lambda: String,
    /// y-direction shift constant
    #[arg(long, default_value = "1")]
    delta: String,
    /// Comma-separated generator polynomials (empty for the zero code)
    #[arg(long)]
    gens: Option<String>,
    /// Re-ingest a code emitted by `build --json` instead
    #[arg(long, value_name = "FILE")]
    code_json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n - lambda over the field and y^m - delta over each slot
    Factor {
        #[command(flatten)]
        code: CodeArgs,
        /// Factor a single polynomial over the base field instead
        #[arg(long)]
        poly: Option<String>,
        /// Variable of --poly
        #[arg(long, default_value = "x")]
        var: char,
        #[arg(long)]
        json: bool,
    },
    /// Canonical generators and dimension of the code
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Canonical form of the dual code
    Dual {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Generator matrix
    Gmatrix {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Parity-check matrix
    Hmatrix {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Exact minimum distance (refuses above budget)
    Mindist {
        #[command(flatten)]
        code: CodeArgs,
        /// Maximum number of codeword enumerations
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Self-duality check, or enumeration of all self-dual codes
    Selfdual {
        #[command(flatten)]
        code: CodeArgs,
        /// Enumerate every self-dual code of the ambient (ignores --gens)
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Repeated-root reduction table: thresholded codes, weights, T
    Reduce {
        #[command(flatten)]
        code: CodeArgs,
        /// Maximum number of codeword enumerations for the distance column
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Check the prior generating-set claim for one (q, s, k) triple
    CheckPrior {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: Option<u32>,
        /// Verify the published counterexample over F_5 instead
        #[arg(long)]
        counterexample: bool,
        /// Maximum number of generating-tuple expansions
        #[arg(long)]
        budget: Option<u128>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                Error::Internal(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
        Err(_) => {
            eprintln!("error: internal invariant violation (panic)");
            ExitCode::from(4)
        }
    }
}

fn parse_code(args: &CodeArgs) -> Result<Code2D, Error> {
    if let Some(path) = &args.code_json {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad JSON in {path}: {e}")))?;
        return textio::parse_code_json(&value);
    }
    let amb = parse_ambient(args)?;
    let gens = textio::parse_generators(&amb, args.gens.as_deref().unwrap_or(""))?;
    Code2D::canonicalize(&amb, &gens)
}

fn parse_ambient(args: &CodeArgs) -> Result<Ambient, Error> {
    let field_str = args
        .field
        .as_deref()
        .ok_or_else(|| Error::Parse("--field is required (or use --code-json)".into()))?;
    let field = textio::parse_field(field_str)?;
    let n = args
        .n
        .ok_or_else(|| Error::Parse("--n is required".into()))?;
    let m = args
        .m
        .ok_or_else(|| Error::Parse("--m is required".into()))?;
    let lambda = textio::parse_scalar(&field, &args.lambda)?;
    let delta = textio::parse_scalar(&field, &args.delta)?;
    AmbientSpec::new(&field, n, &lambda, m, &delta)
}

fn budget_from(flag: Option<u128>) -> DistanceBudget {
    match flag {
        Some(b) => DistanceBudget::with_enumerations(b),
        None => DistanceBudget::default(),
    }
}

fn print_code(c: &Code2D, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&textio::code_json(c)).unwrap());
        return;
    }
    let amb = c.ambient();
    if amb.is_transposed() {
        println!("note: directions transposed internally (x-direction must be coprime to p)");
    }
    println!("ambient: {}", amb);
    for (j, f) in amb.factors().iter().enumerate() {
        println!("f_{}: {}", j + 1, f);
    }
    for (j, g) in c.gens().iter().enumerate() {
        println!("g_{}: {}", j + 1, textio::tower_poly_string(g));
    }
    println!("dim: {}", c.dimension());
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Factor { code, poly, var, json } => {
            if let Some(p) = poly {
                let field_str = code
                    .field
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--field is required".into()))?;
                let field = textio::parse_field(field_str)?;
                let parsed = textio::parse_unipoly(&field, var, &p)?;
                let fact = parsed.factor()?;
                if json {
                    let factors: Vec<serde_json::Value> = fact
                        .factors
                        .iter()
                        .map(|(f, e)| serde_json::json!({"factor": format!("{f}"), "mult": e}))
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"unit": format!("{}", fact.unit), "factors": factors})
                    );
                } else {
                    println!("unit: {}", fact.unit);
                    for (f, e) in &fact.factors {
                        println!("({f})^{e}");
                    }
                }
                return Ok(());
            }
            let amb = parse_ambient(&code)?;
            if json {
                let mut slots = Vec::new();
                for j in 0..amb.eta() {
                    let fact = amb.y_modulus(j).factor()?;
                    let fs: Vec<serde_json::Value> = fact
                        .factors
                        .iter()
                        .map(|(f, e)| {
                            serde_json::json!({"factor": textio::tower_poly_string(f), "mult": e})
                        })
                        .collect();
                    slots.push(serde_json::json!({
                        "f": format!("{}", amb.factor(j)),
                        "y_factors": fs,
                    }));
                }
                println!("{}", serde_json::json!({"ambient": format!("{amb}"), "slots": slots}));
            } else {
                println!("ambient: {amb}");
                for j in 0..amb.eta() {
                    println!("f_{}: {}", j + 1, amb.factor(j));
                    let fact = amb.y_modulus(j).factor()?;
                    let parts: Vec<String> = fact
                        .factors
                        .iter()
                        .map(|(f, e)| format!("({})^{}", textio::tower_poly_string(f), e))
                        .collect();
                    println!("  y^{} - delta = {}", amb.m(), parts.join(" "));
                }
            }
            Ok(())
        }
        Command::Build { code, json } => {
            let c = parse_code(&code)?;
            print_code(&c, json);
            Ok(())
        }
        Command::Dual { code, json } => {
            let c = parse_code(&code)?;
            print_code(&c.dual(), json);
            Ok(())
        }
        Command::Gmatrix { code, json } => {
            let c = parse_code(&code)?;
            let gm = c.generator_matrix();
            if json {
                println!("{}", textio::matrix_json(&gm));
            } else {
                println!("{}", textio::matrix_text(&gm));
            }
            Ok(())
        }
        Command::Hmatrix { code, json } => {
            let c = parse_code(&code)?;
            let hm = c.parity_check_matrix();
            if json {
                println!("{}", textio::matrix_json(&hm));
            } else {
                println!("{}", textio::matrix_text(&hm));
            }
            Ok(())
        }
        Command::Mindist { code, budget, json } => {
            let c = parse_code(&code)?;
            let d = wmin::min_distance(&c.generator_matrix(), &budget_from(budget))?;
            if json {
                println!("{}", serde_json::json!({"d_min": d}));
            } else {
                println!("d_min = {d}");
            }
            Ok(())
        }
        Command::Selfdual { code, enumerate, json } => {
            if enumerate {
                let amb = parse_ambient(&code)?;
                let codes = duality::enumerate_self_dual(&amb)?;
                if json {
                    let list: Vec<serde_json::Value> =
                        codes.iter().map(textio::code_json).collect();
                    println!("{}", serde_json::json!({"count": codes.len(), "codes": list}));
                } else {
                    println!("{} self-dual code(s)", codes.len());
                    for c in &codes {
                        let gens: Vec<String> =
                            c.gens().iter().map(textio::tower_poly_string).collect();
                        println!("g = [{}]", gens.join(", "));
                    }
                }
                return Ok(());
            }
            let c = parse_code(&code)?;
            let (sd, cert) = c.is_self_dual();
            if json {
                println!(
                    "{}",
                    serde_json::json!({"self_dual": sd, "certificate": format!("{cert:?}")})
                );
            } else {
                println!("self-dual: {sd} ({cert:?})");
            }
            Ok(())
        }
        Command::Reduce { code, budget, json } => {
            let c = parse_code(&code)?;
            let profile = ReductionProfile::build(&c);
            let budget = budget_from(budget);
            let mut rows = Vec::new();
            for t in 0..profile.factor_count() {
                let cbar = profile.reduced_code(t);
                let dist = if cbar.is_zero_code() {
                    None
                } else {
                    wmin::min_distance(&cbar.generator_matrix(), &budget).ok()
                };
                rows.push((t, cbar.clone(), profile.weight_factor(t), dist));
            }
            if json {
                let list: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(t, cbar, w, dist)| {
                        serde_json::json!({
                            "t": t,
                            "gbar": cbar.gens().iter().map(textio::tower_poly_string).collect::<Vec<_>>(),
                            "P": w,
                            "in_T": profile.tee().contains(t),
                            "d_min": dist,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({"delta0": format!("{}", profile.delta0()), "rows": list})
                );
            } else {
                println!("delta0 = {}", profile.delta0());
                for (t, cbar, w, dist) in rows {
                    let gens: Vec<String> =
                        cbar.gens().iter().map(textio::tower_poly_string).collect();
                    let dist = dist.map_or("-".to_string(), |d| d.to_string());
                    let in_t = if profile.tee().contains(&t) { "yes" } else { "no" };
                    println!(
                        "t={t}: P_t={w} in_T={in_t} d_min={dist} gbar=[{}]",
                        gens.join(", ")
                    );
                }
            }
            Ok(())
        }
        Command::CheckPrior {
            q,
            s,
            k,
            counterexample,
            budget,
        } => {
            let budget = budget.unwrap_or(priorcheck::DEFAULT_TUPLE_BUDGET);
            if counterexample {
                let ok = priorcheck::verify_counterexample(s, budget)?;
                println!("{}", serde_json::json!({"counterexample_verified": ok}));
                return Ok(());
            }
            let q = q.ok_or_else(|| Error::Parse("--q is required".into()))?;
            let k = k.ok_or_else(|| Error::Parse("--k is required".into()))?;
            let field = constacyclic2d::gf::Field::prime(q)?;
            let report = priorcheck::check_equivalence(&field, s, k, budget)?;
            println!(
                "{}",
                serde_json::json!({
                    "covered": report.covered,
                    "conditions": report.conditions,
                    "agree": report.agree,
                    "total_ideals": report.total_ideals.to_string(),
                    "eq1_distinct": report.eq1_distinct.to_string(),
                    "by_enumeration": report.eq1_by_enumeration,
                })
            );
            Ok(())
        }
    }
}
