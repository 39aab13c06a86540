//! Command-line front end: identity-suite runner, expression calculator,
//! torsion bounds, and the vanishing-implication engine.

use clap::{Parser, Subcommand};
use cyc::cycle::push_proj;
use cyc::dsl::{self, Value};
use cyc::inference::{self, Fact};
use cyc::numtheory::{torsion_bound, BoundDirection, BoundReport};
use cyc::suites::{run_suite, SuiteConfig, SUITE_NAMES};
use cyc::{CycError, Result};
use num::bigint::BigUint;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cyc")]
#[command(about = "Exact calculator for tautological cycles on curve powers and Jacobians")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run identity suites and report one pass/fail line per check
    Verify {
        /// Suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,

        /// Largest arity for the arity-indexed families (overrides CYC_MAX_N)
        #[arg(long)]
        max_n: Option<u32>,

        /// generic keeps e and K independent; xi substitutes K = (2g-2)e
        #[arg(long, default_value = "generic")]
        mode: String,

        /// Genus for the Jacobian-side suites
        #[arg(long, default_value_t = 5)]
        genus: i64,
    },
    /// Evaluate an expression and print its canonical form
    Eval {
        /// Expression, e.g. "Gamma(3)" or "gamma(2,e) - B(2) @@2"
        expr: String,

        /// Genus to substitute (required for Jacobian expressions)
        #[arg(long)]
        genus: Option<i64>,

        /// text or json
        #[arg(long, default_value = "text")]
        format: String,

        /// Reduce tautological output modulo the defining relations
        #[arg(long)]
        reduce: bool,

        /// generic, or xi to substitute K = (2g-2)e in the result
        #[arg(long, default_value = "generic")]
        mode: String,
    },
    /// Project a cycle to a subset of coordinates
    Push {
        /// Expression for the source cycle
        expr: String,

        /// Coordinates kept by the projection, comma separated, e.g. 1,3
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<u32>,

        /// Genus to substitute in coefficients
        #[arg(long)]
        genus: Option<i64>,

        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Integral torsion bounds between the ceresa class and the 3-fold
    /// modified diagonal
    Bounds {
        #[arg(long)]
        genus: i64,

        /// Automorphism criterion input as N=<multiple>,G=<group order>
        #[arg(long)]
        qz: Option<String>,

        /// Known torsion order of the ceresa class
        #[arg(long)]
        ceresa_d: Option<String>,

        /// Known torsion order of the 3-fold modified diagonal
        #[arg(long)]
        gamma3_d: Option<String>,

        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Close vanishing assumptions under the implication rules
    Propagate {
        #[arg(long)]
        genus: i64,

        /// Assumption in fact notation, repeatable, e.g. "Gamma(3)=0"
        #[arg(long = "assume")]
        assume: Vec<String>,

        /// text or json
        #[arg(long, default_value = "text")]
        format: String,

        /// Print the derivation chain for this fact instead of the closure
        #[arg(long)]
        explain: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Cmd::Verify {
            suite,
            max_n,
            mode,
            genus,
        } => cmd_verify(&suite, max_n, &mode, genus),
        Cmd::Eval {
            expr,
            genus,
            format,
            reduce,
            mode,
        } => cmd_eval(&expr, genus, &format, reduce, &mode),
        Cmd::Push {
            expr,
            keep,
            genus,
            format,
        } => cmd_push(&expr, &keep, genus, &format),
        Cmd::Bounds {
            genus,
            qz,
            ceresa_d,
            gamma3_d,
            format,
        } => cmd_bounds(genus, qz.as_deref(), ceresa_d.as_deref(), gamma3_d.as_deref(), &format),
        Cmd::Propagate {
            genus,
            assume,
            format,
            explain,
        } => cmd_propagate(genus, &assume, &format, explain.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_mode(mode: &str) -> Result<bool> {
    match mode {
        "generic" => Ok(false),
        "xi" => Ok(true),
        other => Err(CycError::Syntax {
            pos: 0,
            msg: format!("unknown mode {other:?}; expected generic or xi"),
        }),
    }
}

fn cmd_verify(suite: &str, max_n: Option<u32>, mode: &str, genus: i64) -> Result<ExitCode> {
    let mut cfg = SuiteConfig::default();
    if let Some(n) = max_n {
        cfg.max_n = n;
    }
    cfg.xi_mode = parse_mode(mode)?;
    cfg.genus = genus;
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![suite]
    };
    let mut failures = 0usize;
    let mut total = 0usize;
    for name in names {
        for r in run_suite(name, &cfg)? {
            total += 1;
            if r.pass {
                println!("[PASS] {name}/{}", r.name);
            } else {
                failures += 1;
                println!("[FAIL] {name}/{}: {}", r.name, r.detail);
            }
        }
    }
    println!("{} checks, {} failed", total, failures);
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Scalar(p) => p.to_string(),
        Value::Cycle(w) => w.to_string(),
        Value::Jac(x) => x.to_string(),
        Value::Taut(t) => t.to_string(),
    }
}

fn apply_xi(v: Value) -> Value {
    match v {
        Value::Cycle(w) => Value::Cycle(w.xi_normalize()),
        Value::Jac(x) => Value::Jac(x.xi_map()),
        other => other,
    }
}

fn cmd_eval(
    expr: &str,
    genus: Option<i64>,
    format: &str,
    reduce: bool,
    mode: &str,
) -> Result<ExitCode> {
    let mut v = dsl::eval_str(expr, genus)?;
    if parse_mode(mode)? {
        v = apply_xi(v);
    }
    if reduce {
        if let Value::Taut(t) = v {
            v = Value::Taut(t.reduce());
        }
    }
    emit_value(&v, format)
}

fn cmd_push(expr: &str, keep: &[u32], genus: Option<i64>, format: &str) -> Result<ExitCode> {
    let v = dsl::eval_str(expr, genus)?;
    let w = dsl::as_cycle(&v)?;
    let pushed = push_proj(&w, keep)?;
    emit_value(&Value::Cycle(pushed), format)
}

fn emit_value(v: &Value, format: &str) -> Result<ExitCode> {
    match format {
        "text" => println!("{}", value_text(v)),
        "json" => println!("{}", serde_json::to_string_pretty(&dsl::value_to_json(v)).unwrap()),
        other => {
            return Err(CycError::Syntax {
                pos: 0,
                msg: format!("unknown format {other:?}; expected text or json"),
            })
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_biguint(label: &str, s: &str) -> Result<BigUint> {
    s.trim().parse::<BigUint>().map_err(|_| CycError::Syntax {
        pos: 0,
        msg: format!("{label} expects a nonnegative integer, got {s:?}"),
    })
}

fn parse_qz(s: &str) -> Result<(BigUint, BigUint)> {
    let mut n = None;
    let mut order = None;
    for part in s.split(',') {
        let (key, val) = part.split_once('=').ok_or_else(|| CycError::Syntax {
            pos: 0,
            msg: format!("--qz expects N=<multiple>,G=<group order>, got {s:?}"),
        })?;
        match key.trim() {
            "N" => n = Some(parse_biguint("N", val)?),
            "G" => order = Some(parse_biguint("G", val)?),
            other => {
                return Err(CycError::Syntax {
                    pos: 0,
                    msg: format!("unknown --qz key {other:?}; expected N or G"),
                })
            }
        }
    }
    match (n, order) {
        (Some(n), Some(g)) => Ok((n, g)),
        _ => Err(CycError::Syntax {
            pos: 0,
            msg: format!("--qz expects both N and G, got {s:?}"),
        }),
    }
}

fn cmd_bounds(
    genus: i64,
    qz: Option<&str>,
    ceresa_d: Option<&str>,
    gamma3_d: Option<&str>,
    format: &str,
) -> Result<ExitCode> {
    let chosen = [qz.is_some(), ceresa_d.is_some(), gamma3_d.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if chosen != 1 {
        return Err(CycError::Syntax {
            pos: 0,
            msg: "exactly one of --qz, --ceresa-d, --gamma3-d is required".into(),
        });
    }
    let direction = if let Some(s) = qz {
        let (n, group_order) = parse_qz(s)?;
        BoundDirection::QzCriterion { n, group_order }
    } else if let Some(s) = ceresa_d {
        BoundDirection::CerToGamma {
            d: parse_biguint("--ceresa-d", s)?,
        }
    } else {
        BoundDirection::GammaToCer {
            d: parse_biguint("--gamma3-d", gamma3_d.unwrap())?,
        }
    };
    let report = torsion_bound(direction, genus)?;
    match format {
        "text" => print_bounds_text(&report),
        "json" => println!("{}", serde_json::to_string_pretty(&bounds_json(&report)).unwrap()),
        other => {
            return Err(CycError::Syntax {
                pos: 0,
                msg: format!("unknown format {other:?}; expected text or json"),
            })
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_bounds_text(r: &BoundReport) {
    println!("genus {} with M_{} = {}", r.genus, r.genus + 1, r.m_constant);
    for s in &r.steps {
        println!("  {s}");
    }
    println!("{} / {}", r.gamma3_bound, r.ceresa_bound);
}

fn bounds_json(r: &BoundReport) -> serde_json::Value {
    let direction = match &r.direction {
        BoundDirection::CerToGamma { d } => json!({"from": "ceresa", "d": d.to_string()}),
        BoundDirection::GammaToCer { d } => json!({"from": "gamma3", "d": d.to_string()}),
        BoundDirection::QzCriterion { n, group_order } => json!({
            "from": "automorphisms",
            "n": n.to_string(),
            "group_order": group_order.to_string(),
        }),
    };
    json!({
        "genus": r.genus,
        "m_constant": r.m_constant.to_string(),
        "gamma3_bound": r.gamma3_bound.to_string(),
        "ceresa_bound": r.ceresa_bound.to_string(),
        "direction": direction,
        "steps": r.steps,
    })
}

fn cmd_propagate(
    genus: i64,
    assume: &[String],
    format: &str,
    explain: Option<&str>,
) -> Result<ExitCode> {
    let assumptions: Vec<Fact> = assume
        .iter()
        .map(|s| inference::parse_fact(s))
        .collect::<Result<_>>()?;
    let state = inference::propagate(genus, &assumptions)?;
    if let Some(target) = explain {
        let fact = inference::parse_fact(target)?;
        let chain = state.explain(&fact)?;
        match format {
            "text" => {
                for line in &chain {
                    println!("{line}");
                }
            }
            "json" => println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "fact": fact.to_string(),
                    "chain": chain,
                }))
                .unwrap()
            ),
            other => {
                return Err(CycError::Syntax {
                    pos: 0,
                    msg: format!("unknown format {other:?}; expected text or json"),
                })
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let closure = state.canonical_view();
    match format {
        "text" => {
            println!(
                "closure at genus {} from {} assumption(s):",
                genus,
                assumptions.len()
            );
            for fact in closure.facts() {
                match state.trace(&fact) {
                    Some(t) => {
                        let mut line = format!("  {fact}  [{}]", t.rule);
                        if !t.premises.is_empty() {
                            let ps: Vec<String> =
                                t.premises.iter().map(|p| p.to_string()).collect();
                            line.push_str(&format!(" from: {}", ps.join(", ")));
                        }
                        println!("{line}");
                    }
                    None => println!("  {fact}"),
                }
            }
        }
        "json" => {
            let facts: Vec<String> = closure.fact_lines();
            let traces: Vec<serde_json::Value> = closure
                .facts()
                .iter()
                .filter_map(|fact| {
                    state.trace(fact).map(|t| {
                        json!({
                            "fact": fact.to_string(),
                            "rule": t.rule,
                            "premises": t.premises.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                            "statement": t.statement,
                        })
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "genus": genus,
                    "assumptions": assume,
                    "facts": facts,
                    "traces": traces,
                }))
                .unwrap()
            );
        }
        other => {
            return Err(CycError::Syntax {
                pos: 0,
                msg: format!("unknown format {other:?}; expected text or json"),
            })
        }
    }
    Ok(ExitCode::SUCCESS)
}
