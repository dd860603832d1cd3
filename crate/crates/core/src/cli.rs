//! Command-line front end. Reports are deterministic JSON behind `--json`; the human summary
//! on stdout carries the timings.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{composition_series_regular, radical_filtration};
use crate::defth::{compute_hull, default_degree, stabilization_check};
use crate::doc::{fixture_document, fixture_names, problem_from_str, problem_from_value, Problem};
use crate::error::Error;
use crate::exactla::Field;
use crate::homolog::ext_dims;
use crate::observ::{build_observables, closure_check, pi_check, verify_burnside, verify_gbt, Verdict};
use crate::posetalg::ext_oracle;

#[derive(Parser, Debug)]
#[command(name = "burnside-kit", version, about = "Ext groups, formal moduli and algebras of observables, exactly")]
pub struct Cli {
    /// Print the machine-readable JSON report instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Base field: `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ext^1 and Ext^2 tables of the family.
    Ext {
        input: String,
        /// Compare with the combinatorial rules for incidence algebras.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_delimiter = ',')]
        members: Vec<usize>,
    },
    /// Jacobson radical, its filtration and a composition series of the regular module.
    Radical { input: String },
    /// The truncated formal moduli of the family.
    Hull {
        input: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        members: Vec<usize>,
    },
    /// The algebra of observables and the map from the algebra into it.
    Observables {
        input: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        members: Vec<usize>,
    },
    /// Check a theorem on the instance.
    Verify {
        theorem: Theorem,
        input: String,
        /// 1-based indices of the family members to keep.
        #[arg(long, value_delimiter = ',')]
        members: Vec<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// List the built-in fixtures, or print one as a document.
    Fixtures { name: Option<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Burnside,
    Gbt,
    Closure,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub field: String,
    pub verdict: Verdict,
    pub result: Value,
}

/// Exit codes: 0 verified, 1 failed or refused, 2 invalid input.
pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass => 0,
        Verdict::Fail | Verdict::Refused => 1,
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_)
            | Error::DimensionMismatch(_)
            | Error::AssociativityViolation(..)
            | Error::UnitViolation(_)
            | Error::CharPUnsupported
            | Error::NotSplit(_)
            | Error::InvalidModule(_)
            | Error::Json(_)
            | Error::Io(_)
    )
}

fn load(input: &str, field: Option<Field>) -> crate::Result<Problem> {
    if input.starts_with("fixture:") {
        return problem_from_value(&Value::String(input.into()), field);
    }
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(input)?
    };
    problem_from_str(&text, field)
}

struct Outcome {
    verdict: Verdict,
    result: Value,
    summary: Vec<String>,
}

fn table_lines(name: &str, t: &[Vec<usize>]) -> Vec<String> {
    let mut out = vec![format!("{name}:")];
    out.extend(t.iter().map(|row| format!("  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))));
    out
}

fn cmd_ext(p: &Problem, oracle: bool) -> crate::Result<Outcome> {
    let (e1, e2) = ext_dims(&p.algebra, &p.family);
    let mut result = json!({ "ext1": e1, "ext2": e2 });
    let mut summary = table_lines("Ext^1", &e1);
    summary.extend(table_lines("Ext^2", &e2));
    let mut verdict = Verdict::Pass;
    if oracle {
        let poset = p.poset.as_ref().ok_or_else(|| Error::InvalidInput("--oracle needs a poset document".into()))?;
        if p.family.len() != poset.len() {
            return Err(Error::InvalidInput("--oracle needs the full family of simples".into()));
        }
        let o = ext_oracle(poset);
        let agree = o.ext1 == e1 && o.ext2 == e2;
        result["oracle"] = json!(o);
        result["agree"] = json!(agree);
        summary.push(format!("oracle agrees: {agree}"));
        if !agree {
            verdict = Verdict::Fail;
        }
    }
    Ok(Outcome { verdict, result, summary })
}

fn cmd_radical(p: &Problem) -> crate::Result<Outcome> {
    let filt = radical_filtration(&p.algebra)?;
    let series = composition_series_regular(&p.algebra)?;
    let dims = filt.dims();
    let rad_basis: Vec<Vec<String>> =
        filt.power(1).vectors().iter().map(|v| v.iter().map(|x| x.to_text()).collect()).collect();
    let result = json!({
        "dim": p.algebra.dim(),
        "radical_dim": dims.get(1).copied().unwrap_or(0),
        "radical_basis": rad_basis,
        "filtration_dims": dims,
        "nilpotency_index": filt.nilpotency_index,
        "composition_factors": series.factors.iter().map(|f| f + 1).collect::<Vec<_>>(),
    });
    let summary = vec![
        format!("dim A = {}, dim rad A = {}", p.algebra.dim(), dims.get(1).copied().unwrap_or(0)),
        format!("radical filtration dims: {dims:?}"),
        format!("composition length: {}", series.factors.len()),
    ];
    Ok(Outcome { verdict: Verdict::Pass, result, summary })
}

fn cmd_hull(p: &Problem, max_degree: Option<usize>) -> crate::Result<Outcome> {
    let n = match max_degree {
        Some(n) => n,
        None => default_degree(&p.algebra)?,
    };
    let h = compute_hull(&p.algebra, &p.family, n)?;
    let stable = stabilization_check(&h)?;
    let relations: Vec<Value> = h
        .relations()
        .iter()
        .map(|g| {
            json!({
                "position": [g.position.0 + 1, g.position.1 + 1],
                "degree": g.degree,
                "monomial_support": h.relation_support(g),
            })
        })
        .collect();
    let generators: Vec<&str> = h.generators().iter().map(|g| g.label.as_str()).collect();
    let result = json!({
        "max_degree": n,
        "tangent": h.tangent(),
        "obstructions": h.obstruction_dims(),
        "generators": generators,
        "relations": relations,
        "h_dims": h.h_dims(),
        "total_dim": h.total_dim(),
        "stable": stable,
    });
    let mut summary = vec![format!("generators: {}", generators.join(" "))];
    for g in h.relations() {
        summary.push(format!(
            "relation at ({}, {}), degree {}: {}",
            g.position.0 + 1,
            g.position.1 + 1,
            g.degree,
            h.relation_support(g).join(" + ")
        ));
    }
    summary.extend(table_lines("dim H_ij", &h.h_dims()));
    summary.push(format!("total dim {} at N = {n}, stable: {stable}", h.total_dim()));
    Ok(Outcome { verdict: Verdict::Pass, result, summary })
}

fn cmd_observables(p: &Problem, max_degree: Option<usize>) -> crate::Result<Outcome> {
    let n = match max_degree {
        Some(n) => n,
        None => default_degree(&p.algebra)?,
    };
    let h = compute_hull(&p.algebra, &p.family, n)?;
    let obs = build_observables(&h)?;
    let labels: Vec<&str> = obs.basis.iter().map(|b| b.label.as_str()).collect();
    let rank = obs.eta_rank();
    let pi_ok = pi_check(&obs);
    let result = json!({
        "max_degree": n,
        "dim_algebra": p.algebra.dim(),
        "dim": obs.dim(),
        "basis": labels,
        "block_dims": obs.block_dims(),
        "j_dim": obs.j.dim(),
        "eta_rank": rank,
        "pi_check": pi_ok,
    });
    let summary = vec![
        format!("dim O = {}, dim A = {}, rank eta = {rank}", obs.dim(), p.algebra.dim()),
        format!("dim J = {}, pi check: {pi_ok}", obs.j.dim()),
    ];
    Ok(Outcome { verdict: Verdict::from_bool(pi_ok), result, summary })
}

fn cmd_verify(p: &Problem, theorem: Theorem, max_degree: Option<usize>) -> crate::Result<Outcome> {
    match theorem {
        Theorem::Burnside => {
            let r = verify_burnside(&p.algebra, &p.family)?;
            let summary = vec![
                format!("End_A(M_i) = k: {:?}", r.end_scalar),
                format!("simple: {:?}, pairwise distinct: {}", r.simple, r.distinct),
                format!("rank rho = {} of {}", r.rho.image_dim, r.rho.target_dim),
                format!("verdict: {:?}", r.verdict),
            ];
            Ok(Outcome { verdict: r.verdict, result: serde_json::to_value(&r)?, summary })
        }
        Theorem::Gbt => {
            let r = verify_gbt(&p.algebra, &p.family)?;
            let summary = vec![
                format!("dim A = {}, dim O = {}, rank eta = {}", r.dim_algebra, r.dim_observables, r.eta_rank),
                format!("gr(eta)_q iso: {:?}", r.gr.iter().map(|g| g.iso).collect::<Vec<_>>()),
                format!("verdict: {:?}", r.verdict),
            ];
            Ok(Outcome { verdict: r.verdict, result: serde_json::to_value(&r)?, summary })
        }
        Theorem::Closure => {
            let n = match max_degree {
                Some(n) => n,
                None => default_degree(&p.algebra)? + 1,
            };
            let r = closure_check(&p.algebra, &p.family, n)?;
            let summary = vec![
                format!("dim B = {}, dim C = {}", r.first.dim_observables, r.second.dim_observables),
                format!(
                    "simples of B: {}, B/rad B split: {}, eta_B bijective: {}, idempotent: {}",
                    r.family_is_simples_of_b, r.semisimple_quotient, r.eta_b_bijective, r.idempotent
                ),
                format!("verdict: {:?}", r.verdict),
            ];
            Ok(Outcome { verdict: r.verdict, result: serde_json::to_value(&r)?, summary })
        }
    }
}

fn cmd_fixtures(name: Option<&str>, field: Field) -> crate::Result<Outcome> {
    match name {
        None => {
            let names = fixture_names();
            let summary = names.clone();
            Ok(Outcome { verdict: Verdict::Pass, result: json!({ "fixtures": names }), summary })
        }
        Some(n) => {
            let doc = fixture_document(n, field)?;
            let summary = vec![serde_json::to_string_pretty(&doc)?];
            Ok(Outcome { verdict: Verdict::Pass, result: doc, summary })
        }
    }
}

/// The verdict and `result` object of `hull` on a parsed problem.
pub fn hull_result(p: &Problem, max_degree: Option<usize>) -> crate::Result<(Verdict, Value)> {
    cmd_hull(p, max_degree).map(|o| (o.verdict, o.result))
}

/// The verdict and `result` object of `verify <theorem>` on a parsed problem.
pub fn verify_result(p: &Problem, theorem: Theorem, max_degree: Option<usize>) -> crate::Result<(Verdict, Value)> {
    cmd_verify(p, theorem, max_degree).map(|o| (o.verdict, o.result))
}

/// Runs a parsed command, writing to the given sinks; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let start = Instant::now();
    let field = match cli.field.as_deref().map(Field::parse).transpose() {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let (name, input) = match &cli.command {
        Command::Ext { input, .. } => ("ext", Some(input)),
        Command::Radical { input } => ("radical", Some(input)),
        Command::Hull { input, .. } => ("hull", Some(input)),
        Command::Observables { input, .. } => ("observables", Some(input)),
        Command::Verify { theorem, input, .. } => (
            match theorem {
                Theorem::Burnside => "verify burnside",
                Theorem::Gbt => "verify gbt",
                Theorem::Closure => "verify closure",
            },
            Some(input),
        ),
        Command::Fixtures { .. } => ("fixtures", None),
    };
    let run = || -> crate::Result<(Field, Outcome)> {
        if let Command::Fixtures { name } = &cli.command {
            let f = field.unwrap_or(Field::Rational);
            return Ok((f, cmd_fixtures(name.as_deref(), f)?));
        }
        let input = input.expect("every other command has an input");
        let members: &[usize] = match &cli.command {
            Command::Ext { members, .. }
            | Command::Hull { members, .. }
            | Command::Observables { members, .. }
            | Command::Verify { members, .. } => members,
            _ => &[],
        };
        let p = load(input, field)?.select(members)?;
        let f = p.algebra.field();
        let outcome = match &cli.command {
            Command::Ext { oracle, .. } => cmd_ext(&p, *oracle)?,
            Command::Radical { .. } => cmd_radical(&p)?,
            Command::Hull { max_degree, .. } => cmd_hull(&p, *max_degree)?,
            Command::Observables { max_degree, .. } => cmd_observables(&p, *max_degree)?,
            Command::Verify { theorem, max_degree, .. } => cmd_verify(&p, *theorem, *max_degree)?,
            Command::Fixtures { .. } => unreachable!(),
        };
        Ok((f, outcome))
    };
    let (f, outcome) = match run() {
        Ok(x) => x,
        Err(e) if is_input_error(&e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
        Err(e @ (Error::HypothesisViolated(_) | Error::HullNotStable(_))) => {
            let f = field.unwrap_or(Field::Rational);
            let outcome = Outcome {
                verdict: Verdict::Refused,
                result: json!({ "reason": e.to_string() }),
                summary: vec![format!("refused: {e}")],
            };
            (f, outcome)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let report = Report {
        command: name.to_string(),
        input: input.cloned(),
        field: f.descriptor(),
        verdict: outcome.verdict,
        result: outcome.result,
    };
    if cli.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => {
                let _ = writeln!(out, "{s}");
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
        }
    } else {
        let _ = writeln!(out, "{name} ({})", report.field);
        for line in &outcome.summary {
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    exit_code(report.verdict)
}

/// Configures the thread pool from `BURNSIDE_KIT_THREADS`, parses arguments and runs.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    if let Some(n) = std::env::var("BURNSIDE_KIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    execute(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("burnside-kit").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(&cli, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn report(args: &[&str]) -> (i32, Value) {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let (code, out, _) = run(&full);
        (code, serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn ext_command_examples() {
        let (code, r) = report(&["ext", "fixture:diamond"]);
        assert_eq!(code, 0);
        assert_eq!(r["result"]["ext2"][0][3], 1);
        let (_, r) = report(&["ext", "fixture:antichain3"]);
        assert!(r["result"]["ext1"].as_array().unwrap().iter().flat_map(|x| x.as_array().unwrap()).all(|x| x == 0));
        let (_, r) = report(&["ext", "fixture:chain3", "--oracle"]);
        let ones: u64 = r["result"]["ext1"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|x| x.as_array().unwrap())
            .map(|x| x.as_u64().unwrap())
            .sum();
        assert_eq!(ones, 2);
        assert_eq!(r["result"]["agree"], true);
    }

    #[test]
    fn hull_command_examples() {
        let (_, r) = report(&["hull", "fixture:hereditary"]);
        let sums: Vec<u64> = r["result"]["h_dims"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| row.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum())
            .collect();
        assert_eq!(sums, [2, 2, 2, 1]);
        assert_eq!(r["result"]["stable"], true);
        let (_, r) = report(&["hull", "fixture:diamond"]);
        assert_eq!(r["result"]["relations"][0]["position"], json!([1, 4]));
        let (_, r) = report(&["hull", "fixture:k"]);
        assert_eq!(r["result"]["h_dims"], json!([[1]]));
    }

    #[test]
    fn verify_command_examples() {
        assert_eq!(report(&["verify", "gbt", "fixture:diamond"]).0, 0);
        let (code, r) = report(&["verify", "gbt", "fixture:diamond", "--members", "1"]);
        assert_eq!(code, 1);
        assert_eq!(r["verdict"], "refused");
        assert_eq!(report(&["verify", "closure", "fixture:diamond", "--members", "1,4"]).0, 0);
        assert_eq!(report(&["verify", "burnside", "fixture:m2"]).0, 0);
    }

    #[test]
    fn fixtures_command_examples() {
        let (_, r) = report(&["fixtures"]);
        assert!(r["result"]["fixtures"].as_array().unwrap().len() >= 6);
        let (_, r) = report(&["fixtures", "diamond"]);
        assert_eq!(r["result"]["elements"].as_array().unwrap().len(), 4);
        let (_, r) = report(&["fixtures", "hereditary"]);
        let pairs = r["result"]["greater_than"].as_array().unwrap();
        let bottoms: std::collections::BTreeSet<_> = pairs.iter().map(|p| p[1].as_str().unwrap()).collect();
        let tops: std::collections::BTreeSet<_> = pairs.iter().map(|p| p[0].as_str().unwrap()).collect();
        assert_eq!((tops.len(), bottoms.len()), (3, 1));
        assert_eq!(run(&["fixtures", "nope"]).0, 2);
    }

    #[test]
    fn input_errors_exit_with_two() {
        assert_eq!(run(&["hull", "/definitely/missing.json"]).0, 2);
        assert_eq!(run(&["--field", "Fp:4", "ext", "fixture:diamond"]).0, 2);
        assert_eq!(run(&["ext", "fixture:diamond", "--members", "9"]).0, 2);
    }

    #[test]
    fn human_summary_has_timing_and_json_does_not() {
        let (_, out, _) = run(&["ext", "fixture:chain2"]);
        assert!(out.contains("elapsed"));
        let (_, out, _) = run(&["--json", "ext", "fixture:chain2"]);
        assert!(!out.contains("elapsed"));
    }
}
