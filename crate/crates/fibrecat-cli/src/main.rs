//! Command-line front end: invariant reports and named verification
//! suites over the built-in fixture catalog or external complex files.
//!
//! JSON goes to stdout (identical bytes for identical flags and seed); a
//! short human summary goes to stderr. Exit codes: 0 all checks pass,
//! 1 some check failed, 2 usage or input error.

mod registry;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use fibrecat::complex::{build_complex, SimplicialComplex};
use fibrecat::fixtures;
use fibrecat::linalg::Field;
use fibrecat::ring::tc_lower_bound_report;
use registry::{SuiteRegistry, VerifyContext};
use serde::Deserialize;
use serde_json::json;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "fibrecat")]
#[command(about = "exact topological-complexity bounds and fibrewise verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers, cup length, zero-divisor cup length (two routes)
    /// and the resulting TC/TCM lower bounds
    Invariants(InvariantsArgs),
    /// Run a named verification suite (see `verify --help` for the list)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InvariantsArgs {
    /// Fixture name (point, s1, s1-<n>, s2, t2, rp2, wedge, bddelta-<m>)
    /// or a path to a complex JSON file
    #[arg(long, default_value = "s1")]
    complex: String,

    /// Coefficient field: q, f2, f3 or fp:<p>; repeatable
    #[arg(long = "field")]
    fields: Vec<String>,

    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run: strom, planner, lift, extend or kunneth
    target: String,

    /// Fixture name or path to a complex JSON file
    #[arg(long, default_value = "s1")]
    complex: String,

    /// Coefficient field; repeatable (kunneth only)
    #[arg(long = "field")]
    fields: Vec<String>,

    /// Number of seeded samples
    #[arg(long, default_value_t = 10_000)]
    samples: usize,

    /// Sample seed; identical invocations produce identical reports
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Planner fixture: circle<n> or a path to a planner JSON file
    #[arg(long)]
    fixture: Option<String>,

    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<String>,
}

/// On-disk complex description.
#[derive(Deserialize)]
struct ComplexFile {
    name: String,
    facets: Vec<Vec<i64>>,
}

fn load_complex(spec: &str) -> Result<(String, SimplicialComplex)> {
    let looks_like_path = spec.contains('/') || spec.ends_with(".json") || Path::new(spec).exists();
    if looks_like_path {
        let text = std::fs::read_to_string(spec)
            .with_context(|| format!("cannot read complex file `{spec}`"))?;
        let file: ComplexFile =
            serde_json::from_str(&text).with_context(|| format!("bad complex file `{spec}`"))?;
        let complex = build_complex(&file.facets)
            .with_context(|| format!("complex file `{spec}` is not a valid facet family"))?;
        Ok((file.name, complex))
    } else {
        Ok((spec.to_string(), fixtures::by_name(spec)?))
    }
}

fn parse_fields(specs: &[String]) -> Result<Vec<Field>> {
    if specs.is_empty() {
        return Ok(vec![Field::Rational, Field::Prime(2), Field::Prime(3)]);
    }
    specs
        .iter()
        .map(|s| Field::parse(s).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn emit(report: &serde_json::Value, out: &Option<String>) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(report)?);
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text).with_context(|| format!("cannot write `{path}`"))?;
    }
    Ok(())
}

fn run_invariants(args: &InvariantsArgs) -> Result<bool> {
    let (name, complex) = load_complex(&args.complex)?;
    let fields = parse_fields(&args.fields)?;
    let report = tc_lower_bound_report(&name, &complex, &fields);
    let consistent = report.fields.iter().all(|f| f.zcl_tensor == f.zcl_product);
    let top = json!({
        "schema": "fibrecat-report/1",
        "command": "invariants",
        "complex": name,
        "report": report,
        "pass": consistent,
    });
    emit(&top, &args.out)?;
    for f in &report.fields {
        eprintln!(
            "{name} over {}: betti {:?}, cup length {}, zcl {} (product route {}), TCM >= {}",
            f.field, f.betti, f.cup_length, f.zcl_tensor, f.zcl_product, f.tcm_lower_bound
        );
    }
    eprintln!(
        "{name}: max zcl {} -> TC >= {}, TCM >= {}, and {}",
        report.max_zcl, report.tc_lower_bound, report.tcm_lower_bound, report.bracket
    );
    Ok(consistent)
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let registry = SuiteRegistry::builtin();
    let Some(suite) = registry.get(&args.target) else {
        return Err(anyhow!(
            "unknown verify target `{}`; available: {}",
            args.target,
            registry.names().join(", ")
        ));
    };
    let (name, complex) = load_complex(&args.complex)?;
    let ctx = VerifyContext {
        complex_name: name.clone(),
        complex: Arc::new(complex),
        fields: parse_fields(&args.fields)?,
        samples: args.samples,
        seed: args.seed,
        planner_fixture: args.fixture.clone(),
    };
    let outcome = suite.run(&ctx)?;
    let top = json!({
        "schema": "fibrecat-report/1",
        "command": "verify",
        "target": args.target,
        "complex": name,
        "samples": args.samples,
        "seed": args.seed,
        "report": outcome.payload,
        "pass": outcome.pass,
    });
    emit(&top, &args.out)?;
    eprintln!(
        "{} ({}): {}",
        outcome.summary,
        suite.about(),
        if outcome.pass { "pass" } else { "FAIL" }
    );
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants(args) => run_invariants(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
