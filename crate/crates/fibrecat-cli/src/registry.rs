//! Named verification suites behind a common trait, selected at runtime
//! by the `verify` subcommand. Adding a suite means adding one impl and
//! one `register` line.

use anyhow::{anyhow, Result};
use fibrecat::complex::SimplicialComplex;
use fibrecat::fibrewise::{verify_extend_on_strom, verify_lift_on_strom};
use fibrecat::linalg::Field;
use fibrecat::planner::{
    build_planner, circle_planner, validate_planner, verify_roundtrip, MotionPlanner, PlannerSpec,
};
use fibrecat::report::VerificationReport;
use fibrecat::ring::{zcl_in_product, zero_divisor_cup_length};
use fibrecat::strom::verify_strom;
use fibrecat::{complex::product_complex, fixtures};
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Everything a suite may need; built once by the front end.
pub struct VerifyContext {
    pub complex_name: String,
    pub complex: Arc<SimplicialComplex>,
    pub fields: Vec<Field>,
    pub samples: usize,
    pub seed: u64,
    pub planner_fixture: Option<String>,
}

/// Result of one suite run: machine payload plus the aggregate verdict.
pub struct VerifyOutcome {
    pub pass: bool,
    pub payload: serde_json::Value,
    pub summary: String,
}

/// A named verification strategy.
pub trait VerifySuite: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, ctx: &VerifyContext) -> Result<VerifyOutcome>;
}

/// Name-indexed suite collection.
pub struct SuiteRegistry {
    suites: BTreeMap<&'static str, Box<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn builtin() -> Self {
        let mut r = SuiteRegistry {
            suites: BTreeMap::new(),
        };
        r.register(Box::new(StromSuite));
        r.register(Box::new(PlannerSuite));
        r.register(Box::new(KunnethSuite));
        r.register(Box::new(LiftSuite));
        r.register(Box::new(ExtendSuite));
        r
    }

    pub fn register(&mut self, suite: Box<dyn VerifySuite>) {
        self.suites.insert(suite.name(), suite);
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerifySuite> {
        self.suites.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }
}

fn report_outcome(report: VerificationReport, summary: String) -> VerifyOutcome {
    VerifyOutcome {
        pass: report.all_pass(),
        payload: serde_json::to_value(&report).expect("serializable report"),
        summary,
    }
}

struct StromSuite;

impl VerifySuite for StromSuite {
    fn name(&self) -> &'static str {
        "strom"
    }

    fn about(&self) -> &'static str {
        "diagonal gauge and compression homotopy identities at exact samples"
    }

    fn run(&self, ctx: &VerifyContext) -> Result<VerifyOutcome> {
        let report = verify_strom(&ctx.complex_name, &ctx.complex, ctx.samples, ctx.seed);
        let summary = format!(
            "strom on {}: {} checks over {} samples",
            ctx.complex_name,
            report.checks.len(),
            ctx.samples
        );
        Ok(report_outcome(report, summary))
    }
}

struct PlannerSuite;

#[derive(Serialize)]
struct PlannerPayload {
    fixture: String,
    size: usize,
    expected_min_size: usize,
    validation: VerificationReport,
    roundtrips: Vec<VerificationReport>,
}

impl PlannerSuite {
    fn load(&self, ctx: &VerifyContext) -> Result<(String, MotionPlanner)> {
        let spec_name = ctx
            .planner_fixture
            .clone()
            .unwrap_or_else(|| "circle12".to_string());
        if let Some(n) = spec_name.strip_prefix("circle") {
            if let Ok(n) = n.parse::<usize>() {
                return Ok((spec_name.clone(), circle_planner(n)?));
            }
        }
        // otherwise treat it as a path to a planner description
        let text = std::fs::read_to_string(&spec_name)
            .map_err(|e| anyhow!("cannot read planner fixture `{spec_name}`: {e}"))?;
        let spec: PlannerSpec = serde_json::from_str(&text)
            .map_err(|e| anyhow!("bad planner fixture `{spec_name}`: {e}"))?;
        let k = Arc::new(fixtures::by_name(&spec.complex)?);
        Ok((spec_name.clone(), build_planner(&k, &spec)?))
    }
}

impl VerifySuite for PlannerSuite {
    fn name(&self) -> &'static str {
        "planner"
    }

    fn about(&self) -> &'static str {
        "cover, endpoint and stasis contracts of a motion planner fixture"
    }

    fn run(&self, ctx: &VerifyContext) -> Result<VerifyOutcome> {
        let (fixture, planner) = self.load(ctx)?;
        let zcl = zero_divisor_cup_length(&planner.complex, Field::Rational);
        let validation = validate_planner(&fixture, &planner, ctx.samples, ctx.seed, Some(zcl + 1));
        let mut roundtrips = Vec::new();
        let roundtrip_samples = (ctx.samples / 4).max(32);
        for section in &planner.sections {
            roundtrips.push(verify_roundtrip(
                &fixture,
                &planner.complex,
                section,
                roundtrip_samples,
                ctx.seed,
            ));
        }
        let pass = validation.all_pass() && roundtrips.iter().all(|r| r.all_pass());
        let payload = PlannerPayload {
            fixture: fixture.clone(),
            size: planner.size(),
            expected_min_size: zcl + 1,
            validation,
            roundtrips,
        };
        Ok(VerifyOutcome {
            pass,
            summary: format!(
                "planner {fixture}: size {} (zero-divisor bound {})",
                payload.size,
                zcl + 1
            ),
            payload: serde_json::to_value(&payload)?,
        })
    }
}

struct KunnethSuite;

impl VerifySuite for KunnethSuite {
    fn name(&self) -> &'static str {
        "kunneth"
    }

    fn about(&self) -> &'static str {
        "zero-divisor cup length: tensor ring vs. triangulated product"
    }

    fn run(&self, ctx: &VerifyContext) -> Result<VerifyOutcome> {
        let prod = product_complex(&ctx.complex, &ctx.complex);
        let mut rows = Vec::new();
        let mut pass = true;
        for field in &ctx.fields {
            let zcl_tensor = zero_divisor_cup_length(&ctx.complex, *field);
            let zcl_product = zcl_in_product(&ctx.complex, &prod, *field);
            pass &= zcl_tensor == zcl_product;
            rows.push(json!({
                "field": field.name(),
                "zcl_tensor": zcl_tensor,
                "zcl_product": zcl_product,
                "equal": zcl_tensor == zcl_product,
            }));
        }
        Ok(VerifyOutcome {
            pass,
            summary: format!(
                "kunneth on {}: {} field(s), product complex with {:?} cells",
                ctx.complex_name,
                ctx.fields.len(),
                prod.complex.f_vector()
            ),
            payload: json!({ "complex": ctx.complex_name, "rows": rows }),
        })
    }
}

struct LiftSuite;

impl VerifySuite for LiftSuite {
    fn name(&self) -> &'static str {
        "lift"
    }

    fn about(&self) -> &'static str {
        "path-fibration lifting formula boundary and seam laws"
    }

    fn run(&self, ctx: &VerifyContext) -> Result<VerifyOutcome> {
        let random = (ctx.samples / 10).clamp(8, 256);
        let report = verify_lift_on_strom(
            &ctx.complex_name,
            &ctx.complex,
            ctx.samples,
            ctx.seed,
            20,
            random,
        )
        .map_err(|e| anyhow!("lift precondition failed: {e}"))?;
        let summary = format!(
            "lift on {}: 21x21 grid plus {} random times per probe",
            ctx.complex_name, random
        );
        Ok(report_outcome(report, summary))
    }
}

struct ExtendSuite;

impl VerifySuite for ExtendSuite {
    fn name(&self) -> &'static str {
        "extend"
    }

    fn about(&self) -> &'static str {
        "track-cofibration extension formula boundary, seam and section laws"
    }

    fn run(&self, ctx: &VerifyContext) -> Result<VerifyOutcome> {
        let random = (ctx.samples / 10).clamp(8, 256);
        let report = verify_extend_on_strom(
            &ctx.complex_name,
            &ctx.complex,
            ctx.samples,
            ctx.seed,
            20,
            random,
        )
        .map_err(|e| anyhow!("extension precondition failed: {e}"))?;
        let summary = format!(
            "extend on {}: 21x21 grid plus {} random times per probe",
            ctx.complex_name, random
        );
        Ok(report_outcome(report, summary))
    }
}
