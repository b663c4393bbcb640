//! The instance corpus: records, the runner, and its summary.

use std::path::Path;

use galois_kit::report::PolyJson;
use galois_kit::{galois_report, intermediate_fixed_check, BaseField, Error, Rationals};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::build::{build_field, Construction};
use crate::parse::{parse_element, BaseSpec};
use crate::CliError;

/// The corpus shipped with the binary.
pub const BUNDLED_CORPUS: &str = include_str!("../corpus/instances.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub galois: bool,
    pub group_order: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub name: String,
    pub base: String,
    pub construction: Construction,
    pub polynomials: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    /// Intermediate fields, each given by generators written over `L`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intermediate_fields: Vec<Vec<String>>,
    pub expected: Expected,
    /// Where the expected values come from.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntermediateOutcome {
    pub generators: Vec<String>,
    pub subgroup_order: usize,
    pub degree: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub name: String,
    pub base: String,
    pub degree: Option<usize>,
    pub group_order: Option<usize>,
    pub condition_a: Option<bool>,
    pub condition_c: Option<bool>,
    pub verdict: Option<bool>,
    pub certificate: Option<PolyJson>,
    pub generic_minimal_polynomial: Option<PolyJson>,
    pub intermediate: Vec<IntermediateOutcome>,
    pub passed: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    pub instances: Vec<InstanceOutcome>,
}

pub fn parse_corpus(text: &str) -> Result<Vec<InstanceRecord>, CliError> {
    let records: Vec<InstanceRecord> =
        serde_json::from_str(text).map_err(|e| CliError::Core(Error::domain(format!("malformed corpus: {e}"))))?;
    if records.is_empty() {
        return Err(CliError::Core(Error::domain("corpus contains no instances")));
    }
    let mut names: Vec<&str> = records.iter().map(|r| r.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(CliError::Core(Error::domain(format!("duplicate instance name `{}`", w[0]))));
    }
    Ok(records)
}

pub fn load_corpus(path: Option<&Path>) -> Result<Vec<InstanceRecord>, CliError> {
    match path {
        None => parse_corpus(BUNDLED_CORPUS),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io(format!("cannot read corpus {}: {e}", p.display())))?;
            parse_corpus(&text)
        }
    }
}

/// Runs every instance, at most `parallelism` at a time, and returns the
/// outcomes sorted by name.
pub fn verify_corpus(records: &[InstanceRecord], parallelism: usize, seed: u64) -> Result<CorpusSummary, CliError> {
    if records.is_empty() {
        return Err(CliError::Core(Error::domain("corpus contains no instances")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker threads: {e}")))?;
    let mut instances: Vec<InstanceOutcome> =
        pool.install(|| records.par_iter().map(|r| run_instance(r, seed)).collect());
    instances.sort_by(|a, b| a.name.cmp(&b.name));
    let failed: Vec<String> = instances.iter().filter(|o| !o.passed).map(|o| o.name.clone()).collect();
    Ok(CorpusSummary {
        seed,
        total: instances.len(),
        passed: instances.len() - failed.len(),
        failed,
        instances,
    })
}

pub fn run_instance(record: &InstanceRecord, seed: u64) -> InstanceOutcome {
    let mut outcome = InstanceOutcome {
        name: record.name.clone(),
        base: record.base.clone(),
        degree: None,
        group_order: None,
        condition_a: None,
        condition_c: None,
        verdict: None,
        certificate: None,
        generic_minimal_polynomial: None,
        intermediate: Vec::new(),
        passed: false,
        problems: Vec::new(),
    };
    let result = match BaseSpec::parse(&record.base) {
        Ok(BaseSpec::Q) => evaluate(&Rationals, record, seed, &mut outcome),
        Ok(BaseSpec::Fp(fp)) => evaluate(&fp, record, seed, &mut outcome),
        Err(e) => Err(e),
    };
    if let Err(e) = result {
        outcome.problems.push(e.to_string());
    }
    outcome.passed = outcome.problems.is_empty();
    outcome
}

fn evaluate<B: BaseField>(
    base: &B,
    record: &InstanceRecord,
    seed: u64,
    out: &mut InstanceOutcome,
) -> galois_kit::Result<()> {
    let l = build_field(base, record.construction, &record.polynomials, &record.names, seed)?;
    let report = galois_report(&l, &l.generators(), seed)?;
    out.degree = Some(report.degree);
    out.group_order = Some(report.group_order);
    out.condition_a = Some(report.condition_a);
    out.condition_c = Some(report.condition_c);
    out.verdict = Some(report.verdict);
    out.certificate = report.certificate.as_ref().map(|c| PolyJson::new(&c.polynomial));
    out.generic_minimal_polynomial = Some(PolyJson::new(&report.generic_minimal_polynomial));

    let exp = &record.expected;
    if report.group_order > report.degree {
        out.problems.push(format!("|G| = {} exceeds [L:K] = {}", report.group_order, report.degree));
    }
    if report.condition_a != report.condition_c {
        out.problems.push("conditions (a) and (c) disagree".to_string());
    }
    if report.degree != exp.degree {
        out.problems.push(format!("[L:K] = {}, expected {}", report.degree, exp.degree));
    }
    if report.group_order != exp.group_order {
        out.problems.push(format!("|G| = {}, expected {}", report.group_order, exp.group_order));
    }
    if report.verdict != exp.galois {
        out.problems.push(format!("verdict {}, expected {}", report.verdict, exp.galois));
    }
    for gens in &record.intermediate_fields {
        let elems = gens.iter().map(|g| parse_element(g, &l)).collect::<galois_kit::Result<Vec<_>>>()?;
        let check = intermediate_fixed_check(&report.group, &elems)?;
        if !check.holds {
            out.problems.push(format!("fixed field of Aut(L, M) differs from M = K({})", gens.join(", ")));
        }
        out.intermediate.push(IntermediateOutcome {
            generators: gens.clone(),
            subgroup_order: check.subgroup.len(),
            degree: check.intermediate_degree,
            holds: check.holds,
        });
    }
    Ok(())
}

pub fn render_table(summary: &CorpusSummary) -> String {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |n| n.to_string());
    let flag = |v: Option<bool>| v.map_or("-", |b| if b { "yes" } else { "no" });
    let width = summary.instances.iter().map(|o| o.name.len()).max().unwrap_or(8).max(8);
    let mut s = format!(
        "{:<width$}  {:<5} {:>5} {:>4}  {:<4} {:<4} {:<7} {:<6}\n",
        "instance", "base", "[L:K]", "|G|", "(a)", "(c)", "galois", "result"
    );
    for o in &summary.instances {
        s.push_str(&format!(
            "{:<width$}  {:<5} {:>5} {:>4}  {:<4} {:<4} {:<7} {:<6}\n",
            o.name,
            o.base,
            opt(o.degree),
            opt(o.group_order),
            flag(o.condition_a),
            flag(o.condition_c),
            flag(o.verdict),
            if o.passed { "pass" } else { "FAIL" },
        ));
        for p in &o.problems {
            s.push_str(&format!("    {p}\n"));
        }
    }
    s.push_str(&format!("{} of {} instances passed\n", summary.passed, summary.total));
    s
}
