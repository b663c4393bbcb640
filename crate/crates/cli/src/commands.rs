//! Argument definitions and the subcommand implementations.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galois_kit::report::{
    census_json, fixed_field_json, galois_report_json, group_json, intermediate_json, primitive_json,
    split_json,
};
use galois_kit::{
    automorphism_group, collapse_to_simple, fixed_field, galois_report, intermediate_fixed_check,
    splitting_field, subfield_element_census, AutStrategy, BaseField, Error, Field, PrimeField, Rationals,
    TowerField,
};
use serde::Serialize;
use serde_json::Value;

use crate::build::{build_field, read_tower_spec, Construction};
use crate::corpus::{load_corpus, render_table, verify_corpus};
use crate::parse::{parse_element, parse_over, BaseSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "galois-kit", version, about = "Exact Galois theory over Q and F_p")]
pub struct Cli {
    /// Base field, `Q` or `F<p>`.
    #[arg(long, global = true)]
    pub base: Option<String>,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "GALOIS_KIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// A polynomial over the base; `L` is `K[x]/(f)` unless `--split` is given.
    pub poly: Option<String>,
    /// Use the splitting field of the polynomial instead of its stem field.
    #[arg(long)]
    pub split: bool,
    /// Load the tower from a JSON file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["poly", "split"])]
    pub tower: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Strategy {
    Root,
    Recursive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the splitting field of a polynomial.
    Split { poly: String },
    /// Check the Galois conditions for an extension.
    Galois {
        #[command(flatten)]
        source: Source,
        /// Generators of an intermediate field, comma separated; repeatable.
        #[arg(long, value_name = "EXPRS")]
        intermediate: Vec<String>,
    },
    /// List the automorphism group.
    Aut {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "root")]
        strategy: Strategy,
    },
    /// Fixed field of a subgroup, given by element indices as listed by `aut`.
    Fixed {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
    },
    /// Collapse the tower to a simple extension.
    Primitive {
        #[command(flatten)]
        source: Source,
    },
    /// Count elements of F_{p^n} lying in proper subfields.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = galois_kit::galois::CENSUS_BUDGET)]
        budget: u64,
    },
    /// Run the instance corpus (the bundled one by default).
    VerifyCorpus {
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
    },
}

/// What a command prints: text, JSON, and an error raised after output.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub failure: Option<CliError>,
}

impl Output {
    fn new(text: String, json: impl Serialize) -> Result<Self, CliError> {
        let json = serde_json::to_value(json).map_err(|e| Error::internal(format!("serialization: {e}")))?;
        Ok(Output { text, json, failure: None })
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Census { p, n, budget } => census(*p, *n, *budget),
        Command::VerifyCorpus { corpus, parallelism } => {
            let records = load_corpus(corpus.as_deref())?;
            let summary = verify_corpus(&records, *parallelism, cli.seed)?;
            let mut out = Output::new(render_table(&summary), &summary)?;
            if !summary.failed.is_empty() {
                out.failure = Some(CliError::Mismatch(summary.failed.clone()));
            }
            Ok(out)
        }
        Command::Split { poly } => split(cli, poly),
        Command::Galois { source, intermediate } => galois(&load_field(cli, source)?, intermediate, cli.seed),
        Command::Aut { source, strategy } => aut(&load_field(cli, source)?, *strategy, cli.seed),
        Command::Fixed { source, subgroup } => fixed(&load_field(cli, source)?, subgroup, cli.seed),
        Command::Primitive { source } => primitive(&load_field(cli, source)?),
    }
}

fn resolve_base(cli: &Cli, from_file: Option<&str>) -> Result<BaseSpec, CliError> {
    let given = cli.base.as_deref().map(BaseSpec::parse).transpose()?;
    match from_file {
        Some(text) => {
            let file = BaseSpec::parse(text)?;
            if let Some(g) = given {
                if g != file {
                    return Err(Error::domain(format!("--base {g} conflicts with tower base {file}")).into());
                }
            }
            Ok(file)
        }
        None => Ok(given.unwrap_or(BaseSpec::Q)),
    }
}

fn split(cli: &Cli, poly: &str) -> Result<Output, CliError> {
    match resolve_base(cli, None)? {
        BaseSpec::Q => split_on(Rationals, poly, cli.seed),
        BaseSpec::Fp(fp) => split_on(fp, poly, cli.seed),
    }
}

fn split_on<B: BaseField>(base: B, poly: &str, seed: u64) -> Result<Output, CliError> {
    let k = TowerField::base_field(base.clone());
    let f = parse_over(poly, &k)?;
    let s = splitting_field(&f, seed)?;
    let fb = galois_kit::extension::poly_to_base(&f)?;
    let l = &s.field;
    let mut text = format!("splitting field of {fb} over {}\n", base.spec());
    text.push_str(&format!("degree: {}\n", l.degree()));
    for step in &s.transcript {
        text.push_str(&format!(
            "adjoin {} with minimal polynomial {} (total degree {})\n",
            step.name, step.factor, step.total_degree
        ));
    }
    let roots: Vec<String> = s.roots.iter().map(|r| l.format_elem(r)).collect();
    text.push_str(&format!("roots: {}\n", roots.join(", ")));
    Output::new(text, split_json(&fb, &s))
}

/// The field `L` over either base.
pub enum AnyField {
    Q(TowerField<Rationals>),
    Fp(TowerField<PrimeField>),
}

/// Builds `L` from a polynomial (stem or splitting field) or a tower file.
pub fn load_field(cli: &Cli, source: &Source) -> Result<AnyField, CliError> {
    if let Some(path) = &source.tower {
        let spec = read_tower_spec(path).map_err(CliError::Io)?;
        return Ok(match resolve_base(cli, Some(&spec.base))? {
            BaseSpec::Q => AnyField::Q(TowerField::from_spec(Rationals, &spec)?),
            BaseSpec::Fp(fp) => AnyField::Fp(TowerField::from_spec(fp, &spec)?),
        });
    }
    let poly = source
        .poly
        .as_ref()
        .ok_or_else(|| Error::domain("give a polynomial or --tower FILE"))?;
    let construction = if source.split { Construction::Splitting } else { Construction::Stem };
    let polys = [poly.clone()];
    Ok(match resolve_base(cli, None)? {
        BaseSpec::Q => AnyField::Q(build_field(&Rationals, construction, &polys, &[], cli.seed)?),
        BaseSpec::Fp(fp) => AnyField::Fp(build_field(&fp, construction, &polys, &[], cli.seed)?),
    })
}

macro_rules! on_field {
    ($l:expr, |$f:ident| $body:expr) => {
        match $l {
            AnyField::Q($f) => $body,
            AnyField::Fp($f) => $body,
        }
    };
}

fn describe<B: BaseField>(l: &TowerField<B>) -> String {
    let spec = l.to_spec();
    let names = l.generator_names();
    let mut parts = Vec::new();
    for i in 1..=l.level() {
        parts.push(format!("{} root of {}", names[i - 1], l.level_modulus(i)));
    }
    if parts.is_empty() {
        format!("L = {}", spec.base)
    } else {
        format!("L = {}({}) with {}", spec.base, names.join(", "), parts.join("; "))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn galois(l: &AnyField, intermediate: &[String], seed: u64) -> Result<Output, CliError> {
    on_field!(l, |l| galois_on(l, intermediate, seed))
}

fn galois_on<B: BaseField>(l: &TowerField<B>, intermediate: &[String], seed: u64) -> Result<Output, CliError> {
    let report = galois_report(l, &l.generators(), seed)?;
    let mut text = format!("{}\n", describe(l));
    text.push_str(&format!("[L:K] = {}, |G| = {}\n", report.degree, report.group_order));
    text.push_str(&format!("(a) |G| = [L:K]: {}\n", yes(report.condition_a)));
    match &report.certificate {
        Some(c) => text.push_str(&format!(
            "(b) L splits f = {} (squarefree: {}, splits: {}, roots generate L: {})\n",
            c.polynomial,
            yes(c.squarefree),
            yes(c.splits),
            yes(c.roots_generate)
        )),
        None => text.push_str(&format!("(b) {}\n", report.condition_b_note)),
    }
    text.push_str(&format!(
        "(c) fixed field of G is K: {} (degree {})\n",
        yes(report.condition_c),
        report.fixed_field_degree
    ));
    text.push_str(&format!(
        "generic element {} with minimal polynomial {}\n",
        l.format_elem(&report.generic_element),
        report.generic_minimal_polynomial
    ));
    text.push_str(&format!("galois: {}\n", yes(report.verdict)));

    let mut checks = Vec::new();
    for gens in intermediate {
        let elems = gens
            .split(',')
            .map(|g| parse_element(g, l))
            .collect::<galois_kit::Result<Vec<_>>>()?;
        let check = intermediate_fixed_check(&report.group, &elems)?;
        text.push_str(&format!(
            "M = K({gens}): [M:K] = {}, |Aut(L, M)| = {}, fixed field equals M: {}\n",
            check.intermediate_degree,
            check.subgroup.len(),
            yes(check.holds)
        ));
        checks.push(intermediate_json(l, &check));
    }

    #[derive(Serialize)]
    struct Json {
        #[serde(flatten)]
        report: galois_kit::report::GaloisReportJson,
        intermediate: Vec<galois_kit::report::IntermediateJson>,
    }
    Output::new(text, Json { report: galois_report_json(&report), intermediate: checks })
}

fn aut(l: &AnyField, strategy: Strategy, seed: u64) -> Result<Output, CliError> {
    let strategy = match strategy {
        Strategy::Root => AutStrategy::RootEnumeration,
        Strategy::Recursive => AutStrategy::RecursiveExtension,
    };
    on_field!(l, |l| {
        let group = automorphism_group(l, strategy, seed)?;
        let names = l.generator_names();
        let mut text = format!("{}\n|G| = {}, abelian: {}\n", describe(l), group.order(), yes(group.is_abelian()));
        for a in &group.elements {
            let images = group.generator_images(a.index)?;
            let maps: Vec<String> =
                names.iter().zip(&images).map(|(n, y)| format!("{n} -> {}", l.format_elem(y))).collect();
            text.push_str(&format!("{}: {}\n", a.index, if maps.is_empty() { "id".into() } else { maps.join(", ") }));
        }
        Output::new(text, group_json(&group))
    })
}

fn fixed(l: &AnyField, subgroup: &[usize], seed: u64) -> Result<Output, CliError> {
    on_field!(l, |l| {
        let group = automorphism_group(l, AutStrategy::RootEnumeration, seed)?;
        let r = fixed_field(&group, subgroup)?;
        let basis: Vec<String> = r.basis.iter().map(|b| l.format_elem(b)).collect();
        let text = format!(
            "{}\nfixed field of {:?}: degree {} over K, generated by {} with minimal polynomial {}\nbasis: {}\n",
            describe(l),
            r.subgroup,
            r.degree,
            l.format_elem(&r.generator),
            r.generator_minimal_polynomial,
            basis.join(", ")
        );
        Output::new(text, fixed_field_json(l, &r))
    })
}

fn primitive(l: &AnyField) -> Result<Output, CliError> {
    on_field!(l, |l| {
        let s = collapse_to_simple(l)?;
        let mut text = format!(
            "{}\nprimitive element {} with minimal polynomial {}\n",
            describe(l),
            l.format_elem(&s.primitive),
            s.minimal_polynomial
        );
        for (n, g) in l.generator_names().iter().zip(&s.generator_images) {
            text.push_str(&format!("{n} = {}\n", s.simple.format_elem(g)));
        }
        Output::new(text, primitive_json(l, &s))
    })
}

fn census(p: u64, n: u32, budget: u64) -> Result<Output, CliError> {
    let r = subfield_element_census(p, n, budget)?;
    let mut text = format!("F_{}^{} = F_{}[x]/({}), {} elements\n", p, n, p, r.modulus, r.order);
    for s in &r.subfields {
        text.push_str(&format!(
            "subfield of size {}^{}: {} elements found, expected {}, closed: {}\n",
            p,
            s.m,
            s.size,
            s.expected,
            yes(s.closed)
        ));
    }
    text.push_str(&format!(
        "elements in proper subfields: {} <= {} < {}\n",
        r.count, r.bound, r.order
    ));
    Output::new(text, census_json(&r))
}
