//! Serializable views of the results, with stable field names. Polynomials
//! are ascending coefficient arrays; field elements are expressions in the
//! tower generators.

use serde::{Deserialize, Serialize};

use crate::extension::{SimpleForm, SplittingField, TowerField, TowerSpec};
use crate::field::{BaseField, Field};
use crate::galois::{AutomorphismGroup, CensusReport, FixedFieldResult, GaloisReport, IntermediateCheck};
use crate::poly::Poly;

pub fn poly_json<F: Field>(f: &Poly<F>) -> Vec<String> {
    f.coeffs().iter().map(|c| f.field().format_elem(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub text: String,
    pub coefficients: Vec<String>,
}

impl PolyJson {
    pub fn new<F: Field>(f: &Poly<F>) -> Self {
        PolyJson { text: f.to_string(), coefficients: poly_json(f) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub index: usize,
    /// Image of each tower generator, in generator order.
    pub generator_images: Vec<String>,
    /// Image of the primitive element of the collapsed form.
    pub primitive_image: String,
    pub inverse: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub degree: usize,
    pub abelian: bool,
    pub primitive_element: String,
    pub primitive_minimal_polynomial: PolyJson,
    pub elements: Vec<AutomorphismJson>,
    pub composition_table: Vec<Vec<usize>>,
}

pub fn group_json<B: BaseField>(group: &AutomorphismGroup<B>) -> GroupJson {
    let l = group.field();
    let simple: &SimpleForm<B> = group.simple_form();
    let elements = group
        .elements
        .iter()
        .map(|a| AutomorphismJson {
            index: a.index,
            generator_images: group
                .generator_images(a.index)
                .expect("valid index")
                .iter()
                .map(|g| l.format_elem(g))
                .collect(),
            primitive_image: l.format_elem(&a.image),
            inverse: group.inverses[a.index],
        })
        .collect();
    GroupJson {
        order: group.order(),
        degree: l.degree(),
        abelian: group.is_abelian(),
        primitive_element: l.format_elem(&simple.primitive),
        primitive_minimal_polynomial: PolyJson::new(&simple.minimal_polynomial),
        elements,
        composition_table: group.table.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionA {
    pub holds: bool,
    pub group_order: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionC {
    pub holds: bool,
    pub fixed_field_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub orbit: Vec<String>,
    pub polynomial: PolyJson,
    pub squarefree: bool,
    pub splits: bool,
    pub roots_generate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionB {
    pub certificate: Option<CertificateJson>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisReportJson {
    pub tower: TowerSpec,
    pub degree: usize,
    pub group_order: usize,
    /// `|G| <= [L:K]`, recorded for every instance.
    pub order_bound_holds: bool,
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    pub condition_c: ConditionC,
    pub generic_element: String,
    pub generic_minimal_polynomial: PolyJson,
    pub verdict: bool,
    pub group: GroupJson,
}

pub fn galois_report_json<B: BaseField>(report: &GaloisReport<B>) -> GaloisReportJson {
    let l = report.group.field();
    GaloisReportJson {
        tower: l.to_spec(),
        degree: report.degree,
        group_order: report.group_order,
        order_bound_holds: report.group_order <= report.degree,
        condition_a: ConditionA {
            holds: report.condition_a,
            group_order: report.group_order,
            degree: report.degree,
        },
        condition_b: ConditionB {
            certificate: report.certificate.as_ref().map(|c| CertificateJson {
                orbit: c.orbit.iter().map(|b| l.format_elem(b)).collect(),
                polynomial: PolyJson::new(&c.polynomial),
                squarefree: c.squarefree,
                splits: c.splits,
                roots_generate: c.roots_generate,
            }),
            note: report.condition_b_note.clone(),
        },
        condition_c: ConditionC { holds: report.condition_c, fixed_field_degree: report.fixed_field_degree },
        generic_element: l.format_elem(&report.generic_element),
        generic_minimal_polynomial: PolyJson::new(&report.generic_minimal_polynomial),
        verdict: report.verdict,
        group: group_json(&report.group),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedFieldJson {
    pub subgroup: Vec<usize>,
    pub basis: Vec<String>,
    pub generator: String,
    pub generator_minimal_polynomial: PolyJson,
    pub degree: usize,
}

pub fn fixed_field_json<B: BaseField>(l: &TowerField<B>, r: &FixedFieldResult<B>) -> FixedFieldJson {
    FixedFieldJson {
        subgroup: r.subgroup.clone(),
        basis: r.basis.iter().map(|b| l.format_elem(b)).collect(),
        generator: l.format_elem(&r.generator),
        generator_minimal_polynomial: PolyJson::new(&r.generator_minimal_polynomial),
        degree: r.degree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntermediateJson {
    pub subgroup: Vec<usize>,
    pub intermediate_degree: usize,
    pub fixed: FixedFieldJson,
    pub holds: bool,
}

pub fn intermediate_json<B: BaseField>(l: &TowerField<B>, r: &IntermediateCheck<B>) -> IntermediateJson {
    IntermediateJson {
        subgroup: r.subgroup.clone(),
        intermediate_degree: r.intermediate_degree,
        fixed: fixed_field_json(l, &r.fixed),
        holds: r.holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldJson {
    pub m: u32,
    pub size: u64,
    pub expected: u64,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub p: u64,
    pub n: u32,
    pub modulus: PolyJson,
    pub order: u64,
    pub subfields: Vec<SubfieldJson>,
    pub count: u64,
    pub bound: u64,
}

pub fn census_json(r: &CensusReport) -> CensusJson {
    CensusJson {
        p: r.p,
        n: r.n,
        modulus: PolyJson::new(&r.modulus),
        order: r.order,
        subfields: r
            .subfields
            .iter()
            .map(|s| SubfieldJson { m: s.m, size: s.size, expected: s.expected, closed: s.closed })
            .collect(),
        count: r.count,
        bound: r.bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjoinStepJson {
    pub level: usize,
    pub name: String,
    pub factor: PolyJson,
    pub total_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitJson {
    pub polynomial: PolyJson,
    pub tower: TowerSpec,
    pub degree: usize,
    pub roots: Vec<String>,
    pub transcript: Vec<AdjoinStepJson>,
}

pub fn split_json<B: BaseField>(f: &Poly<B>, s: &SplittingField<B>) -> SplitJson {
    let l = &s.field;
    SplitJson {
        polynomial: PolyJson::new(f),
        tower: l.to_spec(),
        degree: l.degree(),
        roots: s.roots.iter().map(|r| l.format_elem(r)).collect(),
        transcript: s
            .transcript
            .iter()
            .map(|t| AdjoinStepJson {
                level: t.level,
                name: t.name.clone(),
                factor: PolyJson::new(&t.factor),
                total_degree: t.total_degree,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveJson {
    pub tower: TowerSpec,
    pub degree: usize,
    pub primitive_element: String,
    pub minimal_polynomial: PolyJson,
    /// Each tower generator as a polynomial in the primitive element `t`.
    pub generator_images: Vec<String>,
}

pub fn primitive_json<B: BaseField>(l: &TowerField<B>, s: &SimpleForm<B>) -> PrimitiveJson {
    PrimitiveJson {
        tower: l.to_spec(),
        degree: l.degree(),
        primitive_element: l.format_elem(&s.primitive),
        minimal_polynomial: PolyJson::new(&s.minimal_polynomial),
        generator_images: s.generator_images.iter().map(|g| s.simple.format_elem(g)).collect(),
    }
}
