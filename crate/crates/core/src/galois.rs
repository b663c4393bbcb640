//! Automorphism groups of tower extensions and the checks built on them:
//! fixed fields, elements with trivial stabilizer, orbit polynomials, the
//! three-condition Galois report, intermediate fields, the finite-field
//! subfield census and the witness outside a union of subspaces.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::extension::{
    adjoin_root, collapse_to_simple, generated_subfield_basis, minimal_polynomial_over_base,
    poly_to_base, SimpleForm, TowerField,
};
use crate::factor::{factor, is_irreducible};
use crate::field::{BaseField, Field, PrimeField};
use crate::linalg::{Matrix, SpanBasis};
use crate::poly::Poly;
use crate::search::{MaxNormSearch, DEFAULT_SEARCH_BOUND};

/// How automorphisms are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutStrategy {
    /// Collapse to `K(theta)`, factor the minimal polynomial of `theta` over
    /// `L`, one automorphism per root.
    RootEnumeration,
    /// Extend the identity of `K` one level at a time, sending each
    /// generator to every root of its (mapped) level modulus.
    RecursiveExtension,
}

/// An automorphism of `L` over `K`, determined by where it sends the
/// primitive element `theta` of the collapsed form.
#[derive(Clone, Debug)]
pub struct Automorphism<B: BaseField> {
    pub index: usize,
    /// `sigma(theta)` in tower coordinates.
    pub image: Vec<B::Elem>,
    /// The `K`-linear map on tower coordinates.
    pub matrix: Matrix<B>,
}

impl<B: BaseField> Automorphism<B> {
    pub fn apply(&self, y: &[B::Elem]) -> Result<Vec<B::Elem>> {
        if y.len() != self.matrix.cols() {
            return Err(Error::domain("element does not belong to this automorphism's field"));
        }
        Ok(self.matrix.mul_vec(y))
    }
}

#[derive(Clone, Debug)]
pub struct AutomorphismGroup<B: BaseField> {
    field: TowerField<B>,
    simple: Arc<SimpleForm<B>>,
    /// Identity first, the rest sorted by image.
    pub elements: Vec<Automorphism<B>>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
    pub inverses: Vec<usize>,
}

impl<B: BaseField> AutomorphismGroup<B> {
    pub fn field(&self) -> &TowerField<B> {
        &self.field
    }

    pub fn simple_form(&self) -> &SimpleForm<B> {
        &self.simple
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(&self, sigma: usize, y: &[B::Elem]) -> Result<Vec<B::Elem>> {
        self.element(sigma)?.apply(y)
    }

    /// Index of `sigma ∘ tau`.
    pub fn compose(&self, sigma: usize, tau: usize) -> Result<usize> {
        self.element(sigma)?;
        self.element(tau)?;
        Ok(self.table[sigma][tau])
    }

    pub fn inverse(&self, sigma: usize) -> Result<usize> {
        self.element(sigma)?;
        Ok(self.inverses[sigma])
    }

    pub fn element(&self, sigma: usize) -> Result<&Automorphism<B>> {
        self.elements
            .get(sigma)
            .ok_or_else(|| Error::domain(format!("no automorphism with index {sigma}")))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Images of the tower generators `g_1, ..., g_k` under `sigma`.
    pub fn generator_images(&self, sigma: usize) -> Result<Vec<Vec<B::Elem>>> {
        let a = self.element(sigma)?;
        Ok(self.field.generators().iter().map(|g| a.matrix.mul_vec(g)).collect())
    }
}

pub fn automorphism_group<B: BaseField>(
    l: &TowerField<B>,
    strategy: AutStrategy,
    seed: u64,
) -> Result<AutomorphismGroup<B>> {
    let simple = collapse_to_simple(l)?;
    let mut images = match strategy {
        AutStrategy::RootEnumeration => {
            let mu = l.lift_base_poly(&simple.minimal_polynomial);
            factor(&mu, seed)?.roots().into_iter().map(|(r, _)| r).collect::<Vec<_>>()
        }
        AutStrategy::RecursiveExtension => {
            let mut partial: Vec<Vec<Vec<B::Elem>>> = vec![Vec::new()];
            for i in 1..=l.level() {
                let below = l.at_level(i - 1)?;
                let modulus = l.level_modulus(i);
                let mut next = Vec::new();
                for images in &partial {
                    let mapped = modulus.map(l, |c| eval_embedding(l, &below, c, images));
                    for (r, _) in factor(&mapped, seed)?.roots() {
                        let mut extended = images.clone();
                        extended.push(r);
                        next.push(extended);
                    }
                }
                partial = next;
            }
            partial
                .iter()
                .map(|images| eval_embedding(l, l, &simple.primitive, images))
                .collect()
        }
    };
    let theta = simple.primitive.clone();
    images.sort();
    images.dedup();
    let pos = images
        .iter()
        .position(|r| *r == theta)
        .ok_or_else(|| Error::internal("identity missing from the automorphism list"))?;
    let id = images.remove(pos);
    images.insert(0, id);
    build_group(l, simple, images)
}

/// Value in `L` of a flat element `c` of level `k.level()` under the
/// embedding sending `g_j` to `images[j - 1]`.
fn eval_embedding<B: BaseField>(
    l: &TowerField<B>,
    k: &TowerField<B>,
    c: &[B::Elem],
    images: &[Vec<B::Elem>],
) -> Vec<B::Elem> {
    let level = k.level();
    if level == 0 {
        return l.from_base(&c[0]);
    }
    let below = k.at_level(level - 1).expect("lower level");
    let chunks = k.coords_over(c, level - 1);
    let g = &images[level - 1];
    let mut acc = l.zero();
    for chunk in chunks.iter().rev() {
        acc = l.add(&l.mul(&acc, g), &eval_embedding(l, &below, chunk, images));
    }
    acc
}

fn build_group<B: BaseField>(
    l: &TowerField<B>,
    simple: Arc<SimpleForm<B>>,
    images: Vec<Vec<B::Elem>>,
) -> Result<AutomorphismGroup<B>> {
    let n = l.degree();
    let base = l.base().clone();
    let mut elements = Vec::with_capacity(images.len());
    for (index, image) in images.into_iter().enumerate() {
        let mut powers = Vec::with_capacity(n);
        let mut p = l.one();
        for _ in 0..n {
            powers.push(p.clone());
            p = l.mul(&p, &image);
        }
        let matrix = Matrix::from_columns(base.clone(), n, &powers).mul(&simple.to_simple);
        elements.push(Automorphism { index, image, matrix });
    }
    let lookup: HashMap<&Vec<B::Elem>, usize> =
        elements.iter().map(|a| (&a.image, a.index)).collect();
    let mut table = Vec::with_capacity(elements.len());
    for a in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in &elements {
            let image = a.matrix.mul_vec(&b.image);
            let k = *lookup
                .get(&image)
                .ok_or_else(|| Error::internal("automorphisms are not closed under composition"))?;
            row.push(k);
        }
        table.push(row);
    }
    let inverses = (0..elements.len())
        .map(|i| {
            table[i]
                .iter()
                .position(|&k| k == 0)
                .ok_or_else(|| Error::internal("automorphism without inverse"))
        })
        .collect::<Result<Vec<_>>>()?;
    if elements.len() > n {
        return Err(Error::internal(format!(
            "found {} automorphisms for an extension of degree {n}",
            elements.len()
        )));
    }
    Ok(AutomorphismGroup { field: l.clone(), simple, elements, table, inverses })
}

#[derive(Clone, Debug)]
pub struct FixedFieldResult<B: BaseField> {
    pub subgroup: Vec<usize>,
    /// A `K`-basis of the fixed elements, in tower coordinates.
    pub basis: Vec<Vec<B::Elem>>,
    pub generator: Vec<B::Elem>,
    pub generator_minimal_polynomial: Poly<B>,
    pub degree: usize,
}

/// The elements of `L` fixed by every automorphism in `subgroup`.
pub fn fixed_field<B: BaseField>(
    group: &AutomorphismGroup<B>,
    subgroup: &[usize],
) -> Result<FixedFieldResult<B>> {
    let l = &group.field;
    let n = l.degree();
    let base = l.base().clone();
    if !subgroup.contains(&0) {
        return Err(Error::domain("subgroup must contain the identity (index 0)"));
    }
    let mut stacked: Option<Matrix<B>> = None;
    for &s in subgroup {
        let a = group.element(s)?;
        if s == 0 {
            continue;
        }
        let d = a.matrix.sub(&Matrix::identity(base.clone(), n));
        stacked = Some(match stacked {
            None => d,
            Some(m) => m.vstack(&d),
        });
    }
    let basis = match stacked {
        None => (0..n).map(|i| unit_vector(&base, n, i)).collect(),
        Some(m) => m.nullspace(),
    };
    let mut span = SpanBasis::new(base.clone(), n);
    for b in &basis {
        span.insert(b);
    }
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i..] {
            if !span.contains(&l.mul(x, y)) {
                return Err(Error::internal("fixed elements are not closed under multiplication"));
            }
        }
    }
    let degree = basis.len();
    let (generator, generator_minimal_polynomial) = if degree == 1 {
        (l.one(), Poly::linear(base.clone(), &base.one()))
    } else {
        subspace_generator(l, &basis)?
    };
    let mut subgroup = subgroup.to_vec();
    subgroup.sort_unstable();
    subgroup.dedup();
    Ok(FixedFieldResult { subgroup, basis, generator, generator_minimal_polynomial, degree })
}

fn unit_vector<B: BaseField>(base: &B, n: usize, i: usize) -> Vec<B::Elem> {
    let mut v = vec![base.zero(); n];
    v[i] = base.one();
    v
}

/// A combination of `basis` with small multipliers whose minimal polynomial
/// has degree `basis.len()`.
fn subspace_generator<B: BaseField>(
    l: &TowerField<B>,
    basis: &[Vec<B::Elem>],
) -> Result<(Vec<B::Elem>, Poly<B>)> {
    let base = l.base();
    let values = base.search_values(DEFAULT_SEARCH_BOUND);
    let mut search = MaxNormSearch::new(basis.len(), values.len());
    while let Some(idx) = search.next_checked()? {
        let mut z = l.zero();
        for (b, &i) in basis.iter().zip(&idx) {
            z = l.add(&z, &l.mul(&l.from_base(&values[i]), b));
        }
        if l.is_zero(&z) {
            continue;
        }
        let mu = minimal_polynomial_over_base(l, &z)?;
        if mu.degree() == Some(basis.len()) {
            return Ok((z, mu));
        }
    }
    Err(Error::capability(format!(
        "no generator of the fixed field with multipliers of norm <= {DEFAULT_SEARCH_BOUND}"
    )))
}

/// Some `z` moved by every non-identity automorphism, searched over
/// coordinate vectors in increasing max-norm.
pub fn generic_element<B: BaseField>(group: &AutomorphismGroup<B>) -> Result<Vec<B::Elem>> {
    let l = &group.field;
    let values = l.base().search_values(DEFAULT_SEARCH_BOUND);
    let mut search = MaxNormSearch::new(l.degree(), values.len());
    let mut tried = 0usize;
    while let Some(idx) = search.next_checked()? {
        tried += 1;
        let z: Vec<B::Elem> = idx.iter().map(|&i| values[i].clone()).collect();
        if group.elements[1..].iter().all(|a| a.matrix.mul_vec(&z) != z) {
            return Ok(z);
        }
    }
    Err(Error::capability(format!(
        "no element with trivial stabilizer among {tried} candidates of max-norm <= {DEFAULT_SEARCH_BOUND} \
         (|G| = {}, [L:K] = {})",
        group.order(),
        l.degree()
    )))
}

/// `prod_{sigma in G} (x - sigma(z))`, with its coefficients checked to be
/// fixed by every element of `G`.
pub fn orbit_polynomial<B: BaseField>(
    group: &AutomorphismGroup<B>,
    z: &[B::Elem],
) -> Result<Poly<TowerField<B>>> {
    let l = &group.field;
    let mut f = Poly::one(l.clone());
    for a in &group.elements {
        f = &f * &Poly::linear(l.clone(), &a.apply(z)?);
    }
    for a in &group.elements[1..] {
        for c in f.coeffs() {
            if a.matrix.mul_vec(c) != *c {
                return Err(Error::internal("orbit polynomial has a coefficient moved by G"));
            }
        }
    }
    Ok(f)
}

/// Certificate that `L` is the splitting field of a squarefree polynomial
/// over `K`: the orbit `B` of the generators and `f = prod_{b in B} (x - b)`.
#[derive(Clone, Debug)]
pub struct SplittingCertificate<B: BaseField> {
    pub orbit: Vec<Vec<B::Elem>>,
    pub polynomial: Poly<B>,
    pub squarefree: bool,
    pub splits: bool,
    pub roots_generate: bool,
}

#[derive(Clone, Debug)]
pub struct GaloisReport<B: BaseField> {
    pub group: AutomorphismGroup<B>,
    pub degree: usize,
    pub group_order: usize,
    /// `|G| = [L:K]`.
    pub condition_a: bool,
    /// The fixed field of `G` is `K`.
    pub condition_c: bool,
    pub fixed_field_degree: usize,
    pub certificate: Option<SplittingCertificate<B>>,
    /// Explanation attached to condition (b).
    pub condition_b_note: String,
    pub generic_element: Vec<B::Elem>,
    pub generic_minimal_polynomial: Poly<B>,
    pub verdict: bool,
}

/// Checks the three equivalent characterizations of a Galois extension for
/// `L` over its base, where `generators` generate `L`.
pub fn galois_report<B: BaseField>(
    l: &TowerField<B>,
    generators: &[Vec<B::Elem>],
    seed: u64,
) -> Result<GaloisReport<B>> {
    let n = l.degree();
    let span = generated_subfield_basis(l, generators)?.len();
    if span != n {
        return Err(Error::domain(format!(
            "generators span a subfield of degree {span}, not [L:K] = {n}"
        )));
    }
    let group = automorphism_group(l, AutStrategy::RootEnumeration, seed)?;
    let m = group.order();
    let condition_a = m == n;
    let all: Vec<usize> = (0..m).collect();
    let fixed = fixed_field(&group, &all)?;
    let condition_c = fixed.degree == 1;
    let z = generic_element(&group)?;
    let mu = minimal_polynomial_over_base(l, &z)?;
    if condition_a != condition_c {
        return Err(Error::internal(format!(
            "condition (a) is {condition_a} but condition (c) is {condition_c} (|G| = {m}, [L:K] = {n}, \
             fixed field degree {})",
            fixed.degree
        )));
    }
    let (certificate, condition_b_note) = if condition_a {
        let cert = splitting_certificate(&group, generators, seed)?;
        if !(cert.squarefree && cert.splits && cert.roots_generate) {
            return Err(Error::internal("splitting certificate failed to validate"));
        }
        let note = format!(
            "L is the splitting field of the squarefree polynomial {} of degree {}",
            cert.polynomial,
            cert.orbit.len()
        );
        (Some(cert), note)
    } else {
        let note = format!(
            "fails: a squarefree polynomial splitting over L with L as its splitting field \
             would force |G| = [L:K], but |G| = {m} < {n}"
        );
        (None, note)
    };
    Ok(GaloisReport {
        group,
        degree: n,
        group_order: m,
        condition_a,
        condition_c,
        fixed_field_degree: fixed.degree,
        certificate,
        condition_b_note,
        generic_element: z,
        generic_minimal_polynomial: mu,
        verdict: condition_a,
    })
}

fn splitting_certificate<B: BaseField>(
    group: &AutomorphismGroup<B>,
    generators: &[Vec<B::Elem>],
    seed: u64,
) -> Result<SplittingCertificate<B>> {
    let l = &group.field;
    let gens: Vec<Vec<B::Elem>> = if generators.is_empty() { vec![l.one()] } else { generators.to_vec() };
    let mut orbit: BTreeSet<Vec<B::Elem>> = BTreeSet::new();
    for g in &gens {
        for a in &group.elements {
            orbit.insert(a.apply(g)?);
        }
    }
    let orbit: Vec<_> = orbit.into_iter().collect();
    let mut f = Poly::one(l.clone());
    for b in &orbit {
        f = &f * &Poly::linear(l.clone(), b);
    }
    let polynomial = poly_to_base(&f)
        .map_err(|_| Error::internal("certificate polynomial has coefficients outside K"))?;
    let squarefree = polynomial.is_squarefree()?;
    let fac = factor(&f, seed)?;
    let splits = fac.factors.iter().all(|(g, _)| g.degree() == Some(1))
        && fac.factor_count() == orbit.len();
    let roots_generate = generated_subfield_basis(l, &orbit)?.len() == l.degree();
    Ok(SplittingCertificate { orbit, polynomial, squarefree, splits, roots_generate })
}

#[derive(Clone, Debug)]
pub struct IntermediateCheck<B: BaseField> {
    /// Automorphisms fixing every generator of `M`.
    pub subgroup: Vec<usize>,
    pub intermediate_degree: usize,
    pub fixed: FixedFieldResult<B>,
    pub holds: bool,
}

/// For `L/K` Galois and `M` generated by `m_generators`: computes
/// `H = Aut(L, M)` and checks that the fixed field of `H` is exactly `M`.
pub fn intermediate_fixed_check<B: BaseField>(
    group: &AutomorphismGroup<B>,
    m_generators: &[Vec<B::Elem>],
) -> Result<IntermediateCheck<B>> {
    let l = &group.field;
    if group.order() != l.degree() {
        return Err(Error::domain(format!(
            "precondition: L/K must be Galois, but |G| = {} and [L:K] = {}",
            group.order(),
            l.degree()
        )));
    }
    let m_basis = generated_subfield_basis(l, m_generators)?;
    let mut subgroup = Vec::new();
    for a in &group.elements {
        let fixes = m_generators.iter().map(|g| Ok(a.apply(g)? == *g)).collect::<Result<Vec<_>>>()?;
        if fixes.into_iter().all(|b| b) {
            subgroup.push(a.index);
        }
    }
    let fixed = fixed_field(group, &subgroup)?;
    let base = l.base().clone();
    let mut m_span = SpanBasis::new(base.clone(), l.degree());
    for b in &m_basis {
        m_span.insert(b);
    }
    let mut fixed_span = SpanBasis::new(base, l.degree());
    for b in &fixed.basis {
        fixed_span.insert(b);
    }
    let holds = fixed.degree == m_basis.len()
        && m_basis.iter().all(|b| fixed_span.contains(b))
        && fixed.basis.iter().all(|b| m_span.contains(b));
    Ok(IntermediateCheck { subgroup, intermediate_degree: m_basis.len(), fixed, holds })
}

/// Default limit on `p^n` for the census.
pub const CENSUS_BUDGET: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldCount {
    pub m: u32,
    /// Number of solutions of `x^(p^m) = x`.
    pub size: u64,
    pub expected: u64,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub n: u32,
    pub modulus: Poly<PrimeField>,
    pub order: u64,
    /// One entry per divisor `m` of `n`, including `n`.
    pub subfields: Vec<SubfieldCount>,
    /// Elements lying in some proper subfield.
    pub count: u64,
    /// `1 + p + ... + p^(n-1)`.
    pub bound: u64,
}

/// Counts the elements of `F_{p^n}` lying in a proper subfield, by testing
/// `x^(p^m) = x` for every proper divisor `m` of `n`.
pub fn subfield_element_census(p: u64, n: u32, budget: u64) -> Result<CensusReport> {
    if n < 2 {
        return Err(Error::domain(format!("census needs n >= 2, got {n}")));
    }
    let fp = PrimeField::new(p)?;
    let order = p
        .checked_pow(n)
        .filter(|&q| q <= budget)
        .ok_or_else(|| Error::capability(format!("{p}^{n} exceeds the census budget {budget}")))?;
    let modulus = first_irreducible(&fp, n as usize)?;
    let k = TowerField::base_field(fp);
    let l = adjoin_root(&k, &k.lift_base_poly(&modulus), "t")?;
    let elements: Vec<Vec<u64>> = (0..order)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = i % p;
                    i /= p;
                    d
                })
                .collect()
        })
        .collect();
    let divisors: Vec<u32> = (1..=n).filter(|m| n.is_multiple_of(*m)).collect();
    let mut in_proper = vec![false; elements.len()];
    let mut subfields = Vec::new();
    for &m in &divisors {
        let e = BigUint::from(p).pow(m);
        let members: Vec<usize> = (0..elements.len())
            .filter(|&i| l.pow(&elements[i], &e) == elements[i])
            .collect();
        let set: BTreeSet<&Vec<u64>> = members.iter().map(|&i| &elements[i]).collect();
        // The full field is closed by construction; checking it would cost
        // order^2 operations.
        let closed = m == n || members.iter().all(|&i| {
            members.iter().all(|&j| {
                set.contains(&l.add(&elements[i], &elements[j]))
                    && set.contains(&l.mul(&elements[i], &elements[j]))
            })
        });
        if m < n {
            for &i in &members {
                in_proper[i] = true;
            }
        }
        subfields.push(SubfieldCount {
            m,
            size: members.len() as u64,
            expected: p.pow(m),
            closed,
        });
    }
    let count = in_proper.iter().filter(|&&b| b).count() as u64;
    let bound = (0..n).map(|i| p.pow(i)).sum();
    if count > bound || bound >= order {
        return Err(Error::internal(format!(
            "census bound violated: count {count}, bound {bound}, order {order}"
        )));
    }
    Ok(CensusReport { p, n, modulus, order, subfields, count, bound })
}

/// The first monic irreducible of degree `n` over `F_p`, enumerating
/// lower coefficients as base-`p` digits.
fn first_irreducible(fp: &PrimeField, n: usize) -> Result<Poly<PrimeField>> {
    let p = fp.modulus();
    let total = p.checked_pow(n as u32).ok_or_else(|| Error::capability("search space too large"))?;
    for i in 0..total {
        let mut v = i;
        let mut coeffs: Vec<u64> = (0..n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect();
        coeffs.push(1);
        let f = Poly::new(*fp, coeffs);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::internal(format!("no irreducible polynomial of degree {n} over F{p}")))
}

/// An element of `L` outside every listed proper `K`-subspace, each given
/// by spanning vectors in tower coordinates. `K` must be infinite.
pub fn outside_union_witness<B: BaseField>(
    l: &TowerField<B>,
    subspaces: &[Vec<Vec<B::Elem>>],
) -> Result<Vec<B::Elem>> {
    if l.base().is_finite() {
        return Err(Error::domain("outside_union_witness needs an infinite base field"));
    }
    let n = l.degree();
    let base = l.base().clone();
    let mut spans = Vec::with_capacity(subspaces.len());
    for (i, s) in subspaces.iter().enumerate() {
        let mut span = SpanBasis::new(base.clone(), n);
        for v in s {
            if v.len() != n {
                return Err(Error::domain(format!("subspace {i}: vector of the wrong length")));
            }
            span.insert(v);
        }
        if span.rank() == n {
            return Err(Error::domain(format!("subspace {i} is all of L, not a proper subspace")));
        }
        spans.push(span);
    }
    let values = base.search_values(DEFAULT_SEARCH_BOUND);
    let mut search = MaxNormSearch::new(n, values.len());
    while let Some(idx) = search.next_checked()? {
        let z: Vec<B::Elem> = idx.iter().map(|&i| values[i].clone()).collect();
        if spans.iter().all(|s| !s.contains(&z)) {
            return Ok(z);
        }
    }
    Err(Error::capability(format!(
        "no element outside the subspaces with coordinates of norm <= {DEFAULT_SEARCH_BOUND}"
    )))
}
