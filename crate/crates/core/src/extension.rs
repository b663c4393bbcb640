//! Finite extensions as towers of quotient rings.
//!
//! A [`Tower`] over a base field `K` is a chain `K = L_0 ⊂ L_1 ⊂ ... ⊂ L_k`
//! with `L_i = L_{i-1}[g_i] / (m_i)`. Elements of `L_i` are stored flat: the
//! coordinates in the nested power basis `g_1^e_1 * ... * g_i^e_i`, with the
//! lowest level varying fastest. An element of `L_j` sits in `L_i` (`j <= i`)
//! as its first `[L_j : K]` coordinates, so embedding is zero padding.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{BaseField, Field};
use crate::linalg::{Matrix, SpanBasis};
use crate::poly::Poly;
use crate::search::{MaxNormSearch, DEFAULT_SEARCH_BOUND};

#[derive(Clone, Debug)]
struct Level<B: BaseField> {
    name: String,
    degree: usize,
    // Monic; coefficient i is a flat element of the level below.
    modulus: Vec<Vec<B::Elem>>,
}

impl<B: BaseField> PartialEq for Level<B> {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

/// The shared, immutable data behind a [`TowerField`].
pub struct Tower<B: BaseField> {
    base: B,
    levels: Vec<Level<B>>,
    dims: Vec<usize>,
    simple_forms: Vec<OnceLock<Arc<SimpleForm<B>>>>,
}

impl<B: BaseField> Tower<B> {
    fn build(base: B, levels: Vec<Level<B>>) -> Arc<Self> {
        let mut dims = vec![1];
        for l in &levels {
            dims.push(dims.last().unwrap() * l.degree);
        }
        let simple_forms = (0..=levels.len()).map(|_| OnceLock::new()).collect();
        Arc::new(Tower { base, levels, dims, simple_forms })
    }

    fn is_zero_slice(&self, a: &[B::Elem]) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn mul_at(&self, k: usize, a: &[B::Elem], b: &[B::Elem]) -> Vec<B::Elem> {
        let base = &self.base;
        if k == 0 {
            return vec![base.mul(&a[0], &b[0])];
        }
        let level = &self.levels[k - 1];
        let d = level.degree;
        if k == 1 {
            return self.mul_level_one(a, b);
        }
        let c = self.dims[k - 1];
        let chunk = |v: &'_ [B::Elem], i: usize| -> Vec<B::Elem> { v[i * c..(i + 1) * c].to_vec() };
        let mut prod: Vec<Vec<B::Elem>> = vec![vec![base.zero(); c]; 2 * d - 1];
        let a_chunks: Vec<_> = (0..d).map(|i| chunk(a, i)).collect();
        let b_chunks: Vec<_> = (0..d).map(|i| chunk(b, i)).collect();
        for (i, ai) in a_chunks.iter().enumerate() {
            if self.is_zero_slice(ai) {
                continue;
            }
            for (j, bj) in b_chunks.iter().enumerate() {
                if self.is_zero_slice(bj) {
                    continue;
                }
                let t = self.mul_at(k - 1, ai, bj);
                for (x, y) in prod[i + j].iter_mut().zip(&t) {
                    *x = base.add(x, y);
                }
            }
        }
        for t in (d..2 * d - 1).rev() {
            let top = std::mem::replace(&mut prod[t], vec![base.zero(); c]);
            if self.is_zero_slice(&top) {
                continue;
            }
            for (j, mj) in level.modulus[..d].iter().enumerate() {
                if self.is_zero_slice(mj) {
                    continue;
                }
                let s = self.mul_at(k - 1, &top, mj);
                for (x, y) in prod[t - d + j].iter_mut().zip(&s) {
                    *x = base.sub(x, y);
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    fn mul_level_one(&self, a: &[B::Elem], b: &[B::Elem]) -> Vec<B::Elem> {
        let base = &self.base;
        let level = &self.levels[0];
        let d = level.degree;
        let mut prod = vec![base.zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if base.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !base.is_zero(bj) {
                    prod[i + j] = base.add(&prod[i + j], &base.mul(ai, bj));
                }
            }
        }
        for t in (d..2 * d - 1).rev() {
            let top = std::mem::replace(&mut prod[t], base.zero());
            if base.is_zero(&top) {
                continue;
            }
            for (j, mj) in level.modulus[..d].iter().enumerate() {
                if !base.is_zero(&mj[0]) {
                    prod[t - d + j] = base.sub(&prod[t - d + j], &base.mul(&top, &mj[0]));
                }
            }
        }
        prod.truncate(d);
        prod
    }
}

/// One level of a tower viewed as a field.
#[derive(Clone)]
pub struct TowerField<B: BaseField> {
    tower: Arc<Tower<B>>,
    level: usize,
}

impl<B: BaseField> fmt::Debug for TowerField<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.tower.levels[..self.level].iter().map(|l| l.name.as_str()).collect();
        write!(f, "TowerField({}; {}; degree {})", self.tower.base.spec(), names.join(", "), self.degree())
    }
}

impl<B: BaseField> PartialEq for TowerField<B> {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && (Arc::ptr_eq(&self.tower, &other.tower)
                || (self.tower.base == other.tower.base
                    && self.tower.levels[..self.level] == other.tower.levels[..other.level]))
    }
}

impl<B: BaseField> TowerField<B> {
    /// The base field as a tower with no levels.
    pub fn base_field(base: B) -> Self {
        TowerField { tower: Tower::build(base, Vec::new()), level: 0 }
    }

    pub fn base(&self) -> &B {
        &self.tower.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `[L : K]` for this level over the base.
    pub fn degree(&self) -> usize {
        self.tower.dims[self.level]
    }

    /// The same tower seen at a lower level.
    pub fn at_level(&self, level: usize) -> Result<Self> {
        if level > self.level {
            return Err(Error::domain(format!("level {level} lies above level {}", self.level)));
        }
        Ok(TowerField { tower: self.tower.clone(), level })
    }

    pub fn base_view(&self) -> Self {
        TowerField { tower: self.tower.clone(), level: 0 }
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.tower.levels[..self.level].iter().map(|l| l.name.clone()).collect()
    }

    /// Degree of level `i` (1-based) over level `i - 1`.
    pub fn level_degree(&self, i: usize) -> usize {
        self.tower.levels[i - 1].degree
    }

    /// Modulus of level `i` (1-based) as a polynomial over level `i - 1`.
    pub fn level_modulus(&self, i: usize) -> Poly<TowerField<B>> {
        let below = TowerField { tower: self.tower.clone(), level: i - 1 };
        Poly::new(below, self.tower.levels[i - 1].modulus.clone())
    }

    /// The adjoined root `g_i` as an element of this field.
    pub fn generator(&self, i: usize) -> Vec<B::Elem> {
        assert!(1 <= i && i <= self.level, "generator index out of range");
        let mut v = self.zero();
        v[self.tower.dims[i - 1]] = self.tower.base.one();
        v
    }

    pub fn generators(&self) -> Vec<Vec<B::Elem>> {
        (1..=self.level).map(|i| self.generator(i)).collect()
    }

    pub fn from_base(&self, c: &B::Elem) -> Vec<B::Elem> {
        let mut v = self.zero();
        v[0] = c.clone();
        v
    }

    /// Zero-pads an element of a lower level of the same tower.
    pub fn embed(&self, a: &[B::Elem]) -> Vec<B::Elem> {
        assert!(a.len() <= self.degree(), "element lives above this level");
        let mut v = a.to_vec();
        v.resize(self.degree(), self.tower.base.zero());
        v
    }

    /// The base-field value of an element lying in `K`, if it does.
    pub fn to_base(&self, a: &[B::Elem]) -> Option<B::Elem> {
        a[1..].iter().all(|x| self.tower.base.is_zero(x)).then(|| a[0].clone())
    }

    pub fn lift_base_poly(&self, f: &Poly<B>) -> Poly<TowerField<B>> {
        f.map(self, |c| self.from_base(c))
    }

    /// Lifts a polynomial over a lower level of the same tower.
    pub fn lift_poly(&self, f: &Poly<TowerField<B>>) -> Poly<TowerField<B>> {
        f.map(self, |c| self.embed(c))
    }

    /// Coordinates over level `over`: `[L:K]/[L_over:K]` chunks.
    pub fn coords_over(&self, a: &[B::Elem], over: usize) -> Vec<Vec<B::Elem>> {
        a.chunks(self.tower.dims[over]).map(<[B::Elem]>::to_vec).collect()
    }

    fn term_monomial(&self, index: usize) -> String {
        let mut parts = Vec::new();
        let mut rest = index;
        for (i, level) in self.tower.levels[..self.level].iter().enumerate() {
            let _ = i;
            let e = rest % level.degree;
            rest /= level.degree;
            match e {
                0 => {}
                1 => parts.push(level.name.clone()),
                _ => parts.push(format!("{}^{}", level.name, e)),
            }
        }
        parts.join("*")
    }
}

pub fn poly_to_base<B: BaseField>(f: &Poly<TowerField<B>>) -> Result<Poly<B>> {
    let field = f.field();
    let base = field.base().clone();
    f.try_map(&base, |c| {
        field
            .to_base(c)
            .ok_or_else(|| Error::domain("polynomial has coefficients outside the base field"))
    })
}

impl<B: BaseField> Field for TowerField<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Vec<B::Elem> {
        vec![self.tower.base.zero(); self.degree()]
    }

    fn one(&self) -> Vec<B::Elem> {
        self.from_i64(1)
    }

    fn from_i64(&self, n: i64) -> Vec<B::Elem> {
        self.from_base(&self.tower.base.from_i64(n))
    }

    fn is_zero(&self, a: &Vec<B::Elem>) -> bool {
        self.tower.is_zero_slice(a)
    }

    fn is_one(&self, a: &Vec<B::Elem>) -> bool {
        self.tower.base.is_one(&a[0]) && self.tower.is_zero_slice(&a[1..])
    }

    fn add(&self, a: &Vec<B::Elem>, b: &Vec<B::Elem>) -> Vec<B::Elem> {
        let base = &self.tower.base;
        a.iter().zip(b).map(|(x, y)| base.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<B::Elem>, b: &Vec<B::Elem>) -> Vec<B::Elem> {
        let base = &self.tower.base;
        a.iter().zip(b).map(|(x, y)| base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Vec<B::Elem>) -> Vec<B::Elem> {
        let base = &self.tower.base;
        a.iter().map(|x| base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<B::Elem>, b: &Vec<B::Elem>) -> Vec<B::Elem> {
        debug_assert_eq!(a.len(), self.degree());
        debug_assert_eq!(b.len(), self.degree());
        self.tower.mul_at(self.level, a, b)
    }

    fn inv(&self, a: &Vec<B::Elem>) -> Result<Vec<B::Elem>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.level == 0 {
            return Ok(vec![self.tower.base.inv(&a[0])?]);
        }
        let below = TowerField { tower: self.tower.clone(), level: self.level - 1 };
        let d = self.level_degree(self.level);
        let a_poly = Poly::new(below.clone(), self.coords_over(a, self.level - 1));
        let modulus = self.level_modulus(self.level);
        let (g, s, _) = a_poly.xgcd(&modulus)?;
        if !g.is_one() {
            return Err(Error::internal("level modulus is reducible"));
        }
        let mut out = Vec::with_capacity(self.degree());
        for i in 0..d {
            out.extend(s.coeff(i));
        }
        Ok(out)
    }

    fn characteristic(&self) -> u64 {
        self.tower.base.characteristic()
    }

    fn order(&self) -> Option<BigUint> {
        self.tower.base.order().map(|q| q.pow(self.degree() as u32))
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Vec<B::Elem> {
        (0..self.degree()).map(|_| self.tower.base.random_elem(rng)).collect()
    }

    fn format_elem(&self, a: &Vec<B::Elem>) -> String {
        let base = &self.tower.base;
        let mut out = String::new();
        for (idx, c) in a.iter().enumerate().rev() {
            if base.is_zero(c) {
                continue;
            }
            let mono = self.term_monomial(idx);
            let negative = !base.is_atomic(c) && base.is_atomic(&base.neg(c));
            let body = if negative { base.neg(c) } else { c.clone() };
            let coeff = if !mono.is_empty() && base.is_one(&body) {
                String::new()
            } else {
                base.format_elem(&body)
            };
            let term = match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{mono}"),
            };
            let sep = match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(sep);
            out.push_str(&term);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    fn is_atomic(&self, a: &Vec<B::Elem>) -> bool {
        let base = &self.tower.base;
        let nonzero: Vec<_> = a.iter().filter(|x| !base.is_zero(x)).collect();
        match nonzero.as_slice() {
            [] => true,
            [c] => base.is_atomic(c),
            _ => false,
        }
    }
}

/// Adjoins a root of `m` to `k`, checking that `m` is irreducible over `k`.
///
/// The new level sits directly above `k.level()`; any levels of `k`'s tower
/// above it are not carried over.
pub fn adjoin_root<B: BaseField>(
    k: &TowerField<B>,
    m: &Poly<TowerField<B>>,
    name: &str,
) -> Result<TowerField<B>> {
    if m.field() != k {
        return Err(Error::domain("modulus is not defined over the given field"));
    }
    match m.degree() {
        None => return Err(Error::domain("cannot adjoin a root of the zero polynomial")),
        Some(d) if d < 2 => {
            return Err(Error::domain(format!("modulus {m} has degree {d} < 2")));
        }
        _ => {}
    }
    if k.generator_names().iter().any(|n| n == name) {
        return Err(Error::domain(format!("generator name `{name}` already used")));
    }
    let m = m.monic();
    let fac = factor(&m, 0)?;
    if !fac.is_irreducible() {
        let (g, _) = &fac.factors[0];
        return Err(Error::domain(format!("modulus {m} is reducible: it has the factor {g}")));
    }
    Ok(extend_unchecked(k, &m, name))
}

/// Adjoins a root of a polynomial already known to be monic irreducible.
pub(crate) fn extend_unchecked<B: BaseField>(
    k: &TowerField<B>,
    m: &Poly<TowerField<B>>,
    name: &str,
) -> TowerField<B> {
    debug_assert!(m.is_monic());
    let d = m.degree().expect("nonzero modulus");
    let mut levels = k.tower.levels[..k.level].to_vec();
    let modulus = (0..=d).map(|i| m.coeff(i)).collect();
    levels.push(Level { name: name.to_string(), degree: d, modulus });
    let tower = Tower::build(k.tower.base.clone(), levels);
    TowerField { level: k.level + 1, tower }
}

/// `[L : L_down_to]`.
pub fn degree<B: BaseField>(l: &TowerField<B>, down_to: usize) -> Result<usize> {
    if down_to > l.level {
        return Err(Error::domain(format!(
            "level {down_to} is not below level {}",
            l.level
        )));
    }
    Ok(l.tower.dims[l.level] / l.tower.dims[down_to])
}

/// Minimal polynomial of `z` over level `over`, found as the first linear
/// dependency among `1, z, z^2, ...`.
pub fn minimal_polynomial<B: BaseField>(
    l: &TowerField<B>,
    z: &[B::Elem],
    over: usize,
) -> Result<Poly<TowerField<B>>> {
    if z.len() != l.degree() {
        return Err(Error::domain("element does not belong to the given field"));
    }
    let k = l.at_level(over)?;
    let n = degree(l, over)?;
    let z = z.to_vec();
    let mut span = SpanBasis::new(k.clone(), n);
    let mut columns: Vec<Vec<Vec<B::Elem>>> = Vec::new();
    let mut power = l.one();
    for i in 0..=n {
        let v = l.coords_over(&power, over);
        if span.insert(&v) {
            columns.push(v);
            power = l.mul(&power, &z);
            continue;
        }
        let a = Matrix::from_columns(k.clone(), n, &columns);
        let c = a.solve(&v).ok_or_else(|| Error::internal("dependent power not in span"))?;
        let mut coeffs: Vec<Vec<B::Elem>> = c.iter().map(|x| k.neg(x)).collect();
        coeffs.push(k.one());
        debug_assert_eq!(coeffs.len(), i + 1);
        return Ok(Poly::new(k, coeffs));
    }
    Err(Error::internal("no linear dependency among n + 1 powers"))
}

/// Minimal polynomial over the base field.
pub fn minimal_polynomial_over_base<B: BaseField>(l: &TowerField<B>, z: &[B::Elem]) -> Result<Poly<B>> {
    poly_to_base(&minimal_polynomial(l, z, 0)?)
}

/// Subfield of `L` generated over `K` by `gens`: a basis of the smallest
/// subalgebra containing them, which is a field since `L` is.
pub fn generated_subfield_basis<B: BaseField>(
    l: &TowerField<B>,
    gens: &[Vec<B::Elem>],
) -> Result<Vec<Vec<B::Elem>>> {
    for g in gens {
        if g.len() != l.degree() {
            return Err(Error::domain("generator does not belong to the field"));
        }
    }
    let base = l.base().clone();
    let mut span = SpanBasis::new(base, l.degree());
    let mut basis = vec![l.one()];
    span.insert(&basis[0]);
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let p = l.mul(b, g);
                if span.insert(&p) {
                    next.push(p.clone());
                    basis.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(basis)
}

/// One adjunction made while building a splitting field.
#[derive(Clone, Debug)]
pub struct AdjoinStep<B: BaseField> {
    pub level: usize,
    pub name: String,
    /// The irreducible factor whose root was adjoined, over the level below.
    pub factor: Poly<TowerField<B>>,
    pub total_degree: usize,
}

#[derive(Clone, Debug)]
pub struct SplittingField<B: BaseField> {
    pub field: TowerField<B>,
    /// Roots with multiplicity, as elements of `field`.
    pub roots: Vec<Vec<B::Elem>>,
    pub transcript: Vec<AdjoinStep<B>>,
}

fn fresh_name<B: BaseField>(k: &TowerField<B>) -> String {
    let used = k.generator_names();
    let letters = ('a'..='z').filter(|c| *c != 'x').map(String::from);
    letters
        .chain((1..).map(|i| format!("g{i}")))
        .find(|n| !used.contains(n))
        .expect("infinite name supply")
}

/// Builds a splitting field of `f` over its coefficient field.
///
/// Keeps the irreducible factorization of `f` over the current top level.
/// Each round adjoins a root of the lowest-degree nonlinear factor (ties by
/// canonical order), splits off the new linear factor and refactors what is
/// left over the new level.
pub fn splitting_field<B: BaseField>(f: &Poly<TowerField<B>>, seed: u64) -> Result<SplittingField<B>> {
    match f.degree() {
        None => return Err(Error::domain("splitting field of the zero polynomial")),
        Some(0) => return Err(Error::domain("splitting field of a constant polynomial")),
        _ => {}
    }
    let mut current = f.field().clone();
    let mut roots: Vec<Vec<B::Elem>> = Vec::new();
    let mut pending: Vec<(Poly<TowerField<B>>, usize)> = Vec::new();
    let mut transcript = Vec::new();

    let absorb = |fac: crate::factor::Factorization<TowerField<B>>,
                  outer: usize,
                  roots: &mut Vec<Vec<B::Elem>>,
                  pending: &mut Vec<(Poly<TowerField<B>>, usize)>| {
        for (g, m) in fac.factors {
            if g.degree() == Some(1) {
                let r = g.field().neg(&g.coeff(0));
                roots.extend(std::iter::repeat_n(r, m * outer));
            } else {
                pending.push((g, m * outer));
            }
        }
    };
    absorb(factor(f, seed)?, 1, &mut roots, &mut pending);

    while !pending.is_empty() {
        pending.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        let (g, mult) = pending.remove(0);
        let name = fresh_name(&current);
        let next = extend_unchecked(&current, &g.monic(), &name);
        let beta = next.generator(next.level());
        transcript.push(AdjoinStep {
            level: next.level(),
            name,
            factor: g.clone(),
            total_degree: next.degree(),
        });

        roots = roots.iter().map(|r| next.embed(r)).collect();
        let cofactor = next.lift_poly(&g).exact_div(&Poly::linear(next.clone(), &beta))?;
        roots.extend(std::iter::repeat_n(beta, mult));

        let mut work = vec![(cofactor, mult)];
        work.extend(pending.drain(..).map(|(h, m)| (next.lift_poly(&h), m)));
        for (h, m) in work {
            match h.degree() {
                Some(0) => {}
                Some(1) => {
                    let h = h.monic();
                    let r = next.neg(&h.coeff(0));
                    roots.extend(std::iter::repeat_n(r, m));
                }
                _ => absorb(factor(&h, seed)?, m, &mut roots, &mut pending),
            }
        }
        current = next;
    }
    Ok(SplittingField { field: current, roots, transcript })
}

/// A one-level presentation `K(theta)` of a tower level, with the linear
/// isomorphism between the two coordinate systems.
#[derive(Clone, Debug)]
pub struct SimpleForm<B: BaseField> {
    /// The field `K[t]/(mu)`. Shares the source tower when it already has at
    /// most one level.
    pub simple: TowerField<B>,
    /// The primitive element theta in source coordinates.
    pub primitive: Vec<B::Elem>,
    pub minimal_polynomial: Poly<B>,
    /// Source coordinates to `theta`-power coordinates.
    pub to_simple: Matrix<B>,
    /// `theta`-power coordinates to source coordinates.
    pub from_simple: Matrix<B>,
    /// Images of the source generators `g_1, ..., g_k` in the simple field.
    pub generator_images: Vec<Vec<B::Elem>>,
}

impl<B: BaseField> SimpleForm<B> {
    pub fn forward(&self, y: &[B::Elem]) -> Vec<B::Elem> {
        self.to_simple.mul_vec(y)
    }

    pub fn backward(&self, w: &[B::Elem]) -> Vec<B::Elem> {
        self.from_simple.mul_vec(w)
    }
}

/// Rewrites `L` as a simple extension `K(theta)`.
///
/// Candidates are `g_k + c_{k-1} g_{k-1} + ... + c_1 g_1` with multipliers
/// drawn in max-norm order from `0, 1, -1, 2, -2, ...`; the first whose
/// minimal polynomial has degree `[L:K]` wins. Finite fields fall back to
/// a coordinate search when no such combination exists. Results are cached
/// on the tower.
pub fn collapse_to_simple<B: BaseField>(l: &TowerField<B>) -> Result<Arc<SimpleForm<B>>> {
    if let Some(sf) = l.tower.simple_forms[l.level].get() {
        return Ok(sf.clone());
    }
    let sf = Arc::new(compute_simple_form(l)?);
    let _ = l.tower.simple_forms[l.level].set(sf.clone());
    Ok(sf)
}

fn compute_simple_form<B: BaseField>(l: &TowerField<B>) -> Result<SimpleForm<B>> {
    let base = l.base().clone();
    let n = l.degree();
    let identity = Matrix::identity(base.clone(), n);
    if l.level == 0 {
        return Ok(SimpleForm {
            simple: l.clone(),
            primitive: l.zero(),
            minimal_polynomial: Poly::x(base),
            to_simple: identity.clone(),
            from_simple: identity,
            generator_images: Vec::new(),
        });
    }
    if l.level == 1 {
        let mu = poly_to_base(&l.level_modulus(1))?;
        let g = l.generator(1);
        return Ok(SimpleForm {
            simple: l.clone(),
            primitive: g.clone(),
            minimal_polynomial: mu,
            to_simple: identity.clone(),
            from_simple: identity,
            generator_images: vec![g],
        });
    }

    let (theta, mu) = find_primitive(l)?;
    let mut powers = Vec::with_capacity(n);
    let mut p = l.one();
    for _ in 0..n {
        powers.push(p.clone());
        p = l.mul(&p, &theta);
    }
    let from_simple = Matrix::from_columns(base.clone(), n, &powers);
    let to_simple = from_simple.inverse()?;
    let simple = extend_unchecked(
        &TowerField::base_field(base.clone()),
        &TowerField::base_field(base.clone()).lift_base_poly(&mu),
        "t",
    );
    let generator_images: Vec<_> = l.generators().iter().map(|g| to_simple.mul_vec(g)).collect();

    // The map sends each old generator to a root of its (mapped) modulus.
    for i in 1..=l.level {
        let m = l.level_modulus(i);
        let mapped = m.map(&simple, |c| to_simple.mul_vec(&l.embed(c)));
        if !simple.is_zero(&mapped.evaluate(&generator_images[i - 1])) {
            return Err(Error::internal("primitive element map does not respect a level modulus"));
        }
    }
    Ok(SimpleForm {
        simple,
        primitive: theta,
        minimal_polynomial: mu,
        to_simple,
        from_simple,
        generator_images,
    })
}

fn find_primitive<B: BaseField>(l: &TowerField<B>) -> Result<(Vec<B::Elem>, Poly<B>)> {
    let n = l.degree();
    let values = l.base().search_values(DEFAULT_SEARCH_BOUND);
    let gens = l.generators();
    let top = gens.last().expect("at least two levels").clone();
    let lower = &gens[..gens.len() - 1];
    let mut search = MaxNormSearch::new(lower.len(), values.len());
    while let Some(idx) = search.next_checked()? {
        let mut z = top.clone();
        for (g, &i) in lower.iter().rev().zip(&idx) {
            z = l.add(&z, &l.mul(&l.from_base(&values[i]), g));
        }
        let mu = minimal_polynomial_over_base(l, &z)?;
        if mu.degree() == Some(n) {
            return Ok((z, mu));
        }
    }
    if l.is_finite() {
        let mut search = MaxNormSearch::new(n, values.len());
        while let Some(idx) = search.next_checked()? {
            let z: Vec<B::Elem> = idx.iter().map(|&i| values[i].clone()).collect();
            let mu = minimal_polynomial_over_base(l, &z)?;
            if mu.degree() == Some(n) {
                return Ok((z, mu));
            }
        }
    }
    Err(Error::capability(format!(
        "no primitive element among multipliers of norm <= {DEFAULT_SEARCH_BOUND}"
    )))
}

/// JSON form of a tower: the base spec and each level's modulus, with every
/// coefficient written as its flat coordinate list of base scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub base: String,
    pub levels: Vec<LevelSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub name: String,
    pub modulus: Vec<Vec<String>>,
}

impl<B: BaseField> TowerField<B> {
    pub fn to_spec(&self) -> TowerSpec {
        let base = &self.tower.base;
        let levels = self.tower.levels[..self.level]
            .iter()
            .map(|l| LevelSpec {
                name: l.name.clone(),
                modulus: l
                    .modulus
                    .iter()
                    .map(|c| c.iter().map(|x| base.format_elem(x)).collect())
                    .collect(),
            })
            .collect();
        TowerSpec { base: base.spec(), levels }
    }

    /// Rebuilds a tower, re-checking every modulus for irreducibility.
    pub fn from_spec(base: B, spec: &TowerSpec) -> Result<Self> {
        if spec.base != base.spec() {
            return Err(Error::domain(format!(
                "tower base `{}` does not match `{}`",
                spec.base,
                base.spec()
            )));
        }
        let mut field = TowerField::base_field(base.clone());
        for (i, level) in spec.levels.iter().enumerate() {
            let coeffs = level
                .modulus
                .iter()
                .map(|c| {
                    if c.len() != field.degree() {
                        return Err(Error::domain(format!(
                            "level {}: coefficient has {} coordinates, expected {}",
                            i + 1,
                            c.len(),
                            field.degree()
                        )));
                    }
                    c.iter().map(|s| base.parse_scalar(s)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Poly::new(field.clone(), coeffs);
            field = adjoin_root(&field, &m, &level.name)?;
        }
        Ok(field)
    }
}
