//! Factorization into monic irreducibles over `F_p`, `Q`, and towers over
//! either.

use std::fmt;

use crate::error::{Error, Result};
use crate::extension::TowerField;
use crate::field::{BaseField, Field, PrimeField, Rationals};
use crate::poly::Poly;

mod extension;
mod finite;
mod intpoly;
mod kronecker;
mod zassenhaus;

pub use extension::factor_over_extension;
pub use finite::factor_over_prime_field;

/// `unit * prod(factor^multiplicity)`, factors monic, irreducible and
/// pairwise distinct, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub(crate) fn from_parts(unit: F::Elem, mut factors: Vec<(Poly<F>, usize)>) -> Self {
        factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        let mut merged: Vec<(Poly<F>, usize)> = Vec::with_capacity(factors.len());
        for (g, m) in factors {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        Factorization { unit, factors: merged }
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &F) -> Poly<F> {
        let mut acc = Poly::constant(field.clone(), self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m as u32);
        }
        acc
    }

    /// Exactly one factor, with multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Roots in the coefficient field, from the linear factors.
    pub fn roots(&self) -> Vec<(F::Elem, usize)> {
        self.factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, m)| (g.field().neg(&g.coeff(0)), *m))
            .collect()
    }
}

impl<F: Field> fmt::Display for Factorization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.factors.first() {
            Some((g, _)) => g.field(),
            None => return write!(f, "{:?}", self.unit),
        };
        let mut parts = Vec::new();
        if !field.is_one(&self.unit) {
            parts.push(field.format_elem(&self.unit));
        }
        for (g, m) in &self.factors {
            let base = format!("({g})");
            parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Fields whose polynomials this crate can factor completely.
pub trait Factorable: Field {
    fn factor_poly(f: &Poly<Self>, seed: u64) -> Result<Factorization<Self>>;
}

/// Factors `f` over its coefficient field. `seed` drives the randomized
/// splitting over finite fields; the result does not depend on it.
pub fn factor<F: Factorable>(f: &Poly<F>, seed: u64) -> Result<Factorization<F>> {
    F::factor_poly(f, seed)
}

pub fn is_irreducible<F: Factorable>(f: &Poly<F>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::domain("irreducibility of the zero polynomial"));
    }
    Ok(factor(f, 0)?.is_irreducible())
}

impl Factorable for Rationals {
    fn factor_poly(f: &Poly<Self>, _seed: u64) -> Result<Factorization<Self>> {
        factor_over_rationals(f)
    }
}

impl Factorable for PrimeField {
    fn factor_poly(f: &Poly<Self>, seed: u64) -> Result<Factorization<Self>> {
        factor_over_prime_field(f, seed)
    }
}

impl<B: BaseField> Factorable for TowerField<B> {
    fn factor_poly(f: &Poly<Self>, seed: u64) -> Result<Factorization<Self>> {
        B::factor_in_tower(f, seed)
    }
}

/// Algorithm used for the squarefree parts of a rational polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalMethod {
    /// Factor modulo a prime, Hensel lift, recombine.
    Zassenhaus,
    /// Rational roots, then interpolation through divisors of values.
    Kronecker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalFactorOptions {
    pub method: RationalMethod,
    /// Inputs of larger degree are refused with a capability error.
    pub degree_bound: usize,
}

impl Default for RationalFactorOptions {
    fn default() -> Self {
        RationalFactorOptions { method: RationalMethod::Zassenhaus, degree_bound: 64 }
    }
}

impl RationalFactorOptions {
    pub fn kronecker() -> Self {
        RationalFactorOptions { method: RationalMethod::Kronecker, degree_bound: 10 }
    }
}

pub fn factor_over_rationals(f: &Poly<Rationals>) -> Result<Factorization<Rationals>> {
    factor_over_rationals_with(f, &RationalFactorOptions::default())
}

pub fn factor_over_rationals_with(
    f: &Poly<Rationals>,
    options: &RationalFactorOptions,
) -> Result<Factorization<Rationals>> {
    let deg = match f.degree() {
        None => return Err(Error::domain("cannot factor the zero polynomial")),
        Some(d) => d,
    };
    if deg > options.degree_bound {
        return Err(Error::capability(format!(
            "degree {deg} exceeds the rational factorization bound {}",
            options.degree_bound
        )));
    }
    let unit = f.lc().expect("nonzero polynomial").clone();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_char0(&f.monic())? {
        let int = intpoly::primitive_from_rational(&part);
        let pieces = match options.method {
            RationalMethod::Zassenhaus => zassenhaus::factor_squarefree(&int)?,
            RationalMethod::Kronecker => kronecker::factor_squarefree(&int)?,
        };
        for g in pieces {
            factors.push((intpoly::to_monic_rational(&g), mult));
        }
    }
    Ok(Factorization::from_parts(unit, factors))
}

/// Yun's squarefree decomposition of a monic polynomial over a field of
/// characteristic zero: pairs `(a_i, i)` with `f = prod(a_i^i)`, each `a_i`
/// squarefree and nonconstant.
pub fn squarefree_char0<F: Field>(f: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    debug_assert_eq!(f.field().characteristic(), 0);
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let df = f.derivative();
    let b = f.gcd(&df)?;
    let mut c = f.exact_div(&b)?;
    let mut d = &df.exact_div(&b)? - &c.derivative();
    let mut i = 1;
    while !c.is_constant() {
        let a = c.gcd(&d)?;
        c = c.exact_div(&a)?;
        d = &d.exact_div(&a)? - &c.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, coeffs)
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x - 1) (x + 2)^2 (x^2 + 1)^3
        let f = &(&q(&[-1, 1]) * &q(&[2, 1]).pow(2)) * &q(&[1, 0, 1]).pow(3);
        let parts = squarefree_char0(&f).unwrap();
        assert_eq!(parts, vec![(q(&[-1, 1]), 1), (q(&[2, 1]), 2), (q(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn degree_bound_is_a_capability_error() {
        let f = Poly::monomial(Rationals, Rationals.one(), 11);
        let err = factor_over_rationals_with(&f, &RationalFactorOptions::kronecker()).unwrap_err();
        assert!(matches!(err, Error::Capability(_)));
    }

    #[test]
    fn display_lists_factors() {
        let fac = factor_over_rationals(&q(&[-2, 0, 2])).unwrap();
        assert_eq!(fac.to_string(), "2 * (x - 1) * (x + 1)");
    }
}
