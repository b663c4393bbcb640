//! The field abstraction every algorithm is written against, plus the two
//! prime fields of characteristic zero and `p`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use crate::arith::{add_mod, inv_mod, is_prime_u64, mul_mod, sub_mod, Integer, Rational};
use crate::error::{Error, Result};
use crate::extension::TowerField;
use crate::factor::{self, Factorable, Factorization};
use crate::poly::Poly;

/// A field given by runtime data, with elements as plain values.
///
/// The field value carries whatever context the arithmetic needs (a modulus,
/// a tower of extensions), so elements stay small and comparable.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// 0 for fields of characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<BigUint>;
    /// A random element; infinite fields draw from a small integer range.
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Whether `format_elem(a)` can be used as a coefficient without brackets.
    fn is_atomic(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(exp))
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }
}

/// A field that can sit at the bottom of an extension tower: `Q` or `F_p`.
pub trait BaseField: Field + Factorable {
    /// The textual spec, `"Q"` or `"F<p>"`.
    fn spec(&self) -> String;

    /// Image of a rational number; fails over `F_p` when `p` divides the
    /// denominator.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &Rational) -> Result<Self::Elem>;

    fn parse_scalar(&self, text: &str) -> Result<Self::Elem> {
        let r = parse_rational(text)?;
        self.from_rational(&r)
    }

    /// The multiplier sequence `0, 1, -1, 2, -2, ...` up to `bound`, with
    /// repeated residues dropped.
    fn search_values(&self, bound: u32) -> Vec<Self::Elem> {
        let mut out = vec![self.zero()];
        for k in 1..=bound as i64 {
            for v in [k, -k] {
                let e = self.from_i64(v);
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    fn factor_in_tower(
        f: &Poly<TowerField<Self>>,
        seed: u64,
    ) -> Result<Factorization<TowerField<Self>>>;
}

pub(crate) fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::domain(format!("malformed scalar `{text}`"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: Integer = n.parse().map_err(|_| bad())?;
    let d: Integer = d.parse().map_err(|_| bad())?;
    crate::arith::rat_normalize(n, d)
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<BigUint> {
        None
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Rational {
        self.from_i64(rng.gen_range(-9..=9))
    }

    fn format_elem(&self, a: &Rational) -> String {
        a.to_string()
    }

    fn is_atomic(&self, a: &Rational) -> bool {
        !a.is_negative()
    }
}

impl BaseField for Rationals {
    fn spec(&self) -> String {
        "Q".to_string()
    }

    fn from_rational(&self, r: &Rational) -> Result<Rational> {
        Ok(r.clone())
    }

    fn factor_in_tower(
        f: &Poly<TowerField<Self>>,
        seed: u64,
    ) -> Result<Factorization<TowerField<Self>>> {
        factor::factor_over_extension(f, seed)
    }
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::domain(format!("F{p}: {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        self.from_i64(n)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.p)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        inv_mod(*a, self.p).ok_or(Error::DivisionByZero)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn is_atomic(&self, _a: &u64) -> bool {
        true
    }
}

impl BaseField for PrimeField {
    fn spec(&self) -> String {
        format!("F{}", self.p)
    }

    fn from_rational(&self, r: &Rational) -> Result<u64> {
        let p = Integer::from(self.p);
        let reduce = |n: &Integer| -> u64 {
            let m = ((n % &p) + &p) % &p;
            m.to_u64().expect("residue fits in u64")
        };
        let den = reduce(r.denom());
        if den == 0 {
            return Err(Error::domain(format!(
                "coefficient {r} is not defined in F{} (denominator divisible by {})",
                self.p, self.p
            )));
        }
        let num = reduce(r.numer());
        Ok(self.mul(&num, &self.inv(&den)?))
    }

    fn factor_in_tower(
        f: &Poly<TowerField<Self>>,
        seed: u64,
    ) -> Result<Factorization<TowerField<Self>>> {
        factor::factor_over_prime_field(f, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_guards_modulus() {
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(0).is_err());
    }

    #[test]
    fn scalar_parsing() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.parse_scalar("-1").unwrap(), 6);
        assert_eq!(f7.parse_scalar("1/2").unwrap(), 4);
        assert!(f7.parse_scalar("1/7").is_err());
        assert_eq!(Rationals.parse_scalar("-6/4").unwrap(), parse_rational("-3/2").unwrap());
        assert!(Rationals.parse_scalar("1/0").is_err());
        assert!(Rationals.parse_scalar("x").is_err());
    }

    #[test]
    fn search_values_drop_repeats() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.search_values(20), vec![0, 1]);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.search_values(20), vec![0, 1, 4, 2, 3]);
        assert_eq!(Rationals.search_values(2).len(), 5);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = PrimeField::new(13).unwrap();
        let mut acc = 1;
        for e in 0..30u64 {
            assert_eq!(f.pow_u64(&5, e), acc);
            acc = f.mul(&acc, &5);
        }
    }
}
