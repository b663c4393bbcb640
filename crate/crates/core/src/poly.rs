//! Dense univariate polynomials over a runtime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial stored as ascending coefficients.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient
/// is nonzero. Every polynomial carries the field its coefficients live in.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: F) -> Self {
        Self::monomial(field.clone(), field.one(), 1)
    }

    pub fn monomial(field: F, c: F::Elem, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: F, a: &F::Elem) -> Self {
        let c = field.neg(a);
        let one = field.one();
        Poly::new(field, vec![c, one])
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::domain("polynomials over different fields"))
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    fn sub_impl(&self, other: &Self) -> Self {
        self.add_impl(&other.neg_impl())
    }

    fn neg_impl(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Poly::one(self.field.clone());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q*g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        self.same_field(g)?;
        let dg = g.degree().ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let f = &self.field;
        let lc_inv = f.inv(g.lc().expect("nonzero"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dg];
            if f.is_zero(top) {
                continue;
            }
            let q = f.mul(top, &lc_inv);
            for (j, gc) in g.coeffs.iter().enumerate() {
                if !f.is_zero(gc) {
                    rem[k + j] = f.sub(&rem[k + j], &f.mul(&q, gc));
                }
            }
            quot[k] = q;
        }
        rem.truncate(dg);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divrem(g)?.1)
    }

    /// Quotient of a division that must be exact.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        let (q, r) = self.divrem(g)?;
        if !r.is_zero() {
            return Err(Error::internal("expected exact polynomial division"));
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> Result<bool> {
        Ok(f.rem(self)?.is_zero())
    }

    /// Monic gcd by Euclid's algorithm; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, g: &Self) -> Result<Self> {
        self.same_field(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(Error::domain("gcd of two zero polynomials"));
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Extended gcd: `(d, s, t)` with `s*self + t*g = d`, `d` monic.
    pub fn xgcd(&self, g: &Self) -> Result<(Self, Self, Self)> {
        self.same_field(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(Error::domain("gcd of two zero polynomials"));
        }
        let field = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(field.clone()), Poly::zero(field.clone()));
        let (mut t0, mut t1) = (Poly::zero(field.clone()), Poly::one(field.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc_inv = field.inv(r0.lc().expect("nonzero"))?;
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, a: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(self.field.clone(), c.clone());
        }
        acc
    }

    /// `self^exp mod m`.
    pub fn pow_mod(&self, exp: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Poly::one(self.field.clone()).rem(m)?;
        for i in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(m)?;
            if exp.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// True iff `gcd(f, f')` is constant. A nonconstant `f` with `f' = 0`
    /// (possible in characteristic `p`) is never squarefree.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::domain("squarefree test of the zero polynomial"));
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_constant())
    }

    /// `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of `f`.
    pub fn resultant(&self, g: &Self) -> Result<F::Elem> {
        self.same_field(g)?;
        if self.is_zero() || g.is_zero() {
            return Err(Error::domain("resultant with the zero polynomial"));
        }
        let f = &self.field;
        let mut acc = f.one();
        let (mut a, mut b) = (self.clone(), g.clone());
        loop {
            let m = a.degree().expect("nonzero");
            let n = b.degree().expect("nonzero");
            let lc_a = a.lc().expect("nonzero").clone();
            if m == 0 {
                return Ok(f.mul(&acc, &f.pow_u64(&lc_a, n as u64)));
            }
            let r = b.rem(&a)?;
            let Some(k) = r.degree() else {
                return Ok(f.zero());
            };
            acc = f.mul(&acc, &f.pow_u64(&lc_a, (n - k) as u64));
            if (m * k) % 2 == 1 {
                acc = f.neg(&acc);
            }
            b = a;
            a = r;
        }
    }

    /// Reinterprets the coefficients in another field.
    pub fn map<G: Field>(&self, target: &G, mut f: impl FnMut(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(&mut f).collect())
    }

    pub fn try_map<G: Field>(
        &self,
        target: &G,
        mut f: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Poly<G>> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target.clone(), coeffs))
    }

    /// Key for the canonical factor order: degree first, then coefficients
    /// from the constant term up.
    pub(crate) fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let (negative, body) = if f.is_atomic(&f.neg(c)) && !f.is_atomic(c) {
                (true, f.neg(c))
            } else {
                (false, c.clone())
            };
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coeff = if i > 0 && f.is_one(&body) {
                String::new()
            } else if f.is_atomic(&body) {
                f.format_elem(&body)
            } else {
                format!("({})", f.format_elem(&body))
            };
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let joined = match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{mono}"),
            };
            write!(out, "{sep}{joined}")?;
            first = false;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a, F: Field> $tr<&'a Poly<F>> for &'a Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &'a Poly<F>) -> Poly<F> {
                debug_assert!(self.field == rhs.field, "polynomials over different fields");
                self.$imp(rhs)
            }
        }

        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.neg_impl()
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.neg_impl()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::field::{PrimeField, Rationals};

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, c)
    }

    fn fp(p: u64, c: &[i64]) -> Poly<PrimeField> {
        Poly::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn divrem_examples() {
        let (qt, r) = q(&[-1, 0, 1]).divrem(&q(&[-1, 1])).unwrap();
        assert_eq!((qt, r), (q(&[1, 1]), q(&[])));
        let (qt, r) = q(&[0, 1]).divrem(&q(&[0, 0, 1])).unwrap();
        assert_eq!((qt, r), (q(&[]), q(&[0, 1])));
        let (qt, r) = fp(2, &[1, 0, 1]).divrem(&fp(2, &[1, 1])).unwrap();
        assert_eq!((qt, r), (fp(2, &[1, 1]), fp(2, &[])));
    }

    #[test]
    fn divrem_errors() {
        assert!(matches!(q(&[1, 1]).divrem(&q(&[])), Err(Error::Domain(_))));
        let a = fp(2, &[1, 1]);
        let b = fp(3, &[1, 1]);
        assert!(matches!(a.divrem(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn gcd_examples() {
        let f = q(&[2, 0, 4]);
        assert_eq!(f.gcd(&q(&[])).unwrap(), f.monic());
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[1, -2, 1])).unwrap(), q(&[-1, 1]));
        assert_eq!(fp(2, &[1, 0, 1]).gcd(&fp(2, &[1, 1])).unwrap(), fp(2, &[1, 1]));
        assert!(q(&[]).gcd(&q(&[])).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let a = q(&[-2, 0, 1]);
        let b = q(&[1, 1, 1]);
        let (d, s, t) = a.xgcd(&b).unwrap();
        assert!(d.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), d);
    }

    #[test]
    fn squarefree_examples() {
        assert!(!q(&[1, -2, 1]).is_squarefree().unwrap());
        assert!(q(&[-2, 0, 1]).is_squarefree().unwrap());
        assert!(q(&[1, 0, 0, 0, 1]).is_squarefree().unwrap());
        // x^3 - 1 over F_3 has zero derivative.
        assert!(!fp(3, &[2, 0, 0, 1]).is_squarefree().unwrap());
        assert!(q(&[]).is_squarefree().is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(q(&[1, 0, 1]).evaluate(&rat(2)), rat(5));
        assert_eq!(q(&[7, 3, 1]).evaluate(&rat(0)), rat(7));
    }

    #[test]
    fn resultant_examples() {
        // (x - 3, x - 5) -> 3 - 5
        assert_eq!(q(&[-3, 1]).resultant(&q(&[-5, 1])).unwrap(), rat(-2));
        assert_eq!(q(&[1, 0, 1]).resultant(&q(&[0, 2])).unwrap(), rat(4));
        assert_eq!(q(&[5, 1, 3, 1]).resultant(&q(&[1])).unwrap(), rat(1));
        assert_eq!(q(&[-1, 0, 1]).resultant(&q(&[1, 1])).unwrap(), rat(0));
        assert!(q(&[1]).resultant(&q(&[])).is_err());
    }

    #[test]
    fn resultant_against_product_of_values() {
        // f = (x-1)(x-2)(x+3), g = 2x^2 + x - 4: Res = prod g(root).
        let f = &(&q(&[-1, 1]) * &q(&[-2, 1])) * &q(&[3, 1]);
        let g = q(&[-4, 1, 2]);
        let expected: Rational = [1, 2, -3].iter().map(|&r| g.evaluate(&rat(r))).product();
        assert_eq!(f.resultant(&g).unwrap(), expected);
        // Swapping the arguments contributes (-1)^(3*2) = 1.
        let swapped = g.resultant(&f).unwrap();
        assert_eq!(swapped, expected);
    }

    #[test]
    fn display_round_trips_visually() {
        assert_eq!(q(&[-2, 0, 1]).to_string(), "x^2 - 2");
        let half = Poly::new(Rationals, vec![rat(3), Rational::new(1.into(), 2.into())]);
        assert_eq!(half.to_string(), "1/2*x + 3");
        assert_eq!(q(&[0, -1]).to_string(), "-x");
        assert_eq!(fp(2, &[1, 1, 1]).to_string(), "x^2 + x + 1");
        assert_eq!(q(&[]).to_string(), "0");
    }

    #[test]
    fn compose_and_pow_mod() {
        let f = q(&[-2, 0, 1]);
        let shifted = f.compose(&q(&[1, 1]));
        assert_eq!(shifted, q(&[-1, 2, 1]));
        let m = q(&[1, 0, 1]);
        let x = q(&[0, 1]);
        assert_eq!(x.pow_mod(&BigUint::from(2u32), &m).unwrap(), q(&[-1]));
        assert_eq!(x.pow_mod(&BigUint::from(4u32), &m).unwrap(), q(&[1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(-6i64..6, 0..max_len)
        }

        /// Root multiplicities of `f` over `F_p` by brute force, and the
        /// degree left after stripping every root.
        fn brute_squarefree(p: u64, c: &[i64]) -> Option<bool> {
            let field = PrimeField::new(p).unwrap();
            let f = Poly::from_i64s(field, c);
            if f.is_zero() {
                return None;
            }
            // Squarefree iff no irreducible factor repeats; enumerate monic
            // candidates of degree <= deg/2 and test g^2 | f.
            let n = f.degree().unwrap();
            for d in 1..=n / 2 {
                let count = p.pow(d as u32);
                for idx in 0..count {
                    let mut cs = Vec::new();
                    let mut k = idx;
                    for _ in 0..d {
                        cs.push((k % p) as i64);
                        k /= p;
                    }
                    cs.push(1);
                    let g = Poly::from_i64s(field, &cs);
                    if (&g * &g).divides(&f).unwrap() {
                        return Some(false);
                    }
                }
            }
            Some(true)
        }

        proptest! {
            #[test]
            fn divrem_round_trip(a in coeffs(8), b in coeffs(5)) {
                let f = q(&a);
                let g = q(&b);
                prop_assume!(!g.is_zero());
                let (qt, r) = f.divrem(&g).unwrap();
                prop_assert_eq!(&(&qt * &g) + &r, f);
                prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
            }

            #[test]
            fn gcd_divides_both(a in coeffs(6), b in coeffs(6), c in coeffs(3)) {
                let common = q(&c);
                let f = &q(&a) * &common;
                let g = &q(&b) * &common;
                prop_assume!(!(f.is_zero() && g.is_zero()));
                let d = f.gcd(&g).unwrap();
                prop_assert!(d.is_monic());
                prop_assert!(d.divides(&f).unwrap());
                prop_assert!(d.divides(&g).unwrap());
                if !common.is_zero() {
                    prop_assert!(common.monic().divides(&d).unwrap() || f.is_zero() && g.is_zero());
                }
            }

            #[test]
            fn square_is_never_squarefree(a in coeffs(5)) {
                let f = q(&a);
                prop_assume!(!f.is_constant());
                prop_assert!(!(&f * &f).is_squarefree().unwrap());
            }

            #[test]
            fn squarefree_matches_brute_force(p_idx in 0usize..6, c in prop::collection::vec(0i64..13, 1..8)) {
                let p = [2u64, 3, 5, 7, 11, 13][p_idx];
                let f = fp(p, &c);
                prop_assume!(!f.is_zero());
                prop_assert_eq!(Some(f.is_squarefree().unwrap()), brute_squarefree(p, &c));
            }

            #[test]
            fn resultant_vanishes_iff_common_factor(a in coeffs(5), b in coeffs(5)) {
                let f = q(&a);
                let g = q(&b);
                prop_assume!(!f.is_zero() && !g.is_zero());
                let res = f.resultant(&g).unwrap();
                let shared = !f.gcd(&g).unwrap().is_constant();
                prop_assert_eq!(res == rat(0), shared);
            }

            #[test]
            fn resultant_vanishes_iff_common_factor_mod_p(a in prop::collection::vec(0i64..5, 1..6), b in prop::collection::vec(0i64..5, 1..6)) {
                let f = fp(5, &a);
                let g = fp(5, &b);
                prop_assume!(!f.is_zero() && !g.is_zero());
                let res = f.resultant(&g).unwrap();
                prop_assert_eq!(res == 0, !f.gcd(&g).unwrap().is_constant());
            }
        }
    }
}
