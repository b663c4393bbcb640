//! Exact scalars: unbounded integers, reduced rationals and residues modulo a
//! prime.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; a
//! `BigRational` is reduced with a positive denominator after every
//! operation, which is the canonical form the rest of the crate relies on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Builds `n/d` in lowest terms with a positive denominator.
pub fn rat_normalize(n: Integer, d: Integer) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::domain("rational with zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// An element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeScalar {
    value: u64,
    modulus: u64,
}

impl PrimeScalar {
    /// Reduces `value` modulo `modulus`; the modulus must be prime.
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if !is_prime_u64(modulus) {
            return Err(Error::domain(format!("modulus {modulus} is not prime")));
        }
        Ok(Self::reduced(value.rem_euclid(modulus as i64) as u64, modulus))
    }

    pub(crate) fn reduced(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        PrimeScalar { value, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::reduced(add_mod(self.value, other.value, self.modulus), self.modulus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::reduced(sub_mod(self.value, other.value, self.modulus), self.modulus)
    }

    pub fn neg(&self) -> Self {
        Self::reduced(sub_mod(0, self.value, self.modulus), self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::reduced(mul_mod(self.value, other.value, self.modulus), self.modulus)
    }
}

impl fmt::Display for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Multiplicative inverse in `F_p`.
pub fn ff_inverse(a: PrimeScalar) -> Result<PrimeScalar> {
    let inv = inv_mod(a.value, a.modulus).ok_or(Error::DivisionByZero)?;
    Ok(PrimeScalar::reduced(inv, a.modulus))
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm; `None` when
/// `a` is not a unit.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases, which is deterministic for
/// every `n < 2^64`.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of a non-negative integer.
///
/// Exact below `2^64`. Larger inputs run the same twelve-base Miller-Rabin
/// rounds, which is a probable-prime test; nothing in this crate needs
/// moduli that large.
pub fn is_prime(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = Integer::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &WITNESSES {
        let mut x = Integer::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Extended gcd on big integers: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub(crate) fn big_xgcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    fn brute_inverse(a: u64, p: u64) -> u64 {
        (1..p).find(|&b| (a * b) % p == 1).unwrap()
    }

    #[test]
    fn normalize_reduces_and_fixes_sign() {
        assert_eq!(rat_normalize(int(2), int(4)).unwrap(), Rational::new(int(1), int(2)));
        let r = rat_normalize(int(-3), int(-6)).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (int(1), int(2)));
        let z = rat_normalize(int(0), int(5)).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (int(0), int(1)));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert!(matches!(rat_normalize(int(1), int(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_examples_match_brute_force() {
        let three = PrimeScalar::new(3, 7).unwrap();
        assert_eq!(ff_inverse(three).unwrap().value(), brute_inverse(3, 7));
        assert_eq!(ff_inverse(three).unwrap().value(), 5);
        let six = PrimeScalar::new(6, 7).unwrap();
        assert_eq!(ff_inverse(six).unwrap().value(), 6);
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            let one = PrimeScalar::new(1, p).unwrap();
            assert_eq!(ff_inverse(one).unwrap().value(), 1);
        }
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let zero = PrimeScalar::new(0, 11).unwrap();
        assert_eq!(ff_inverse(zero), Err(Error::DivisionByZero));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(PrimeScalar::new(1, 91).is_err());
        assert!(PrimeScalar::new(1, 1).is_err());
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&int(7)));
        assert!(!is_prime(&int(1)));
        assert!(!is_prime(&int(91)));
        assert!(!is_prime(&int(0)));
        assert!(is_prime(&int(2)));
        // 2^61 - 1 is a Mersenne prime; 2^64 + 13 is prime as well.
        assert!(is_prime(&int((1i64 << 61) - 1)));
        assert!(is_prime(&((Integer::one() << 64u32) + 13)));
        assert!(!is_prime(&((Integer::one() << 64u32) + 1)));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn xgcd_identity() {
        let (g, s, t) = big_xgcd(&int(240), &int(46));
        assert_eq!(g, int(2));
        assert_eq!(s * int(240) + t * int(46), int(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn normalize_additive_inverse(n in -10_000i64..10_000, d in 1i64..10_000, flip in any::<bool>()) {
                let d = if flip { -d } else { d };
                let a = rat_normalize(int(n), int(d)).unwrap();
                let b = rat_normalize(int(-n), int(d)).unwrap();
                prop_assert!((a + b).is_zero());
            }

            #[test]
            fn inverse_is_involutive(p_idx in 0usize..8, a in 1u64..1000) {
                let p = [2u64, 3, 5, 7, 13, 101, 257, 65537][p_idx];
                let a = a % p;
                prop_assume!(a != 0);
                let x = PrimeScalar::new(a as i64, p).unwrap();
                let inv = ff_inverse(x).unwrap();
                prop_assert_eq!(x.mul(&inv).value(), 1);
                prop_assert_eq!(ff_inverse(inv).unwrap(), x);
            }

            #[test]
            fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50, e in -50i64..50, f in 1i64..50) {
                let x = rat_normalize(int(a), int(b)).unwrap();
                let y = rat_normalize(int(c), int(d)).unwrap();
                let z = rat_normalize(int(e), int(f)).unwrap();
                prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
                prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
                if !x.is_zero() {
                    prop_assert!((&x * x.recip()).is_one());
                }
            }

            #[test]
            fn prime_field_axioms(a in 0i64..1000, b in 0i64..1000, c in 0i64..1000) {
                for p in [2u64, 3, 7, 101] {
                    let x = PrimeScalar::new(a, p).unwrap();
                    let y = PrimeScalar::new(b, p).unwrap();
                    let z = PrimeScalar::new(c, p).unwrap();
                    prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                    prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
                    prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
                    prop_assert!(x.add(&x.neg()).is_zero());
                }
            }
        }
    }
}
