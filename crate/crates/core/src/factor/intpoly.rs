//! Dense integer polynomials (`Vec<BigInt>`, constant term first) and the
//! modular helpers the Zassenhaus lifter needs.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{PrimeField, Rationals};
use crate::poly::Poly;

pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(mut f: IntPoly) -> IntPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[BigInt]) -> usize {
    f.len().saturating_sub(1)
}

pub(crate) fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_part(f: &[BigInt]) -> IntPoly {
    let mut c = content(f);
    if f.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    if c.is_zero() {
        return Vec::new();
    }
    f.iter().map(|a| a / &c).collect()
}

/// Scales a rational polynomial to a primitive integer one.
pub(crate) fn primitive_from_rational(f: &Poly<Rationals>) -> IntPoly {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: IntPoly = f.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    primitive_part(&ints)
}

pub(crate) fn to_monic_rational(f: &[BigInt]) -> Poly<Rationals> {
    let lc = f.last().expect("nonzero polynomial").clone();
    let coeffs = f.iter().map(|c| BigRational::new(c.clone(), lc.clone())).collect();
    Poly::new(Rationals, coeffs)
}

pub(crate) fn mul(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

pub(crate) fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact quotient `f / g` over `Z`, or `None` when `g` does not divide `f`.
pub(crate) fn exact_div(f: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let g = trim(g.to_vec());
    let lc = g.last()?.clone();
    let mut r = trim(f.to_vec());
    if r.len() < g.len() {
        return r.is_empty().then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - g.len() + 1];
    while r.len() >= g.len() {
        let top = r.last().unwrap().clone();
        let (c, rem) = top.div_rem(&lc);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - g.len();
        for (j, b) in g.iter().enumerate() {
            r[shift + j] -= &c * b;
        }
        q[shift] = c;
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r.is_empty().then(|| trim(q))
}

pub(crate) fn norm2_ceil(f: &[BigInt]) -> BigInt {
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    sq.sqrt() + 1
}

pub(crate) fn to_prime_field(f: &[BigInt], fp: &PrimeField) -> Poly<PrimeField> {
    let p = BigInt::from(fp.modulus());
    Poly::new(*fp, f.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
}

pub(crate) fn from_prime_field(f: &Poly<PrimeField>) -> IntPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Arithmetic in `(Z/mZ)[x]`, coefficients kept in `[0, m)`.
pub(crate) struct ModRing {
    pub m: BigInt,
}

impl ModRing {
    pub fn reduce(&self, f: &[BigInt]) -> IntPoly {
        trim(f.iter().map(|c| c.mod_floor(&self.m)).collect())
    }

    pub fn add(&self, f: &[BigInt], g: &[BigInt]) -> IntPoly {
        let n = f.len().max(g.len());
        let z = BigInt::zero();
        let out: IntPoly = (0..n).map(|i| f.get(i).unwrap_or(&z) + g.get(i).unwrap_or(&z)).collect();
        self.reduce(&out)
    }

    pub fn sub(&self, f: &[BigInt], g: &[BigInt]) -> IntPoly {
        let n = f.len().max(g.len());
        let z = BigInt::zero();
        let out: IntPoly = (0..n).map(|i| f.get(i).unwrap_or(&z) - g.get(i).unwrap_or(&z)).collect();
        self.reduce(&out)
    }

    pub fn mul(&self, f: &[BigInt], g: &[BigInt]) -> IntPoly {
        self.reduce(&mul(f, g))
    }

    pub fn scale(&self, f: &[BigInt], c: &BigInt) -> IntPoly {
        self.reduce(&f.iter().map(|a| a * c).collect::<Vec<_>>())
    }

    /// Division by a monic polynomial.
    pub fn divrem_monic(&self, f: &[BigInt], g: &[BigInt]) -> (IntPoly, IntPoly) {
        debug_assert!(g.last().is_some_and(One::is_one));
        let mut r = self.reduce(f);
        if r.len() < g.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - g.len() + 1];
        while r.len() >= g.len() {
            let c = r.last().unwrap().clone();
            let shift = r.len() - g.len();
            for (j, b) in g.iter().enumerate() {
                r[shift + j] = (&r[shift + j] - &c * b).mod_floor(&self.m);
            }
            q[shift] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    /// Symmetric representatives in `(-m/2, m/2]`.
    pub fn symmetric(&self, f: &[BigInt]) -> IntPoly {
        let half = &self.m >> 1;
        trim(
            f.iter()
                .map(|c| {
                    let c = c.mod_floor(&self.m);
                    if c > half {
                        c - &self.m
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }

    pub fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        let (g, s, _) = crate::arith::big_xgcd(&a.mod_floor(&self.m), &self.m);
        g.is_one().then(|| s.mod_floor(&self.m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        c.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn exact_division() {
        let f = mul(&ip(&[-1, 2]), &ip(&[3, 0, 1]));
        assert_eq!(exact_div(&f, &ip(&[-1, 2])), Some(ip(&[3, 0, 1])));
        assert_eq!(exact_div(&f, &ip(&[1, 1])), None);
        assert_eq!(exact_div(&ip(&[1, 0, 1]), &ip(&[0, 2])), None);
    }

    #[test]
    fn primitive_part_fixes_sign() {
        assert_eq!(primitive_part(&ip(&[4, -6])), ip(&[-2, 3]));
    }

    #[test]
    fn monic_division_mod_m() {
        let r = ModRing { m: BigInt::from(9) };
        let (q, rem) = r.divrem_monic(&ip(&[5, 0, 0, 1]), &ip(&[1, 1]));
        let back = r.add(&r.mul(&q, &ip(&[1, 1])), &rem);
        assert_eq!(back, ip(&[5, 0, 0, 1]));
        assert_eq!(r.symmetric(&ip(&[8, 4, 5])), ip(&[-1, 4, -4]));
        assert_eq!(r.inverse(&BigInt::from(2)), Some(BigInt::from(5)));
        assert_eq!(r.inverse(&BigInt::from(3)), None);
    }
}
