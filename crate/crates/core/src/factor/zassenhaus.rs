//! Factoring squarefree integer polynomials: factor modulo a small prime,
//! Hensel lift the modular factors past a coefficient bound, then
//! recombine subsets by trial division.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::finite::factor_over_prime_field;
use super::intpoly::{self, IntPoly, ModRing};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::field::{BaseField, PrimeField};
use crate::poly::Poly;

/// How many usable primes are compared before settling on the one with the
/// fewest modular factors.
const PRIME_CANDIDATES: usize = 8;

/// Irreducible factors (primitive, positive leading coefficient) of a
/// primitive squarefree `f` with positive leading coefficient.
pub(crate) fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let mut f = f.clone();
    let mut out = Vec::new();
    if intpoly::degree(&f) >= 1 && f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    if intpoly::degree(&f) == 0 {
        return Ok(out);
    }
    if intpoly::degree(&f) == 1 {
        out.push(f);
        return Ok(out);
    }
    let (fp, modular) = choose_prime(&f)?;
    if modular.len() == 1 {
        out.push(f);
        return Ok(out);
    }
    let n = intpoly::degree(&f);
    let lc = f.last().unwrap().abs();
    let bound = &lc * (BigInt::one() << n) * intpoly::norm2_ceil(&f);
    let p = BigInt::from(fp.modulus());
    let mut steps = 0;
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let ring = ModRing { m: modulus };
    let lifted = lift_tree(&ring.reduce(&f), &modular, &fp, steps)?;
    out.extend(recombine(f, lifted, &ring));
    Ok(out)
}

/// Picks a prime not dividing the leading coefficient, modulo which `f`
/// stays squarefree; returns it with the monic modular factors.
fn choose_prime(f: &IntPoly) -> Result<(PrimeField, Vec<IntPoly>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(PrimeField, Vec<IntPoly>)> = None;
    let mut usable = 0;
    let mut p = 2u64;
    while usable < PRIME_CANDIDATES && p < 100_000 {
        p += 1;
        if !is_prime_u64(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = PrimeField::new(p)?;
        let fbar = intpoly::to_prime_field(f, &field);
        if !fbar.is_squarefree()? {
            continue;
        }
        usable += 1;
        let fac = factor_over_prime_field(&fbar, 0)?;
        let factors: Vec<IntPoly> =
            fac.factors.iter().map(|(g, _)| intpoly::from_prime_field(g)).collect();
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            let done = factors.len() == 1;
            best = Some((field, factors));
            if done {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::internal("no prime keeps the polynomial squarefree"))
}

/// Lifts `f = lc(f) * prod(factors) mod p` to monic factors modulo
/// `p^(2^steps)`, splitting the factor list in halves.
fn lift_tree(f: &IntPoly, factors: &[IntPoly], fp: &PrimeField, steps: u32) -> Result<Vec<IntPoly>> {
    let p = BigInt::from(fp.modulus());
    let top = ModRing { m: p.pow(1u32 << steps) };
    if factors.len() == 1 {
        let inv = top
            .inverse(f.last().unwrap())
            .ok_or_else(|| Error::internal("leading coefficient not invertible"))?;
        return Ok(vec![top.scale(f, &inv)]);
    }
    let k = factors.len() / 2;
    let product = |fs: &[IntPoly]| {
        fs.iter()
            .fold(Poly::one(*fp), |acc, g| &acc * &intpoly::to_prime_field(g, fp))
    };
    let a = product(&factors[..k]);
    let b = product(&factors[k..]);
    let lc = fp.from_rational(&num_rational::BigRational::from_integer(f.last().unwrap().clone()))?;
    let g0 = a.scale(&lc);
    let (d, s0, _) = g0.xgcd(&b)?;
    if !d.is_one() {
        return Err(Error::internal("modular factors are not coprime"));
    }
    let s0 = s0.rem(&b)?;
    let t0 = (&Poly::one(*fp) - &(&s0 * &g0)).exact_div(&b)?;

    let (mut g, mut h) = (intpoly::from_prime_field(&g0), intpoly::from_prime_field(&b));
    let (mut s, mut t) = (intpoly::from_prime_field(&s0), intpoly::from_prime_field(&t0));
    let mut m = p.clone();
    for _ in 0..steps {
        m = &m * &m;
        let r = ModRing { m: m.clone() };
        let fm = r.reduce(f);
        let e = r.sub(&fm, &r.mul(&g, &h));
        let (q, rem) = r.divrem_monic(&r.mul(&s, &e), &h);
        let g2 = r.add(&g, &r.add(&r.mul(&t, &e), &r.mul(&q, &g)));
        let h2 = r.add(&h, &rem);
        let bb = r.sub(&r.add(&r.mul(&s, &g2), &r.mul(&t, &h2)), &[BigInt::one()]);
        let (c, dd) = r.divrem_monic(&r.mul(&s, &bb), &h2);
        s = r.sub(&s, &dd);
        t = r.sub(&t, &r.add(&r.mul(&t, &bb), &r.mul(&c, &g2)));
        g = g2;
        h = h2;
    }
    let mut out = lift_tree(&g, &factors[..k], fp, steps)?;
    out.extend(lift_tree(&h, &factors[k..], fp, steps)?);
    Ok(out)
}

/// Tries products of `s` lifted factors for `s = 1, 2, ...`; a product whose
/// primitive part divides `f` exactly is a true factor.
fn recombine(mut f: IntPoly, lifted: Vec<IntPoly>, ring: &ModRing) -> Vec<IntPoly> {
    let mut remaining = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = f.last().unwrap().clone();
        let target = &lc * &f[0];
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * &remaining[i][0]) % &ring.m);
            let c0 = ring.symmetric(&[c0]).pop().unwrap_or_default();
            if !c0.is_zero() && (&target % &c0).is_zero() {
                let prod = subset
                    .iter()
                    .fold(vec![lc.clone()], |acc, &i| ring.mul(&acc, &remaining[i]));
                let g = intpoly::primitive_part(&ring.symmetric(&prod));
                if let Some(q) = intpoly::exact_div(&f, &g) {
                    out.push(g);
                    f = q;
                    for &i in subset.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_subset(&mut subset, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    out.push(intpoly::primitive_part(&f));
    out
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
