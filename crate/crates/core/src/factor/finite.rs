//! Cantor–Zassenhaus over any finite field: squarefree decomposition,
//! distinct-degree splitting, then randomized equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Factorization;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

pub fn factor_over_prime_field<F: Field>(f: &Poly<F>, seed: u64) -> Result<Factorization<F>> {
    let field = f.field().clone();
    let q = field
        .order()
        .ok_or_else(|| Error::domain("factor_over_prime_field needs a finite coefficient field"))?;
    let unit = f
        .lc()
        .cloned()
        .ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_finite(&f.monic(), &q)? {
        for (g, d) in distinct_degree(&part, &q)? {
            for h in equal_degree(&g, d, &q, &mut rng)? {
                factors.push((h, mult));
            }
        }
    }
    Ok(Factorization::from_parts(unit, factors))
}

/// Squarefree decomposition of a monic polynomial over a field of order `q`.
pub(crate) fn squarefree_finite<F: Field>(f: &Poly<F>, q: &BigUint) -> Result<Vec<(Poly<F>, usize)>> {
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let p = f.field().characteristic() as usize;
    let df = f.derivative();
    let mut c = if df.is_zero() { f.clone() } else { f.gcd(&df)? };
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    if !c.is_constant() {
        for (g, m) in squarefree_finite(&pth_root(&c, q), q)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// `g` with `g^p = f`, for `f` whose exponents are all multiples of `p`.
fn pth_root<F: Field>(f: &Poly<F>, q: &BigUint) -> Poly<F> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let e = q / BigUint::from(p as u64);
    let coeffs = f.coeffs().iter().step_by(p).map(|c| field.pow(c, &e)).collect();
    Poly::new(field.clone(), coeffs)
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree, returned as `(product, degree)`.
pub(crate) fn distinct_degree<F: Field>(f: &Poly<F>, q: &BigUint) -> Result<Vec<(Poly<F>, usize)>> {
    let field = f.field().clone();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g)?;
    let mut d = 0;
    while let Some(n) = g.degree() {
        if n < 2 * (d + 1) {
            if n > 0 {
                out.push((g.clone(), n));
            }
            break;
        }
        d += 1;
        h = h.pow_mod(q, &g)?;
        let common = g.gcd(&(&h - &x))?;
        if !common.is_one() {
            g = g.exact_div(&common)?;
            h = h.rem(&g)?;
            out.push((common, d));
        }
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `d`.
pub(crate) fn equal_degree<F: Field>(
    f: &Poly<F>,
    d: usize,
    q: &BigUint,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Poly<F>>> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let qd = q.pow(d as u32);
    let odd = field.characteristic() != 2;
    let half = (&qd - BigUint::one()) >> 1;
    // q = 2^k: the trace map a + a^2 + ... + a^(2^(k d - 1)).
    let trace_len = if odd { 0 } else { (q.bits() - 1) as usize * d };
    for _ in 0..10_000 {
        let a = Poly::new(field.clone(), (0..n).map(|_| field.random_elem(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if odd {
            &a.pow_mod(&half, f)? - &Poly::one(field.clone())
        } else {
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..trace_len {
                t = (&t * &t).rem(f)?;
                acc = &acc + &t;
            }
            acc
        };
        let g = match b.is_zero() {
            true => continue,
            false => f.gcd(&b)?,
        };
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let mut out = equal_degree(&g, d, q, rng)?;
            out.extend(equal_degree(&f.exact_div(&g)?, d, q, rng)?);
            return Ok(out);
        }
    }
    Err(Error::internal(format!(
        "equal-degree splitting of a degree-{n} polynomial made no progress"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn fp(p: u64, c: &[i64]) -> Poly<PrimeField> {
        Poly::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn x4_plus_x_over_f2() {
        let fac = factor_over_prime_field(&fp(2, &[0, 1, 0, 0, 1]), 0).unwrap();
        let expected = vec![(fp(2, &[0, 1]), 1), (fp(2, &[1, 1]), 1), (fp(2, &[1, 1, 1]), 1)];
        assert_eq!(fac.factors, expected);
        assert_eq!(fac.unit, 1);
    }

    #[test]
    fn squares_and_pth_powers() {
        let fac = factor_over_prime_field(&fp(3, &[0, 0, 1]), 0).unwrap();
        assert_eq!(fac.factors, vec![(fp(3, &[0, 1]), 2)]);
        // (x + 1)^6 over F_3 has vanishing derivative.
        let f = fp(3, &[1, 1]).pow(6);
        let fac = factor_over_prime_field(&f, 0).unwrap();
        assert_eq!(fac.factors, vec![(fp(3, &[1, 1]), 6)]);
    }

    #[test]
    fn splitting_is_seed_independent() {
        // x^9 - x over F_3: the three monic linears and three monic
        // irreducible quadratics.
        let f = fp(3, &[0, -1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let a = factor_over_prime_field(&f, 1).unwrap();
        let b = factor_over_prime_field(&f, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.factors.len(), 6);
        assert_eq!(a.factors.iter().filter(|(g, _)| g.degree() == Some(2)).count(), 3);
        assert_eq!(a.expand(f.field()), f);
    }
}
