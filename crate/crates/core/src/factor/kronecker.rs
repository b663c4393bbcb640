//! Kronecker's method: strip rational roots, then look for a factor of each
//! degree `d` by interpolating through divisors of `f` at `d + 1` points.
//! Exponential, but exact and easy to audit; used as an independent check on
//! the Zassenhaus path and selectable on its own.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intpoly::{self, IntPoly};
use crate::error::{Error, Result};

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
const CANDIDATE_LIMIT: u64 = 5_000_000;

pub(crate) fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let mut f = f.clone();
    let mut out = Vec::new();
    if intpoly::degree(&f) >= 1 && f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    for root in rational_roots(&f)? {
        let lin = vec![-root.numer().clone(), root.denom().clone()];
        f = intpoly::exact_div(&f, &lin).expect("root gives a factor");
        out.push(lin);
    }
    let mut d = 2;
    while 2 * d <= intpoly::degree(&f) {
        match find_factor(&f, d)? {
            Some(g) => {
                f = intpoly::exact_div(&f, &g).expect("checked division");
                out.push(g);
            }
            None => d += 1,
        }
    }
    if intpoly::degree(&f) >= 1 {
        out.push(intpoly::primitive_part(&f));
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let m = n
        .to_u64()
        .filter(|&m| m <= DIVISOR_LIMIT)
        .ok_or_else(|| Error::capability(format!("value {n} too large for divisor enumeration")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= m {
        if m % i == 0 {
            small.push(BigInt::from(i));
            if i * i != m {
                large.push(BigInt::from(m / i));
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn rational_roots(f: &IntPoly) -> Result<Vec<BigRational>> {
    if intpoly::degree(f) == 0 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    for a in divisors(&f[0])? {
        for b in divisors(f.last().unwrap())? {
            if a.gcd(&b) != BigInt::one() {
                continue;
            }
            for num in [a.clone(), -a.clone()] {
                let r = BigRational::new(num, b.clone());
                if eval_rational(f, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn eval_rational(f: &[BigInt], x: &BigRational) -> BigRational {
    f.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn sample_points(count: usize) -> Vec<BigInt> {
    (0..count as i64)
        .map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
        .map(BigInt::from)
        .collect()
}

fn find_factor(f: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    let xs = sample_points(d + 1);
    let mut choices = Vec::with_capacity(d + 1);
    let mut total: u64 = 1;
    for (j, x) in xs.iter().enumerate() {
        let v = intpoly::eval(f, x);
        debug_assert!(!v.is_zero(), "integer roots were stripped");
        let pos = divisors(&v)?;
        let opts: Vec<BigInt> = if j == 0 {
            pos
        } else {
            pos.iter().flat_map(|a| [a.clone(), -a.clone()]).collect()
        };
        total = total.saturating_mul(opts.len() as u64);
        choices.push(opts);
    }
    if total > CANDIDATE_LIMIT {
        return Err(Error::capability(format!(
            "Kronecker search for degree {d} needs {total} candidates"
        )));
    }
    let mut idx = vec![0usize; d + 1];
    loop {
        let ys: Vec<BigInt> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if let Some(g) = interpolate_integer(&xs, &ys) {
            if intpoly::degree(&g) == d && intpoly::exact_div(f, &g).is_some() {
                return Ok(Some(intpoly::primitive_part(&g)));
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Newton interpolation; `None` unless every coefficient is an integer.
fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let coeffs = interpolate(xs, ys);
    coeffs
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(intpoly::trim)
}

pub(crate) fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let xr: Vec<BigRational> = xs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xr[i] - &xr[i - level]);
        }
    }
    // Expand dd[0] + dd[1](x - x0) + dd[2](x - x0)(x - x1) + ... by Horner.
    let mut acc = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut next = vec![BigRational::zero(); n];
        for (k, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += a;
            }
            next[k] -= a * &xr[i];
        }
        next[0] += &dd[i];
        acc = next;
    }
    acc
}
