//! Factoring over extension towers. Finite towers go straight to
//! Cantor–Zassenhaus; characteristic-zero towers use the norm method on the
//! collapsed simple form `K(theta)`.

use super::{factor, finite::factor_over_prime_field, squarefree_char0, Factorization};
use crate::error::{Error, Result};
use crate::extension::{collapse_to_simple, poly_to_base, TowerField};
use crate::field::{BaseField, Field};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// Shifts `0, 1, -1, 2, -2, ...` tried before giving up on a squarefree norm.
const MAX_SHIFTS: usize = 32;

pub fn factor_over_extension<B: BaseField>(
    f: &Poly<TowerField<B>>,
    seed: u64,
) -> Result<Factorization<TowerField<B>>> {
    let l = f.field().clone();
    if l.is_finite() {
        return factor_over_prime_field(f, seed);
    }
    let unit = f
        .lc()
        .cloned()
        .ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    if l.level() == 0 {
        let fac = factor(&poly_to_base(f)?, seed)?;
        let factors = fac.factors.iter().map(|(g, m)| (l.lift_base_poly(g), *m)).collect();
        return Ok(Factorization::from_parts(unit, factors));
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_char0(&f.monic())? {
        if part.degree() == Some(1) {
            factors.push((part, mult));
            continue;
        }
        for g in norm_factor(&part, seed)? {
            factors.push((g, mult));
        }
    }
    Ok(Factorization::from_parts(unit, factors))
}

/// Factors a monic squarefree `g` over a characteristic-zero tower level.
///
/// With `S = K(theta)` the simple form, find `s` such that
/// `N(x) = Norm_{S/K}(g(x - s theta))` is squarefree; then each irreducible
/// factor `N_i` of `N` over `K` gives the factor `gcd(g(x - s theta), N_i)`,
/// shifted back.
fn norm_factor<B: BaseField>(g: &Poly<TowerField<B>>, seed: u64) -> Result<Vec<Poly<TowerField<B>>>> {
    let l = g.field().clone();
    let sf = collapse_to_simple(&l)?;
    let s_field = sf.simple.clone();
    let gs = g.map(&s_field, |c| sf.forward(c));
    let theta = s_field.generator(1);
    let n = g.degree().expect("nonconstant");
    for k in 0..MAX_SHIFTS as i64 {
        let s = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        let shift = s_field.mul(&s_field.from_i64(s), &theta);
        let down = Poly::new(s_field.clone(), vec![s_field.neg(&shift), s_field.one()]);
        let up = Poly::new(s_field.clone(), vec![shift, s_field.one()]);
        let h = gs.compose(&down);
        let norm = norm_poly(&h)?;
        if !norm.is_squarefree()? {
            continue;
        }
        let mut out = Vec::new();
        for (ni, _) in factor(&norm, seed)?.factors {
            let hi = h.gcd(&s_field.lift_base_poly(&ni))?;
            if hi.is_constant() {
                continue;
            }
            let gi = hi.compose(&up);
            out.push(gi.map(&l, |c| sf.backward(c)).monic());
        }
        let total: usize = out.iter().map(|p| p.degree().unwrap_or(0)).sum();
        if total != n {
            return Err(Error::internal("norm factors do not account for the whole polynomial"));
        }
        return Ok(out);
    }
    Err(Error::internal(format!(
        "no squarefree norm after {MAX_SHIFTS} shifts"
    )))
}

/// `Norm_{S/K}(h)` for `h` over a one-level tower `S`, by evaluating at
/// `deg(h) * [S:K] + 1` integers and interpolating. Each value is the
/// determinant of multiplication by `h(x0)` on `S`.
pub(crate) fn norm_poly<B: BaseField>(h: &Poly<TowerField<B>>) -> Result<Poly<B>> {
    let s = h.field();
    let base = s.base().clone();
    let d = s.degree();
    let total = h.degree().expect("nonzero") * d;
    let basis: Vec<Vec<B::Elem>> = {
        let t = if s.level() == 0 { s.one() } else { s.generator(1) };
        let mut out = Vec::with_capacity(d);
        let mut p = s.one();
        for _ in 0..d {
            out.push(p.clone());
            p = s.mul(&p, &t);
        }
        out
    };
    let mut xs = Vec::with_capacity(total + 1);
    let mut ys = Vec::with_capacity(total + 1);
    for i in 0..=total as i64 {
        let v = h.evaluate(&s.from_i64(i));
        let columns: Vec<Vec<B::Elem>> = basis.iter().map(|b| s.mul(&v, b)).collect();
        xs.push(base.from_i64(i));
        ys.push(Matrix::from_columns(base.clone(), d, &columns).det());
    }
    interpolate(&base, &xs, &ys)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub(crate) fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Result<Poly<F>> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = field.sub(&dd[i], &dd[i - 1]);
            dd[i] = field.div(&num, &field.sub(&xs[i], &xs[i - level]))?;
        }
    }
    let mut acc = Poly::zero(field.clone());
    for i in (0..n).rev() {
        acc = &(&acc * &Poly::linear(field.clone(), &xs[i])) + &Poly::constant(field.clone(), dd[i].clone());
    }
    Ok(acc)
}
