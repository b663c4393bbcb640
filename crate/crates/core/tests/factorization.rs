use std::collections::BTreeMap;

use galois_kit::factor::{factor_over_rationals_with, RationalFactorOptions};
use galois_kit::{
    adjoin_root, factor, factor_over_prime_field, factor_over_rationals, is_irreducible,
    Error, Factorization, Field, Poly, PrimeField, Rational, Rationals, TowerField,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn q_poly(c: &[i64]) -> Poly<Rationals> {
    Poly::from_i64s(Rationals, c)
}

fn fp_poly(p: u64, c: &[i64]) -> Poly<PrimeField> {
    Poly::from_i64s(PrimeField::new(p).unwrap(), c)
}

/// All monic polynomials of degree `d` over `F_p`.
fn monics(fp: PrimeField, d: usize) -> Vec<Poly<PrimeField>> {
    let p = fp.modulus();
    (0..p.pow(d as u32))
        .map(|mut i| {
            let mut c: Vec<u64> = (0..d)
                .map(|_| {
                    let r = i % p;
                    i /= p;
                    r
                })
                .collect();
            c.push(1);
            Poly::new(fp, c)
        })
        .collect()
}

/// Factorization by repeatedly splitting off the first monic divisor of
/// least degree, found by trial division over every candidate.
fn brute_force(f: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let fp = *f.field();
    let mut rest = f.monic();
    let mut found: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    'outer: while rest.degree().unwrap() > 0 {
        let n = rest.degree().unwrap();
        for d in 1..=n {
            for g in monics(fp, d) {
                if g.divides(&rest).unwrap() {
                    rest = rest.exact_div(&g).unwrap();
                    *found.entry(g.coeffs().to_vec()).or_default() += 1;
                    continue 'outer;
                }
            }
        }
        unreachable!("rest divides itself");
    }
    let mut out: Vec<_> = found.into_iter().map(|(c, m)| (Poly::new(fp, c), m)).collect();
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then(a.coeffs().cmp(b.coeffs())));
    out
}

#[test]
fn prime_field_examples() {
    let fac = factor_over_prime_field(&fp_poly(2, &[0, 1, 0, 0, 1]), 0).unwrap();
    assert_eq!(
        fac.factors,
        vec![(fp_poly(2, &[0, 1]), 1), (fp_poly(2, &[1, 1]), 1), (fp_poly(2, &[1, 1, 1]), 1)]
    );
    assert_eq!(fac.expand(&PrimeField::new(2).unwrap()), fp_poly(2, &[0, 1, 0, 0, 1]));

    let fac = factor_over_prime_field(&fp_poly(2, &[1, 1, 1]), 0).unwrap();
    assert!(fac.is_irreducible());
    let fac = factor_over_prime_field(&fp_poly(3, &[0, 0, 1]), 0).unwrap();
    assert_eq!(fac.factors, vec![(fp_poly(3, &[0, 1]), 2)]);
    assert!(matches!(
        factor_over_prime_field(&Poly::zero(PrimeField::new(3).unwrap()), 0),
        Err(Error::Domain(_))
    ));
    assert!(matches!(factor_over_prime_field(&q_poly(&[1, 1]), 0), Err(Error::Domain(_))));
}

#[test]
fn exhaustive_small_prime_fields_match_brute_force() {
    for p in [2u64, 3, 5] {
        let fp = PrimeField::new(p).unwrap();
        for d in 1..=4 {
            for f in monics(fp, d) {
                let fac = factor_over_prime_field(&f, 11).unwrap();
                assert_eq!(fac.factors, brute_force(&f), "F{p}: {f}");
                assert_eq!(fac.expand(&fp), f);
            }
        }
    }
}

#[test]
fn rational_examples() {
    let fac = factor_over_rationals(&q_poly(&[-1, 0, 0, 0, 1])).unwrap();
    assert_eq!(fac.factors, vec![(q_poly(&[-1, 1]), 1), (q_poly(&[1, 1]), 1), (q_poly(&[1, 0, 1]), 1)]);
    assert!(factor_over_rationals(&q_poly(&[-2, 0, 1])).unwrap().is_irreducible());
    let fac = factor_over_rationals(&q_poly(&[-2, 0, 2])).unwrap();
    assert_eq!(fac.unit, Rationals.from_i64(2));
    assert_eq!(fac.factors, vec![(q_poly(&[-1, 1]), 1), (q_poly(&[1, 1]), 1)]);
    // Only x^2 + 1 is left after rational roots; it has none over Q.
    assert!((-2..=2).all(|r| q_poly(&[1, 0, 1]).evaluate(&Rationals.from_i64(r)) != Rationals.zero()));
}

#[test]
fn irreducibility_examples() {
    assert!(is_irreducible(&fp_poly(2, &[1, 1, 1])).unwrap());
    assert!(!is_irreducible(&q_poly(&[-1, 0, 1])).unwrap());
    assert!(is_irreducible(&q_poly(&[1, 0, -10, 0, 1])).unwrap());
    let kron = factor_over_rationals_with(&q_poly(&[1, 0, -10, 0, 1]), &RationalFactorOptions::kronecker()).unwrap();
    assert!(kron.is_irreducible());
    assert!(matches!(is_irreducible(&q_poly(&[])), Err(Error::Domain(_))));
}

#[test]
fn extension_examples() {
    let q = TowerField::base_field(Rationals);
    let qi = adjoin_root(&q, &q.lift_base_poly(&q_poly(&[1, 0, 1])), "t").unwrap();
    let t = qi.generator(1);
    let fac = factor(&qi.lift_base_poly(&q_poly(&[1, 0, 1])), 0).unwrap();
    let expected = vec![(Poly::linear(qi.clone(), &qi.neg(&t)), 1), (Poly::linear(qi.clone(), &t), 1)];
    let mut got = fac.factors.clone();
    got.sort_by(|a, b| a.0.coeffs().cmp(b.0.coeffs()));
    let mut want = expected;
    want.sort_by(|a, b| a.0.coeffs().cmp(b.0.coeffs()));
    assert_eq!(got, want);

    let qa = adjoin_root(&q, &q.lift_base_poly(&q_poly(&[-2, 0, 0, 1])), "a").unwrap();
    let a = qa.generator(1);
    let fac = factor(&qa.lift_base_poly(&q_poly(&[-2, 0, 0, 1])), 0).unwrap();
    let quad = Poly::new(qa.clone(), vec![qa.mul(&a, &a), a.clone(), qa.one()]);
    assert_eq!(fac.factors, vec![(Poly::linear(qa.clone(), &a), 1), (quad, 1)]);

    let f2 = PrimeField::new(2).unwrap();
    let k = TowerField::base_field(f2);
    let f4 = adjoin_root(&k, &k.lift_base_poly(&fp_poly(2, &[1, 1, 1])), "t").unwrap();
    let t = f4.generator(1);
    let fac = factor(&f4.lift_base_poly(&fp_poly(2, &[1, 1, 1])), 0).unwrap();
    let mut roots: Vec<_> = fac.roots().into_iter().map(|(r, _)| r).collect();
    roots.sort();
    let mut expected = vec![t.clone(), f4.mul(&t, &t)];
    expected.sort();
    assert_eq!(roots, expected);
    // Exhaustive root search over the four elements agrees.
    let g = f4.lift_base_poly(&fp_poly(2, &[1, 1, 1]));
    let brute: Vec<_> = (0u64..4).map(|i| vec![i & 1, i >> 1]).filter(|y| f4.is_zero(&g.evaluate(y))).collect();
    assert_eq!(brute.len(), 2);
}

#[test]
fn extension_factorization_handles_multiplicity() {
    let q = TowerField::base_field(Rationals);
    let l = adjoin_root(&q, &q.lift_base_poly(&q_poly(&[-2, 0, 1])), "a").unwrap();
    let f = l.lift_base_poly(&(&q_poly(&[-2, 0, 1]).pow(2) * &q_poly(&[-3, 0, 1])));
    let fac = factor(&f, 0).unwrap();
    assert_eq!(fac.expand(&l), f);
    let mults: Vec<_> = fac.factors.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect();
    assert_eq!(mults, vec![(1, 2), (1, 2), (2, 1)]);
}

/// Irreducibles over Q with their irreducibility confirmed by the
/// Kronecker path in `known_irreducibles_are_irreducible`.
fn known_irreducibles() -> Vec<Poly<Rationals>> {
    vec![
        q_poly(&[0, 1]),
        q_poly(&[-1, 1]),
        q_poly(&[2, 1]),
        q_poly(&[-3, 2]),
        q_poly(&[1, 0, 1]),
        q_poly(&[-2, 0, 1]),
        q_poly(&[1, 1, 1]),
        q_poly(&[-5, 0, 3]),
        q_poly(&[-2, 0, 0, 1]),
        q_poly(&[-1, -1, 0, 1]),
        q_poly(&[1, 0, 0, 0, 1]),
        q_poly(&[1, 0, -10, 0, 1]),
        q_poly(&[1, 1, 0, 0, 1]),
    ]
}

#[test]
fn known_irreducibles_are_irreducible() {
    for f in known_irreducibles() {
        let fac = factor_over_rationals_with(&f, &RationalFactorOptions::kronecker()).unwrap();
        assert!(fac.is_irreducible(), "{f}");
    }
}

#[test]
fn randomized_rational_products_are_recovered() {
    let pool = known_irreducibles();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let mut product = Poly::one(Rationals);
        let mut expected: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        loop {
            let g = &pool[rng.gen_range(0..pool.len())];
            let deg = product.degree().unwrap() + g.degree().unwrap();
            if deg > 8 {
                break;
            }
            product = &product * g;
            *expected.entry(g.monic().coeffs().to_vec()).or_default() += 1;
            if rng.gen_bool(0.25) {
                break;
            }
        }
        let unit = Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=5).into());
        let f = product.scale(&unit);
        for options in [RationalFactorOptions::default(), RationalFactorOptions::kronecker()] {
            let fac = factor_over_rationals_with(&f, &options).unwrap();
            let got: BTreeMap<Vec<Rational>, usize> =
                fac.factors.iter().map(|(g, m)| (g.coeffs().to_vec(), *m)).collect();
            assert_eq!(got, expected, "{f}");
            assert_eq!(fac.unit, &unit * product.lc().unwrap());
        }
    }
}

#[test]
fn larger_rational_inputs() {
    // Swinnerton-Dyer polynomial of degree 8 for sqrt2, sqrt3, sqrt5.
    let s = q_poly(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
    assert!(factor_over_rationals(&s).unwrap().is_irreducible());
    // x^16 - 1 splits into cyclotomic factors.
    let mut c = vec![0i64; 17];
    c[0] = -1;
    c[16] = 1;
    let fac = factor_over_rationals(&q_poly(&c)).unwrap();
    let degrees: Vec<_> = fac.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
    assert_eq!(degrees, vec![1, 1, 2, 4, 8]);
}

fn check_factorization<F: Field>(f: &Poly<F>, fac: &Factorization<F>) {
    assert_eq!(&fac.expand(f.field()), f);
    for (i, (g, m)) in fac.factors.iter().enumerate() {
        assert!(g.is_monic() && *m >= 1);
        assert!(fac.factors[..i].iter().all(|(h, _)| h != g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn methods_agree_over_q(c in proptest::collection::vec(-6i64..=6, 2..7)) {
        let f = q_poly(&c);
        prop_assume!(!f.is_zero());
        let z = factor_over_rationals(&f).unwrap();
        let k = factor_over_rationals_with(&f, &RationalFactorOptions::kronecker()).unwrap();
        check_factorization(&f, &z);
        prop_assert_eq!(z, k);
    }

    #[test]
    fn prime_field_factorization_is_deterministic_and_exact(
        p in prop::sample::select(vec![2u64, 3, 7, 13]),
        c in proptest::collection::vec(0i64..13, 1..9),
        seed in any::<u64>(),
    ) {
        let f = fp_poly(p, &c);
        prop_assume!(!f.is_zero());
        let a = factor_over_prime_field(&f, seed).unwrap();
        let b = factor_over_prime_field(&f, seed ^ 0xdead_beef).unwrap();
        check_factorization(&f, &a);
        prop_assert_eq!(&a, &b);
        for (g, _) in &a.factors {
            let d = g.degree().unwrap();
            if (2..=3).contains(&d) {
                prop_assert!((0..p).all(|r| g.evaluate(&r) != 0));
            }
        }
    }

    #[test]
    fn extension_factorization_reconstructs(c in proptest::collection::vec(-3i64..=3, 2..5)) {
        let q = TowerField::base_field(Rationals);
        let l = adjoin_root(&q, &q.lift_base_poly(&q_poly(&[-2, 0, 0, 1])), "a").unwrap();
        let a = l.generator(1);
        // Coefficients mix in the generator so the input is not defined over Q.
        let coeffs: Vec<_> = c.iter().enumerate().map(|(i, &v)| {
            let s = l.from_i64(v);
            if i == 0 { l.add(&s, &a) } else { s }
        }).collect();
        let f = Poly::new(l.clone(), coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fac = factor(&f, 0).unwrap();
        check_factorization(&f, &fac);
        for (g, _) in &fac.factors {
            prop_assert!(is_irreducible(g).unwrap());
        }
    }
}
