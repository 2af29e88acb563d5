use proptest::prelude::*;
use rootlift::jacobi::{theta_block, ThetaBlockSpec};
use rootlift::series::*;
use rootlift::{Error, Int, Q};

mod common;
use common::*;

#[test]
fn pentagonal_numbers_against_direct_product() {
    let bound = 30;
    let mut prod: Poly2 = [((0, 0), 1)].into_iter().collect();
    for n in 1..bound {
        prod = poly_mul(&prod, &binomial(n, 0), bound);
    }
    let e = eta(qq(bound), 0);
    for n in 0..bound {
        let want = prod.get(&(n, 0)).copied().unwrap_or(0);
        let got = e.coefficient(Q::new(24 * n + 1, 24), &[]).unwrap();
        assert_eq!(got, Int::from(want as i64), "q^{n}");
    }
}

#[test]
fn eta_24_against_direct_product() {
    let bound = 12;
    let mut prod: Poly2 = [((1, 0), 1)].into_iter().collect();
    for n in 1..bound {
        for _ in 0..24 {
            prod = poly_mul(&prod, &binomial(n, 0), bound);
        }
    }
    let d = eta_power(24, qq(bound), 0);
    assert_eq!(d.q_den(), 1);
    assert_eq!(d.order(), qq(1));
    for n in 1..bound {
        assert_eq!(d.coefficient(qq(n), &[]).unwrap(), Int::from(prod[&(n, 0)] as i64));
    }
    // Δ = q − 24q² + 252q³ − 1472q⁴ + …
    assert_eq!(d.coefficient(qq(2), &[]).unwrap(), Int::from(-24));
    assert_eq!(d.coefficient(qq(4), &[]).unwrap(), Int::from(-1472));
}

#[test]
fn eta_power_negative_and_zero() {
    let p = eta_power(0, qq(4), 1);
    assert_eq!(p, PuiseuxSeries::one(1, qq(4)));
    let m6 = eta_power(-6, qq(4), 1);
    assert_eq!(m6.order(), Q::new(-6, 24));
    assert_eq!(m6.coefficient(Q::new(-1, 4), &[Q::from_integer(0)]).unwrap(), Int::ONE);
    let prod = ps_mul(&m6, &eta_power(6, qq(4), 1)).unwrap();
    assert_eq!(prod, PuiseuxSeries::one(1, prod.q_prec()));
}

#[test]
fn eta_quotient_shapes() {
    // class −2A: 1^{−8}2^{16}
    let s = eta_quotient(&[(1, -8), (2, 16)], qq(4), 0).unwrap();
    assert_eq!(s.order(), qq(1));
    assert_eq!(s.coefficient(qq(1), &[]).unwrap(), Int::ONE);
    let t = eta_quotient(&[(1, -1), (5, 1)], qq(3), 0).unwrap();
    assert_eq!(t.order(), Q::new(1, 6));
    assert!(eta_quotient(&[], qq(3), 0).is_err());
    let direct = ps_mul(&eta_power(-1, qq(3), 0), &eta_quotient(&[(5, 1)], qq(3), 0).unwrap()).unwrap();
    assert!(direct.agrees_with(&t));
}

#[test]
fn jacobi_theta_sum_formula_values() {
    let t = jtheta_int(&[1], qq(3));
    let c = |n: Q, l: Q| t.coefficient(n, &[l]).unwrap();
    assert_eq!(c(Q::new(1, 8), Q::new(1, 2)), Int::ONE);
    assert_eq!(c(Q::new(1, 8), Q::new(-1, 2)), Int::from(-1));
    assert_eq!(c(Q::new(9, 8), Q::new(3, 2)), Int::from(-1));
    assert_eq!(c(Q::new(9, 8), Q::new(-3, 2)), Int::ONE);
    assert!(t.coefficient(qq(3), &[Q::new(1, 2)]).is_err());
}

#[test]
fn jacobi_theta_triple_product_to_q10() {
    // q^{1/8}ζ^{1/2} Π (1−qⁿ)(1−qⁿζ)(1−q^{n−1}ζ^{−1}), exponents shifted by (1/8, 1/2)
    let bound = 10;
    let prod = triple_product(bound);
    let t = jtheta_int(&[1], qq(bound));
    let mut seen = 0;
    for (&(n, j), &c) in &prod {
        let got = t.coefficient(Q::new(8 * n + 1, 8), &[Q::new(2 * j + 1, 2)]).unwrap();
        assert_eq!(got, Int::from(c as i64), "q^{n}+1/8 ζ^{j}+1/2");
        seen += 1;
    }
    assert_eq!(seen, t.num_terms());
}

#[test]
fn theta_squared_zeta_zero() {
    let t = jtheta_int(&[1], qq(3));
    let sq = ps_mul(&t, &t).unwrap();
    assert_eq!(sq.coefficient(Q::new(1, 4), &[qq(0)]).unwrap(), Int::from(-2));
    assert_eq!(ps_pow(&t, 2).unwrap(), sq);
}

#[test]
fn exact_division_by_unit_and_theta_block() {
    let block = theta_block(&ThetaBlockSpec::from_int_forms(-6, &[vec![1, 0], vec![0, 1], vec![1, 1]]), qq(5)).unwrap();
    let factors = block.leading_factors.clone().unwrap();
    let q = ps_exact_div(&block.series, &block.series, &factors).unwrap();
    assert!(q.agrees_with(&PuiseuxSeries::one(2, q.q_prec())));
    // ((1 − qζ₁)·u)/u = 1 − qζ₁ for u = η
    let u = eta(qq(6), 2);
    let mut p = LaurentPoly::zero(2);
    p.add_term([1, 0].into_iter().collect(), &Int::from(-1));
    let f = PuiseuxSeries::from_levels(2, 1, 1, qq(6), [(0, LaurentPoly::one(2)), (1, p)]);
    let num = ps_mul(&f, &u).unwrap();
    assert!(ps_exact_div(&num, &u, &[]).unwrap().agrees_with(&f));
    assert_eq!(ps_exact_div(&block.series, &block.series, &[]).unwrap_err(), Error::MissingFactorization);
}

fn arb_poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, rank), -5i64..=5), 0..5).prop_map(move |terms| {
        LaurentPoly::from_terms(rank, terms.into_iter().map(|(e, c)| (e.into_iter().collect(), Int::from(c))))
    })
}

fn arb_series() -> impl Strategy<Value = PuiseuxSeries> {
    (prop::collection::vec(arb_poly(2), 1..6), 0i64..3).prop_map(|(levels, start)| {
        let prec = start + levels.len() as i64 + 1;
        PuiseuxSeries::from_levels(2, 1, 1, qq(prec), levels.into_iter().enumerate().map(|(i, p)| (start + i as i64, p)))
    })
}

fn arb_unit() -> impl Strategy<Value = PuiseuxSeries> {
    (prop::collection::vec(-3i32..=3, 2), prop::bool::ANY, prop::collection::vec(arb_poly(2), 1..5)).prop_map(|(v, neg, rest)| {
        let lead = LaurentPoly::monomial(2, v.into_iter().collect(), Int::from(if neg { -1 } else { 1 }));
        let prec = rest.len() as i64 + 1;
        let levels = std::iter::once((0, lead)).chain(rest.into_iter().enumerate().map(|(i, p)| (i as i64 + 1, p)));
        PuiseuxSeries::from_levels(2, 1, 1, qq(prec), levels)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(ps_add(&a, &b).unwrap(), ps_add(&b, &a).unwrap());
        prop_assert_eq!(ps_mul(&a, &b).unwrap(), ps_mul(&b, &a).unwrap());
        let ab_c = ps_mul(&ps_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ps_mul(&a, &ps_mul(&b, &c).unwrap()).unwrap();
        prop_assert!(ab_c.agrees_with(&a_bc));
        let left = ps_mul(&a, &ps_add(&b, &c).unwrap()).unwrap();
        let right = ps_add(&ps_mul(&a, &b).unwrap(), &ps_mul(&a, &c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
        prop_assert!(ps_sub(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn invert_is_inverse(u in arb_unit()) {
        let inv = ps_invert(&u).unwrap();
        let prod = ps_mul(&u, &inv).unwrap();
        prop_assert!(prod.agrees_with(&PuiseuxSeries::one(2, prod.q_prec())));
        prop_assert_eq!(prod.q_prec(), u.q_prec() - u.order());
    }

    #[test]
    fn exact_division_round_trip(
        a in arb_series(),
        forms in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..4),
    ) {
        prop_assume!(forms.iter().all(|f| f.iter().any(|x| *x != 0)));
        let block = theta_block(&ThetaBlockSpec::from_int_forms(0, &forms), qq(8)).unwrap();
        let factors = block.leading_factors.clone().unwrap();
        let num = ps_mul(&a, &block.series).unwrap();
        let back = ps_exact_div(&num, &block.series, &factors).unwrap();
        prop_assert!(back.agrees_with(&a));
        prop_assert!(back.q_prec() >= a.q_prec().min(qq(8) - block.series.order()) - qq(1));
    }

    #[test]
    fn pow_matches_repeated_product(u in arb_unit(), e in -3i64..=3) {
        let p = ps_pow(&u, e).unwrap();
        let mut acc = PuiseuxSeries::one(2, u.q_prec() - u.order());
        let base = if e < 0 { ps_invert(&u).unwrap() } else { u.clone() };
        for _ in 0..e.abs() {
            acc = ps_mul(&acc, &base).unwrap();
        }
        prop_assert!(p.agrees_with(&acc));
    }
}
