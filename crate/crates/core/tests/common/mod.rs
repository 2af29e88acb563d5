#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rootlift::cyclotomic::CycloField;
use rootlift::series::{eta_power, jtheta_int, ps_mul, PuiseuxSeries};
use rootlift::Q;
use std::collections::BTreeMap;

pub fn qq(n: i64) -> Q {
    Q::from_integer(n)
}

/// Dense bivariate polynomials in (q, ζ) with i128 coefficients.
pub type Poly2 = BTreeMap<(i64, i64), i128>;

pub fn poly_mul(a: &Poly2, b: &Poly2, q_bound: i64) -> Poly2 {
    let mut out = Poly2::new();
    for ((qa, za), ca) in a {
        for ((qb, zb), cb) in b {
            if qa + qb < q_bound {
                *out.entry((qa + qb, za + zb)).or_insert(0) += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn binomial(q: i64, z: i64) -> Poly2 {
    let mut p = Poly2::new();
    *p.entry((0, 0)).or_insert(0) += 1;
    *p.entry((q, z)).or_insert(0) -= 1;
    p.retain(|_, c| *c != 0);
    p
}

/// q^{−1/8}ζ^{−1/2}ϑ(τ, z) = Π (1−qⁿ)(1−qⁿζ)(1−q^{n−1}ζ^{−1}) below q^bound.
pub fn triple_product(bound: i64) -> Poly2 {
    let mut prod: Poly2 = [((0, 0), 1)].into_iter().collect();
    for n in 1..=bound {
        prod = poly_mul(&prod, &binomial(n, 0), bound);
        prod = poly_mul(&prod, &binomial(n, 1), bound);
        prod = poly_mul(&prod, &binomial(n - 1, -1), bound);
    }
    prod
}

/// m^{−1} Σ_{ad=m} Σ_{0≤b<d} a^k φ((aτ+b)/d, a𝔷), with the b-sum taken in Q(ζ_d).
pub fn substitution_oracle(phi: &PuiseuxSeries, k: u32, m: u64) -> BTreeMap<(i64, Vec<i32>), BigRational> {
    let mut out: BTreeMap<(i64, Vec<i32>), BigRational> = BTreeMap::new();
    let bound = phi.q_prec() / qq(m as i64);
    for a in (1..=m).filter(|a| m.is_multiple_of(*a)) {
        let d = (m / a) as i64;
        let field = CycloField::new(d as usize);
        for (n, p) in phi.levels() {
            let avg = (0..d).fold(field.zero(), |acc, b| field.add(&acc, &field.e(n * b, d)));
            let avg = field.as_rational(&avg).unwrap();
            if avg == BigRational::from_integer(0.into()) {
                continue;
            }
            let big_n = Q::new(a as i64 * n, d);
            if big_n >= bound {
                continue;
            }
            assert!(big_n.is_integer());
            for (e, c) in p.iter() {
                let key = (big_n.to_integer(), e.iter().map(|x| x * a as i32).collect());
                let w = BigRational::from_integer(BigInt::from(a).pow(k) * c.to_bigint()) * &avg
                    / BigRational::from_integer(BigInt::from(m));
                *out.entry(key).or_insert_with(|| BigRational::from_integer(0.into())) += w;
            }
        }
    }
    out.retain(|_, v| *v != BigRational::from_integer(0.into()));
    out
}

/// η^{e}·Π ϑ_f, multiplied factor by factor.
pub fn direct_product(eta: i64, forms: &[Vec<i64>], prec: Q) -> PuiseuxSeries {
    let rank = forms[0].len();
    let mut acc = eta_power(eta, prec + qq(2), rank);
    for f in forms {
        let f: Vec<i32> = f.iter().map(|v| *v as i32).collect();
        acc = ps_mul(&acc, &jtheta_int(&f, prec + qq(2))).unwrap();
    }
    acc
}

