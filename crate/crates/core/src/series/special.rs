//! η, η-quotients and the theta function ϑ(τ, z).

use super::laurent::{Exp, LaurentPoly};
use super::puiseux::PuiseuxSeries;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::Q;
use num_integer::Integer;

/// Coefficients of `Π_{n≥1}(1 − q^n)` below `q^len`, by the pentagonal theorem.
pub fn euler_product(len: usize) -> Vec<Int> {
    let mut c = vec![Int::ZERO; len];
    if len > 0 {
        c[0] = Int::ONE;
    }
    for k in 1i64.. {
        let sign = Int::from(if k % 2 == 0 { 1 } else { -1 });
        let a = (k * (3 * k - 1) / 2) as usize;
        if a >= len {
            break;
        }
        c[a] = sign.clone();
        let b = (k * (3 * k + 1) / 2) as usize;
        if b < len {
            c[b] = sign;
        }
    }
    c
}

/// `f^e` for a power series with `f[0] = 1`, via `n g_n = Σ ((e+1)k − n) f_k g_{n−k}`.
pub fn series_power(f: &[Int], e: i64) -> Vec<Int> {
    assert!(f.first().is_some_and(|x| x.is_one()));
    let len = f.len();
    let mut g = vec![Int::ZERO; len];
    if len == 0 {
        return g;
    }
    g[0] = Int::ONE;
    for n in 1..len {
        let mut acc = Int::ZERO;
        for k in 1..=n {
            if f[k].is_zero() || g[n - k].is_zero() {
                continue;
            }
            let w = Int::from((e + 1) * k as i64 - n as i64);
            acc.add_mul(&(&w * &f[k]), &g[n - k]);
        }
        g[n] = acc.div_exact(&Int::from(n as i64)).expect("integral power series");
    }
    g
}

fn constant_series(rank: usize, q_den: i64, q_prec: Q, shift: i64, coeffs: &[Int], step: i64) -> PuiseuxSeries {
    let zero: Exp = Exp::from_elem(0, rank);
    PuiseuxSeries::from_levels(
        rank,
        q_den,
        1,
        q_prec,
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            (
                shift + step * i as i64,
                LaurentPoly::monomial(rank, zero.clone(), c.clone()),
            )
        }),
    )
}

/// η(τ) truncated below `q^prec`, as a rank-`rank` series constant in ζ.
pub fn eta(prec: Q, rank: usize) -> PuiseuxSeries {
    eta_power(1, prec, rank)
}

/// η(τ)^e truncated below `q^prec`.
pub fn eta_power(e: i64, prec: Q, rank: usize) -> PuiseuxSeries {
    eta_quotient_unchecked(&[(1, e)], prec, rank)
}

/// `Π η(bτ)^{r_b}` truncated below `q^prec`.
pub fn eta_quotient(shape: &[(i64, i64)], prec: Q, rank: usize) -> Result<PuiseuxSeries> {
    if shape.is_empty() {
        return Err(Error::Invalid("empty eta quotient shape".into()));
    }
    if shape.iter().any(|(b, _)| *b < 1) {
        return Err(Error::Invalid("eta quotient levels must be positive".into()));
    }
    Ok(eta_quotient_unchecked(shape, prec, rank))
}

fn eta_quotient_unchecked(shape: &[(i64, i64)], prec: Q, rank: usize) -> PuiseuxSeries {
    let shift: i64 = shape.iter().map(|(b, r)| b * r).sum();
    // coefficients live at integer steps above q^{shift/24}
    let len = (prec - Q::new(shift, 24)).ceil().to_integer().max(0) as usize;
    let base = euler_product(len);
    let mut acc = vec![Int::ZERO; len];
    if len > 0 {
        acc[0] = Int::ONE;
    }
    for &(b, r) in shape {
        let mut dil = vec![Int::ZERO; len];
        for (i, c) in base.iter().enumerate() {
            let j = i * b as usize;
            if j >= len {
                break;
            }
            dil[j] = c.clone();
        }
        let p = series_power(&dil, r);
        acc = truncated_product(&acc, &p);
    }
    let g = shift.gcd(&24);
    let q_den = 24 / g;
    constant_series(rank, q_den, prec, shift / g, &acc, q_den)
}

fn truncated_product(a: &[Int], b: &[Int]) -> Vec<Int> {
    let len = a.len();
    let mut out = vec![Int::ZERO; len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j].add_mul(x, y);
        }
    }
    out
}

/// ϑ(τ, (form, 𝔷)) = Σ_{n odd} (−4/n) q^{n²/8} ζ^{(n/2)·form}, truncated below `q^prec`.
pub fn jtheta_linear(form: &[Q], prec: Q) -> PuiseuxSeries {
    let mut den = 1i64;
    for x in form {
        den = den.lcm(x.denom());
    }
    let nums: Vec<i32> = form
        .iter()
        .map(|x| (x * Q::from_integer(den)).to_integer() as i32)
        .collect();
    jtheta_scaled(&nums, 2 * den as i32, prec)
}

/// ϑ for an integral form, exponents over `z_den = 2`.
pub fn jtheta_int(form: &[i32], prec: Q) -> PuiseuxSeries {
    jtheta_scaled(form, 2, prec)
}

fn jtheta_scaled(nums: &[i32], z_den: i32, prec: Q) -> PuiseuxSeries {
    let rank = nums.len();
    let bound = super::puiseux::ceil_mul(prec, 8);
    let mut levels = Vec::new();
    let mut n = 1i64;
    while n * n < bound {
        let mut p = LaurentPoly::zero(rank);
        for s in [n, -n] {
            let sign = if s.rem_euclid(4) == 1 { 1 } else { -1 };
            let e: Exp = nums.iter().map(|x| x * s as i32).collect();
            p.add_term(e, &Int::from(sign));
        }
        levels.push((n * n, p));
        n += 2;
    }
    PuiseuxSeries::from_levels(rank, 8, z_den, prec, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::puiseux::{ps_mul, ps_pow};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn pentagonal_pattern() {
        let e = euler_product(16);
        let expect = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1];
        for (c, x) in e.iter().zip(expect) {
            assert_eq!(*c, Int::from(x));
        }
    }

    #[test]
    fn eta_leading_term() {
        let s = eta(q(5, 1), 0);
        assert_eq!(s.coefficient(q(1, 24), &[]).unwrap(), Int::ONE);
        assert_eq!(s.coefficient(q(25, 24), &[]).unwrap(), Int::from(-1));
    }

    #[test]
    fn eta_power_matches_repeated_product() {
        let e = eta(q(6, 1), 0);
        let direct = ps_pow(&e, 6).unwrap();
        let fast = eta_power(6, direct.q_prec(), 0);
        assert_eq!(direct, fast);
    }

    #[test]
    fn eta_24_is_integral() {
        let d = eta_power(24, q(6, 1), 0);
        assert_eq!(d.reduced().q_den(), 1);
        assert_eq!(d.order(), q(1, 1));
        assert_eq!(d.coefficient(q(2, 1), &[]).unwrap(), Int::from(-24));
    }

    #[test]
    fn eta_quotient_orders() {
        let s = eta_quotient(&[(1, -8), (2, 16)], q(4, 1), 0).unwrap();
        assert_eq!(s.order(), q(1, 1));
        let s = eta_quotient(&[(1, -5), (5, 5)], q(3, 1), 0).unwrap();
        assert_eq!(s.order(), q(20, 24));
        assert!(eta_quotient(&[], q(1, 1), 0).is_err());
    }

    #[test]
    fn jtheta_signs() {
        let f = [q(1, 1), q(2, 1)];
        let t = jtheta_linear(&f, q(3, 1));
        assert_eq!(t.coefficient(q(1, 8), &[q(1, 2), q(1, 1)]).unwrap(), Int::ONE);
        assert_eq!(t.coefficient(q(1, 8), &[q(-1, 2), q(-1, 1)]).unwrap(), Int::from(-1));
        assert_eq!(t.coefficient(q(9, 8), &[q(3, 2), q(3, 1)]).unwrap(), Int::from(-1));
        assert!(t.coefficient(q(3, 1), &[q(0, 1), q(0, 1)]).is_err());
    }

    #[test]
    fn theta_squared_constant_term() {
        let t = jtheta_linear(&[q(1, 1)], q(3, 1));
        let t2 = ps_mul(&t, &t).unwrap();
        assert_eq!(t2.coefficient(q(1, 4), &[q(0, 1)]).unwrap(), Int::from(-2));
    }
}
