//! Eisenstein series G_k = −B_k/(2k) + Σ σ_{k−1}(n) qⁿ.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::series::{LaurentPoly, PuiseuxSeries};
use crate::Q;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Bernoulli numbers B_0..=B_n with B_1 = −1/2.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            // binom = C(m+1, j)
            s += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

#[derive(Clone, Debug)]
pub struct EisensteinSeries {
    pub weight: u32,
    /// −B_k/(2k).
    pub constant: BigRational,
    /// Σ_{n ≥ 1} σ_{k−1}(n) qⁿ.
    pub tail: PuiseuxSeries,
}

fn sigma(n: i64, e: u32) -> Int {
    let mut s = Int::ZERO;
    for d in 1..=n {
        if n % d == 0 {
            s += &Int::from(d).pow(e);
        }
    }
    s
}

pub fn eisenstein_gk(k: u32, prec: i64) -> Result<EisensteinSeries> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Invalid(format!("G_k needs even k ≥ 4, got {k}")));
    }
    let bk = bernoulli(k as usize).pop().expect("nonempty");
    let constant = -bk / BigRational::from_integer(BigInt::from(2 * k));
    let levels = (1..prec).map(|n| (n, LaurentPoly::monomial(0, Default::default(), sigma(n, k - 1))));
    Ok(EisensteinSeries {
        weight: k,
        constant,
        tail: PuiseuxSeries::from_levels(0, 1, 1, Q::from_integer(prec), levels),
    })
}
