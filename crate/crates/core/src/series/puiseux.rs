//! Truncated Puiseux series in `q` with Laurent-polynomial coefficients.

use super::laurent::{Exp, LaurentPoly};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::Q;
use num_integer::Integer;
use std::collections::BTreeMap;

/// A truncated series `Σ_n c_n(ζ) q^n` known for all `n < q_prec`.
///
/// q-exponents are stored as numerators over `q_den`, ζ-exponents as
/// numerators over `z_den`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    rank: usize,
    q_den: i64,
    z_den: i32,
    terms: BTreeMap<i64, LaurentPoly>,
    q_prec: Q,
}

/// A factor `c·ζ^v·(1 − ζ^{−w})` of a leading coefficient, exponents over
/// the divisor's `z_den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFactor {
    pub coeff: Int,
    pub shift: Exp,
    pub step: Exp,
}

impl BinomialFactor {
    pub fn as_poly(&self) -> LaurentPoly {
        let rank = self.shift.len();
        let mut p = LaurentPoly::monomial(rank, self.shift.clone(), self.coeff.clone());
        let e: Exp = self.shift.iter().zip(&self.step).map(|(a, b)| a - b).collect();
        p.add_term(e, &-&self.coeff);
        p
    }
}

pub(crate) fn ceil_mul(p: Q, d: i64) -> i64 {
    let x = p * Q::from_integer(d);
    x.ceil().to_integer()
}

impl PuiseuxSeries {
    /// The zero series known below `q_prec`.
    pub fn zero(rank: usize, q_prec: Q) -> Self {
        PuiseuxSeries {
            rank,
            q_den: 1,
            z_den: 1,
            terms: BTreeMap::new(),
            q_prec,
        }
    }

    pub fn one(rank: usize, q_prec: Q) -> Self {
        let mut s = Self::zero(rank, q_prec);
        s.insert_level(0, LaurentPoly::one(rank));
        s
    }

    /// Build from raw levels; levels at or beyond the truncation are dropped.
    pub fn from_levels(
        rank: usize,
        q_den: i64,
        z_den: i32,
        q_prec: Q,
        levels: impl IntoIterator<Item = (i64, LaurentPoly)>,
    ) -> Self {
        assert!(q_den > 0 && z_den > 0);
        let mut s = PuiseuxSeries {
            rank,
            q_den,
            z_den,
            terms: BTreeMap::new(),
            q_prec,
        };
        for (n, p) in levels {
            s.insert_level(n, p);
        }
        s
    }

    fn insert_level(&mut self, n: i64, p: LaurentPoly) {
        assert_eq!(p.rank(), self.rank);
        if p.is_empty() || n >= self.prec_bound() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(old) => {
                old.add_assign(&p);
                if old.is_empty() {
                    self.terms.remove(&n);
                }
            }
            None => {
                self.terms.insert(n, p);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q_den(&self) -> i64 {
        self.q_den
    }

    pub fn z_den(&self) -> i32 {
        self.z_den
    }

    pub fn q_prec(&self) -> Q {
        self.q_prec
    }

    /// Exclusive bound on stored numerators.
    pub fn prec_bound(&self) -> i64 {
        ceil_mul(self.q_prec, self.q_den)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|p| p.len()).sum()
    }

    /// Levels as (numerator over `q_den`, coefficient).
    pub fn levels(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.terms.iter().map(|(n, p)| (*n, p))
    }

    pub fn level(&self, n: i64) -> Option<&LaurentPoly> {
        self.terms.get(&n)
    }

    /// Least stored q-exponent; the truncation bound for the zero series.
    pub fn order(&self) -> Q {
        match self.terms.keys().next() {
            Some(n) => Q::new(*n, self.q_den),
            None => self.q_prec,
        }
    }

    pub fn leading(&self) -> Option<(Q, &LaurentPoly)> {
        self.terms
            .iter()
            .next()
            .map(|(n, p)| (Q::new(*n, self.q_den), p))
    }

    pub fn with_prec(&self, q_prec: Q) -> Self {
        let q_prec = if q_prec < self.q_prec {
            q_prec
        } else {
            self.q_prec
        };
        let mut s = self.clone();
        s.q_prec = q_prec;
        let b = s.prec_bound();
        s.terms.retain(|n, _| *n < b);
        s
    }

    /// Re-express over larger denominators (multiples of the current ones).
    pub fn rescale(&self, q_den: i64, z_den: i32) -> Self {
        assert!(q_den % self.q_den == 0 && z_den % self.z_den == 0);
        let qf = q_den / self.q_den;
        let zf = z_den / self.z_den;
        PuiseuxSeries {
            rank: self.rank,
            q_den,
            z_den,
            terms: self
                .terms
                .iter()
                .map(|(n, p)| {
                    let p = if zf == 1 { p.clone() } else { p.scale_exponents(zf) };
                    (n * qf, p)
                })
                .collect(),
            q_prec: self.q_prec,
        }
    }

    /// Reduce both denominators as far as the stored exponents allow.
    pub fn reduced(&self) -> Self {
        let mut g = self.q_den;
        for n in self.terms.keys() {
            g = g.gcd(n);
        }
        let mut zg = self.z_den;
        for p in self.terms.values() {
            for (e, _) in p.iter() {
                for x in e {
                    zg = zg.gcd(x);
                }
            }
        }
        PuiseuxSeries {
            rank: self.rank,
            q_den: self.q_den / g,
            z_den: self.z_den / zg,
            terms: self
                .terms
                .iter()
                .map(|(n, p)| {
                    let p = if zg == 1 {
                        p.clone()
                    } else {
                        p.map_exponents(self.rank, |e| e.iter().map(|x| x / zg).collect())
                    };
                    (n / g, p)
                })
                .collect(),
            q_prec: self.q_prec,
        }
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.rank != b.rank {
            return Err(Error::RankMismatch {
                left: a.rank,
                right: b.rank,
            });
        }
        let qd = a.q_den.lcm(&b.q_den);
        let zd = a.z_den.lcm(&b.z_den);
        let a2 = if (qd, zd) == (a.q_den, a.z_den) {
            a.clone()
        } else {
            a.rescale(qd, zd)
        };
        let b2 = if (qd, zd) == (b.q_den, b.z_den) {
            b.clone()
        } else {
            b.rescale(qd, zd)
        };
        Ok((a2, b2))
    }

    /// Coefficient of `q^n ζ^ℓ`; errors past the truncation.
    pub fn coefficient(&self, n: Q, l: &[Q]) -> Result<Int> {
        if l.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: l.len(),
            });
        }
        if n >= self.q_prec {
            return Err(Error::InsufficientPrecision {
                requested: n.to_string(),
                available: self.q_prec.to_string(),
            });
        }
        let nn = n * Q::from_integer(self.q_den);
        if !nn.is_integer() {
            return Ok(Int::ZERO);
        }
        let mut e = Exp::new();
        for x in l {
            let y = x * Q::from_integer(self.z_den as i64);
            if !y.is_integer() {
                return Ok(Int::ZERO);
            }
            e.push(y.to_integer() as i32);
        }
        Ok(self
            .terms
            .get(&nn.to_integer())
            .map(|p| p.get(&e))
            .unwrap_or(Int::ZERO))
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for p in s.terms.values_mut() {
            *p = p.neg();
        }
        s
    }

    pub fn scale(&self, k: &Int) -> Self {
        let mut s = self.clone();
        s.terms = s
            .terms
            .iter()
            .map(|(n, p)| (*n, p.scale(k)))
            .filter(|(_, p)| !p.is_empty())
            .collect();
        s
    }

    /// Multiply by `q^n ζ^v` (exponents as rationals).
    pub fn shift(&self, n: Q, v: &[Q]) -> Self {
        let qd = self.q_den.lcm(n.denom());
        let mut zd = self.z_den;
        for x in v {
            zd = zd.lcm(&(*x.denom() as i32));
        }
        let s = self.rescale(qd, zd);
        let dn = (n * Q::from_integer(qd)).to_integer();
        let dv: Exp = v
            .iter()
            .map(|x| (x * Q::from_integer(zd as i64)).to_integer() as i32)
            .collect();
        PuiseuxSeries {
            rank: s.rank,
            q_den: qd,
            z_den: zd,
            terms: s.terms.iter().map(|(k, p)| (k + dn, p.shift(&dv))).collect(),
            q_prec: self.q_prec + n,
        }
    }

    /// Apply a linear map to ζ-exponents: `ℓ ↦ f(ℓ)` with integer output
    /// numerators over `new_z_den`.
    pub fn map_zeta<F: Fn(&[i32]) -> Exp>(&self, new_rank: usize, new_z_den: i32, f: F) -> Self {
        let mut s = PuiseuxSeries {
            rank: new_rank,
            q_den: self.q_den,
            z_den: new_z_den,
            terms: BTreeMap::new(),
            q_prec: self.q_prec,
        };
        for (n, p) in &self.terms {
            s.insert_level(*n, p.map_exponents(new_rank, &f));
        }
        s
    }

    /// Semantic equality of two truncations up to the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = if self.q_prec < other.q_prec {
            self.q_prec
        } else {
            other.q_prec
        };
        match Self::common(&self.with_prec(p), &other.with_prec(p)) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        self.q_prec == other.q_prec && self.agrees_with(other)
    }
}

pub fn ps_add(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let (a, b) = PuiseuxSeries::common(a, b)?;
    let prec = a.q_prec.min(b.q_prec);
    let mut s = a.with_prec(prec);
    for (n, p) in &b.terms {
        s.insert_level(*n, p.clone());
    }
    Ok(s)
}

pub fn ps_sub(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    ps_add(a, &b.neg())
}

pub fn ps_mul(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let (a, b) = PuiseuxSeries::common(a, b)?;
    let prec = (a.q_prec + b.order()).min(b.q_prec + a.order());
    let mut s = PuiseuxSeries {
        rank: a.rank,
        q_den: a.q_den,
        z_den: a.z_den,
        terms: BTreeMap::new(),
        q_prec: prec,
    };
    let bound = s.prec_bound();
    for (na, pa) in &a.terms {
        for (nb, pb) in &b.terms {
            if na + nb >= bound {
                break;
            }
            s.insert_level(na + nb, pa.mul(pb));
        }
    }
    Ok(s)
}

/// Split off a unit leading monomial: returns `(n0, ζ^v, ±1)`.
fn unit_leading(a: &PuiseuxSeries) -> Result<(i64, Exp, Int)> {
    let (n0, lead) = a.terms.iter().next().ok_or(Error::NonUnitLeading)?;
    if lead.len() != 1 {
        return Err(Error::NonUnitLeading);
    }
    let (e, c) = lead.iter().next().unwrap();
    if !c.is_unit() {
        return Err(Error::NonUnitLeading);
    }
    Ok((*n0, e.clone(), c.clone()))
}

pub fn ps_invert(a: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let (n0, v, c) = unit_leading(a)?;
    let neg_v: Exp = v.iter().map(|x| -x).collect();
    // u = a / (c q^{n0} ζ^v), a unit with constant term 1
    let u: BTreeMap<i64, LaurentPoly> = a
        .terms
        .iter()
        .map(|(n, p)| (n - n0, p.shift(&neg_v).scale(&c)))
        .collect();
    let rel = a.prec_bound() - n0;
    let mut inv: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    inv.insert(0, LaurentPoly::one(a.rank));
    for k in 1..rel {
        let mut acc = LaurentPoly::zero(a.rank);
        for (j, uj) in u.range(1..=k) {
            if let Some(b) = inv.get(&(k - j)) {
                acc.sub_assign(&uj.mul(b));
            }
        }
        if !acc.is_empty() {
            inv.insert(k, acc);
        }
    }
    let q_prec = a.q_prec - Q::new(2 * n0, a.q_den);
    Ok(PuiseuxSeries::from_levels(
        a.rank,
        a.q_den,
        a.z_den,
        q_prec,
        inv.into_iter().map(|(k, p)| (k - n0, p.shift(&neg_v).scale(&c))),
    ))
}

pub fn ps_pow(a: &PuiseuxSeries, e: i64) -> Result<PuiseuxSeries> {
    if e < 0 {
        return ps_pow(&ps_invert(a)?, -e);
    }
    if e == 0 {
        return Ok(PuiseuxSeries::one(a.rank, a.q_prec - a.order()));
    }
    let mut result: Option<PuiseuxSeries> = None;
    let mut base = a.clone();
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => ps_mul(&r, &base)?,
            });
        }
        k >>= 1;
        if k > 0 {
            base = ps_mul(&base, &base)?;
        }
    }
    Ok(result.expect("e > 0"))
}

/// Exact quotient `num / den` where the leading coefficient of `den` is the
/// product of the supplied binomial factors.
pub fn ps_exact_div(
    num: &PuiseuxSeries,
    den: &PuiseuxSeries,
    factors: &[BinomialFactor],
) -> Result<PuiseuxSeries> {
    if factors.is_empty() && !den.terms.values().next().is_some_and(|p| p.len() == 1) {
        return Err(Error::MissingFactorization);
    }
    let orig_z = den.z_den;
    let (num, den) = PuiseuxSeries::common(num, den)?;
    let (d0, lead) = den
        .terms
        .iter()
        .next()
        .map(|(n, p)| (*n, p.clone()))
        .ok_or(Error::NonUnitLeading)?;
    // factors are given over the divisor's own z_den; bring them to the common one
    let zf = num.z_den / orig_z;
    let factors: Vec<BinomialFactor> = factors
        .iter()
        .map(|f| BinomialFactor {
            coeff: f.coeff.clone(),
            shift: f.shift.iter().map(|x| x * zf).collect(),
            step: f.step.iter().map(|x| x * zf).collect(),
        })
        .collect();
    let lead_check = if factors.is_empty() {
        lead.clone()
    } else {
        factors
            .iter()
            .fold(LaurentPoly::one(den.rank), |acc, f| acc.mul(&f.as_poly()))
    };
    if lead_check != lead {
        return Err(Error::FactorizationMismatch);
    }
    let divide_lead = |p: &LaurentPoly| -> Option<LaurentPoly> {
        if factors.is_empty() {
            let (e, c) = lead.iter().next()?;
            let neg: Exp = e.iter().map(|x| -x).collect();
            return p.shift(&neg).div_exact_scalar(c);
        }
        let mut cur = p.clone();
        for f in &factors {
            let neg: Exp = f.shift.iter().map(|x| -x).collect();
            cur = cur.shift(&neg).div_exact_scalar(&f.coeff)?;
            cur = cur.div_one_minus(&f.step)?;
        }
        Some(cur)
    };
    let ord_num = num.terms.keys().next().copied().unwrap_or(num.prec_bound());
    let start = ord_num - d0;
    // Q known below min(num.prec - d0, den.prec - d0 + ord Q)
    let bound = (num.prec_bound() - d0).min(den.prec_bound() - d0 + start);
    let mut quot: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for k in start..bound {
        let mut r = num
            .terms
            .get(&(k + d0))
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(num.rank));
        for (qn, qp) in &quot {
            if let Some(dp) = den.terms.get(&(k - qn + d0)) {
                r.sub_assign(&qp.mul(dp));
            }
        }
        if r.is_empty() {
            continue;
        }
        let qk = divide_lead(&r).ok_or_else(|| Error::InexactDivision {
            at: Q::new(k, num.q_den).to_string(),
        })?;
        quot.insert(k, qk);
    }
    let q_prec = Q::new(bound, num.q_den);
    Ok(PuiseuxSeries::from_levels(
        num.rank, num.q_den, num.z_den, q_prec, quot,
    ))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::special::{eta, jtheta_int};
    use smallvec::smallvec;

    fn qq(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn one_minus_q(prec: i64) -> PuiseuxSeries {
        let mut m = LaurentPoly::zero(0);
        m.add_term(Exp::new(), &Int::from(-1));
        PuiseuxSeries::from_levels(0, 1, 1, qq(prec), [(0, LaurentPoly::one(0)), (1, m)])
    }

    #[test]
    fn geometric_series() {
        let inv = ps_invert(&one_minus_q(6)).unwrap();
        for k in 0..6 {
            assert_eq!(inv.coefficient(qq(k), &[]).unwrap(), Int::ONE);
        }
        assert!(inv.coefficient(qq(6), &[]).is_err());
    }

    #[test]
    fn eta_times_inverse() {
        let e = eta(qq(5), 2);
        let prod = ps_mul(&e, &ps_invert(&e).unwrap()).unwrap();
        assert_eq!(prod, PuiseuxSeries::one(2, prod.q_prec()));
        assert_eq!(prod.q_prec(), Q::new(5 * 24 - 1, 24));
    }

    #[test]
    fn non_unit_leading_rejected() {
        let t = jtheta_int(&[1], qq(3));
        assert_eq!(ps_invert(&t).unwrap_err(), Error::NonUnitLeading);
        assert!(ps_pow(&t, -1).is_err());
    }

    #[test]
    fn add_inverse_and_identity() {
        let e = eta(qq(4), 0);
        let z = ps_add(&e, &e.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.q_prec(), e.q_prec());
        let two = ps_add(&e, &e).unwrap();
        assert_eq!(two.coefficient(Q::new(1, 24), &[]).unwrap(), Int::from(2));
        assert_eq!(ps_add(&e, &PuiseuxSeries::zero(0, qq(9))).unwrap(), e);
        assert!(ps_add(&e, &eta(qq(4), 1)).is_err());
    }

    #[test]
    fn division_by_self_and_by_unit() {
        let t = jtheta_int(&[1, 2], qq(5));
        let f = BinomialFactor {
            coeff: Int::ONE,
            shift: smallvec![1, 2],
            step: smallvec![2, 4],
        };
        let one = ps_exact_div(&t, &t, std::slice::from_ref(&f)).unwrap();
        assert_eq!(one, PuiseuxSeries::one(2, one.q_prec()));

        let u = eta(qq(5), 1).shift(Q::new(-1, 24), &[Q::from_integer(0)]);
        let mut b = LaurentPoly::zero(1);
        b.add_term(smallvec![1], &Int::from(-1));
        let x = PuiseuxSeries::from_levels(1, 1, 1, qq(5), [(0, LaurentPoly::one(1)), (1, b)]);
        let num = ps_mul(&x, &u).unwrap();
        let quot = ps_exact_div(&num, &u, &[]).unwrap();
        assert_eq!(quot, x.with_prec(quot.q_prec()));
    }

    #[test]
    fn division_reports_remainder_and_mismatch() {
        let t = jtheta_int(&[1], qq(4));
        let f = BinomialFactor {
            coeff: Int::ONE,
            shift: smallvec![1],
            step: smallvec![2],
        };
        let num = PuiseuxSeries::one(1, qq(4));
        assert!(matches!(
            ps_exact_div(&num, &t, std::slice::from_ref(&f)),
            Err(Error::InexactDivision { .. })
        ));
        let wrong = BinomialFactor {
            coeff: Int::from(-1),
            ..f
        };
        assert_eq!(
            ps_exact_div(&num, &t, &[wrong]).unwrap_err(),
            Error::FactorizationMismatch
        );
        assert_eq!(ps_exact_div(&num, &t, &[]).unwrap_err(), Error::MissingFactorization);
    }
}
