//! Truncated Fourier–Jacobi expansions `Σ_m φ_m(τ, 𝔷) ξ^m`.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::series::serialize::{fmt_q, parse_q};
use crate::series::{Exp, LaurentPoly, PuiseuxSeries};
use crate::Q;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Coefficients of `q^n ζ^ℓ ξ^m` for `n ≤ q_max`, `m ≤ xi_max` (both inclusive).
///
/// q-exponents are numerators over `q_den`, ζ-exponents over `z_den`.
#[derive(Clone, Debug)]
pub struct TripleSeries {
    rank: usize,
    q_den: i64,
    z_den: i32,
    q_max: Q,
    xi_max: u32,
    terms: BTreeMap<(u32, i64), LaurentPoly>,
}

/// One coefficient on which two triple series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: String,
    pub l: Vec<String>,
    pub m: u32,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl TripleSeries {
    pub fn zero(rank: usize, q_max: Q, xi_max: u32) -> Self {
        TripleSeries {
            rank,
            q_den: 1,
            z_den: 1,
            q_max,
            xi_max,
            terms: BTreeMap::new(),
        }
    }

    /// Empty series over the given denominators.
    pub fn with_denominators(rank: usize, q_den: i64, z_den: i32, q_max: Q, xi_max: u32) -> Self {
        assert!(q_den > 0 && z_den > 0);
        TripleSeries {
            q_den,
            z_den,
            ..Self::zero(rank, q_max, xi_max)
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q_max(&self) -> Q {
        self.q_max
    }

    pub fn xi_max(&self) -> u32 {
        self.xi_max
    }

    pub fn q_den(&self) -> i64 {
        self.q_den
    }

    pub fn z_den(&self) -> i32 {
        self.z_den
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|p| p.len()).sum()
    }

    fn q_bound(&self) -> i64 {
        (self.q_max * Q::from_integer(self.q_den)).floor().to_integer()
    }

    /// Add `p·q^{n/q_den}·ξ^m`; silently drops anything past the truncation.
    pub fn add_level(&mut self, m: u32, n: i64, p: &LaurentPoly) {
        assert_eq!(p.rank(), self.rank);
        if m > self.xi_max || n > self.q_bound() || p.is_empty() {
            return;
        }
        let e = self
            .terms
            .entry((m, n))
            .or_insert_with(|| LaurentPoly::zero(self.rank));
        e.add_assign(p);
        if e.is_empty() {
            self.terms.remove(&(m, n));
        }
    }

    /// Assemble from FJ layers; each layer must be known through `q_max`.
    pub fn from_layers(
        rank: usize,
        q_max: Q,
        xi_max: u32,
        layers: impl IntoIterator<Item = (u32, PuiseuxSeries)>,
    ) -> Result<Self> {
        let layers: Vec<(u32, PuiseuxSeries)> = layers.into_iter().collect();
        let mut out = Self::zero(rank, q_max, xi_max);
        for (_, s) in &layers {
            if s.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: s.rank(),
                });
            }
            out.q_den = out.q_den.lcm(&s.q_den());
            out.z_den = out.z_den.lcm(&s.z_den());
        }
        for (m, s) in layers {
            if m > xi_max {
                continue;
            }
            if s.q_prec() <= q_max {
                return Err(Error::InsufficientPrecision {
                    requested: q_max.to_string(),
                    available: s.q_prec().to_string(),
                });
            }
            let s = s.rescale(out.q_den, out.z_den);
            for (n, p) in s.levels() {
                out.add_level(m, n, p);
            }
        }
        Ok(out)
    }

    /// Re-express over larger denominators.
    pub fn rescale(&self, q_den: i64, z_den: i32) -> Self {
        assert!(q_den % self.q_den == 0 && z_den % self.z_den == 0);
        let qf = q_den / self.q_den;
        let zf = z_den / self.z_den;
        TripleSeries {
            q_den,
            z_den,
            terms: self
                .terms
                .iter()
                .map(|((m, n), p)| ((*m, n * qf), if zf == 1 { p.clone() } else { p.scale_exponents(zf) }))
                .collect(),
            ..self.clone()
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
        Ok((a.rescale(qd, zd), b.rescale(qd, zd)))
    }

    /// Restrict to a smaller box.
    pub fn truncate(&self, q_max: Q, xi_max: u32) -> Self {
        let mut out = TripleSeries {
            q_max: q_max.min(self.q_max),
            xi_max: xi_max.min(self.xi_max),
            terms: BTreeMap::new(),
            ..self.clone()
        };
        let b = out.q_bound();
        out.terms = self
            .terms
            .iter()
            .filter(|((m, n), _)| *m <= out.xi_max && *n <= b)
            .map(|(k, p)| (*k, p.clone()))
            .collect();
        out
    }

    /// The coefficient of `ξ^m` as a series known through `q_max`.
    pub fn layer(&self, m: u32) -> PuiseuxSeries {
        let prec = self.q_max + Q::new(1, self.q_den);
        PuiseuxSeries::from_levels(
            self.rank,
            self.q_den,
            self.z_den,
            prec,
            self.terms
                .range((m, i64::MIN)..=(m, i64::MAX))
                .map(|((_, n), p)| (*n, p.clone())),
        )
    }

    pub fn coefficient(&self, n: Q, l: &[Q], m: u32) -> Result<Int> {
        if n > self.q_max || m > self.xi_max {
            return Err(Error::InsufficientPrecision {
                requested: format!("q^{n} xi^{m}"),
                available: format!("q^{} xi^{}", self.q_max, self.xi_max),
            });
        }
        let nn = n * Q::from_integer(self.q_den);
        if !nn.is_integer() || l.len() != self.rank {
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
            .get(&(m, nn.to_integer()))
            .map(|p| p.get(&e))
            .unwrap_or(Int::ZERO))
    }

    /// Multiply by `ξ^k`.
    pub fn shift_xi(&self, k: u32) -> Self {
        let mut out = TripleSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((m, n), p) in &self.terms {
            out.add_level(m + k, *n, p);
        }
        out
    }

    /// Product truncated to the smaller box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other)?;
        let mut out = TripleSeries {
            q_max: a.q_max.min(b.q_max),
            xi_max: a.xi_max.min(b.xi_max),
            terms: BTreeMap::new(),
            ..a.clone()
        };
        let qb = out.q_bound();
        for ((m1, n1), p1) in &a.terms {
            for ((m2, n2), p2) in &b.terms {
                if m1 + m2 > out.xi_max || n1 + n2 > qb {
                    continue;
                }
                let prod = p1.mul(p2);
                out.add_level(m1 + m2, n1 + n2, &prod);
            }
        }
        Ok(out)
    }

    /// Sorted `(n, ℓ, m, c)` entries.
    pub fn entries(&self) -> Vec<(Q, Vec<Q>, u32, Int)> {
        let zd = self.z_den as i64;
        let mut out = Vec::with_capacity(self.num_terms());
        for ((m, n), p) in &self.terms {
            let nq = Q::new(*n, self.q_den);
            for (e, c) in p.sorted() {
                out.push((nq, e.iter().map(|x| Q::new(*x as i64, zd)).collect(), *m, c));
            }
        }
        out.sort_by(|a, b| (a.2, a.0, &a.1).cmp(&(b.2, b.0, &b.1)));
        out
    }

    /// Coefficientwise comparison over the common box.
    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        let q_max = self.q_max.min(other.q_max);
        let xi_max = self.xi_max.min(other.xi_max);
        let (a, b) = Self::common(&self.truncate(q_max, xi_max), &other.truncate(q_max, xi_max))?;
        let zd = a.z_den as i64;
        let mut keys: Vec<(u32, i64)> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let empty = LaurentPoly::zero(a.rank);
        let mut compared = 0;
        let mut mismatches = Vec::new();
        for k in keys {
            let pa = a.terms.get(&k).unwrap_or(&empty);
            let pb = b.terms.get(&k).unwrap_or(&empty);
            let mut es: Vec<Exp> = pa.iter().chain(pb.iter()).map(|(e, _)| e.clone()).collect();
            es.sort();
            es.dedup();
            for e in es {
                compared += 1;
                let (x, y) = (pa.get(&e), pb.get(&e));
                if x != y {
                    mismatches.push(Mismatch {
                        n: fmt_q(&Q::new(k.1, a.q_den)),
                        l: e.iter().map(|v| fmt_q(&Q::new(*v as i64, zd))).collect(),
                        m: k.0,
                        left: x.to_string(),
                        right: y.to_string(),
                    });
                }
            }
        }
        Ok(Comparison {
            compared,
            mismatches,
        })
    }

    /// Swap the roles of `q` and `ξ` on the ζ⁰ slice: `(n, m) ↦ c(m, 0, n)`.
    pub fn zeta0_slice(&self) -> BTreeMap<(i64, u32), Int> {
        let zero: Exp = std::iter::repeat_n(0, self.rank).collect();
        let mut out = BTreeMap::new();
        for ((m, n), p) in &self.terms {
            let c = p.get(&zero);
            if !c.is_zero() && n % self.q_den == 0 {
                out.insert((n / self.q_den, *m), c);
            }
        }
        out
    }
}

impl PartialEq for TripleSeries {
    fn eq(&self, other: &Self) -> bool {
        self.q_max == other.q_max
            && self.xi_max == other.xi_max
            && self.compare(other).map(|c| c.is_equal()).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleEntry {
    pub n: String,
    pub l: Vec<String>,
    pub m: u32,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRepr {
    pub rank: usize,
    pub q_max: String,
    pub xi_max: u32,
    pub terms: Vec<TripleEntry>,
}

impl From<&TripleSeries> for TripleRepr {
    fn from(t: &TripleSeries) -> Self {
        TripleRepr {
            rank: t.rank,
            q_max: fmt_q(&t.q_max),
            xi_max: t.xi_max,
            terms: t
                .entries()
                .into_iter()
                .map(|(n, l, m, c)| TripleEntry {
                    n: fmt_q(&n),
                    l: l.iter().map(fmt_q).collect(),
                    m,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&TripleRepr> for TripleSeries {
    type Error = Error;

    fn try_from(r: &TripleRepr) -> Result<Self> {
        let mut parsed = Vec::with_capacity(r.terms.len());
        let mut qd = 1i64;
        let mut zd = 1i64;
        for t in &r.terms {
            if t.l.len() != r.rank {
                return Err(Error::RankMismatch {
                    left: r.rank,
                    right: t.l.len(),
                });
            }
            let n = parse_q(&t.n)?;
            let l = t.l.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>()?;
            let c: Int = t
                .c
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient {:?}", t.c)))?;
            qd = qd.lcm(n.denom());
            for x in &l {
                zd = zd.lcm(x.denom());
            }
            parsed.push((n, l, t.m, c));
        }
        let mut out = TripleSeries {
            rank: r.rank,
            q_den: qd,
            z_den: zd as i32,
            q_max: parse_q(&r.q_max)?,
            xi_max: r.xi_max,
            terms: BTreeMap::new(),
        };
        for (n, l, m, c) in parsed {
            let e: Exp = l
                .iter()
                .map(|x| (x * Q::from_integer(zd)).to_integer() as i32)
                .collect();
            let ni = (n * Q::from_integer(qd)).to_integer();
            out.add_level(m, ni, &LaurentPoly::monomial(r.rank, e, c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn mono(n: i64, e: i32, m: u32, c: i64) -> TripleSeries {
        let mut t = TripleSeries::zero(1, Q::from_integer(3), 3);
        t.add_level(m, n, &LaurentPoly::monomial(1, smallvec![e], Int::from(c)));
        t
    }

    #[test]
    fn mul_respects_box() {
        let a = mono(2, 1, 2, 3);
        let b = mono(1, -1, 1, 5);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coefficient(Q::from_integer(3), &[Q::from_integer(0)], 3).unwrap(), Int::from(15));
        let c = mono(2, 0, 2, 1);
        assert!(a.mul(&c).unwrap().is_zero());
    }

    #[test]
    fn compare_reports_position() {
        let a = mono(1, 2, 1, 4);
        let b = mono(1, 2, 1, 5);
        let c = a.compare(&b).unwrap();
        assert_eq!(c.compared, 1);
        assert_eq!(c.mismatches[0].m, 1);
        assert_eq!(c.mismatches[0].l, vec!["2/1".to_string()]);
    }

    #[test]
    fn repr_round_trip() {
        let mut a = mono(1, 2, 1, 4).mul(&mono(0, -1, 1, -7)).unwrap();
        a.add_level(0, 3, &LaurentPoly::monomial(1, smallvec![5], Int::from(11)));
        let r = TripleRepr::from(&a);
        let b = TripleSeries::try_from(&r).unwrap();
        assert_eq!(a, b);
        let js = serde_json::to_string(&r).unwrap();
        let r2: TripleRepr = serde_json::from_str(&js).unwrap();
        assert_eq!(r, r2);
    }
}
