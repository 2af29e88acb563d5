//! Canonical serialization of truncated series.

use super::laurent::{Exp, LaurentPoly};
use super::puiseux::PuiseuxSeries;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::Q;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Always `p/q`, including integers.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub n: String,
    pub l: Vec<String>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub rank: usize,
    pub q_prec: String,
    pub terms: Vec<SeriesEntry>,
}

/// Sorted `(q-exponent, ζ-exponent, coefficient)` triples.
pub fn sorted_terms(s: &PuiseuxSeries) -> Vec<(Q, Vec<Q>, Int)> {
    let zd = s.z_den() as i64;
    let mut out = Vec::with_capacity(s.num_terms());
    for (n, p) in s.levels() {
        let nq = Q::new(n, s.q_den());
        let mut row: Vec<(Vec<Q>, Int)> = p
            .iter()
            .map(|(e, c)| (e.iter().map(|x| Q::new(*x as i64, zd)).collect(), c.clone()))
            .collect();
        row.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(row.into_iter().map(|(l, c)| (nq, l, c)));
    }
    out
}

impl From<&PuiseuxSeries> for SeriesRepr {
    fn from(s: &PuiseuxSeries) -> Self {
        SeriesRepr {
            rank: s.rank(),
            q_prec: fmt_q(&s.q_prec()),
            terms: sorted_terms(s)
                .into_iter()
                .map(|(n, l, c)| SeriesEntry {
                    n: fmt_q(&n),
                    l: l.iter().map(fmt_q).collect(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SeriesRepr> for PuiseuxSeries {
    type Error = Error;
    fn try_from(r: &SeriesRepr) -> Result<Self> {
        let q_prec = parse_q(&r.q_prec)?;
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
            let l: Vec<Q> = t.l.iter().map(|x| parse_q(x)).collect::<Result<_>>()?;
            let c: Int = t
                .c
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient {:?}", t.c)))?;
            qd = qd.lcm(n.denom());
            for x in &l {
                zd = zd.lcm(x.denom());
            }
            parsed.push((n, l, c));
        }
        let mut levels: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (n, l, c) in parsed {
            let e: Exp = l
                .iter()
                .map(|x| (x * Q::from_integer(zd)).to_integer() as i32)
                .collect();
            levels
                .entry((n * Q::from_integer(qd)).to_integer())
                .or_insert_with(|| LaurentPoly::zero(r.rank))
                .add_term(e, &c);
        }
        Ok(PuiseuxSeries::from_levels(
            r.rank, qd, zd as i32, q_prec, levels,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::special::jtheta_linear;

    #[test]
    fn roundtrip() {
        let t = jtheta_linear(&[Q::new(1, 1), Q::new(-1, 3)], Q::new(4, 1));
        let r = SeriesRepr::from(&t);
        let back = PuiseuxSeries::try_from(&r).unwrap();
        assert_eq!(back, t);
        assert_eq!(SeriesRepr::from(&back), r);
        assert_eq!(r.terms[0].n, "1/8");
    }
}
