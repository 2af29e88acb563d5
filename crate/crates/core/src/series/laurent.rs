//! Sparse Laurent polynomials in `r` variables with integer coefficients.
//!
//! Exponents are integer numerators; the common denominator lives with the
//! owning series.

use crate::int::Int;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

/// Exponent vector (numerators over the owning series' denominator).
pub type Exp = SmallVec<[i32; 8]>;

const PAR_THRESHOLD: usize = 1 << 16;

#[derive(Clone, Debug, Default)]
pub struct LaurentPoly {
    rank: usize,
    terms: FxHashMap<Exp, Int>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, Exp::from_elem(0, rank), Int::ONE)
    }

    pub fn monomial(rank: usize, e: Exp, c: Int) -> Self {
        assert_eq!(e.len(), rank);
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, Int)>>(rank: usize, it: I) -> Self {
        let mut p = Self::zero(rank);
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, e: &[i32]) -> Int {
        self.terms.get(e).cloned().unwrap_or(Int::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &Int)> {
        self.terms.iter()
    }

    /// Terms sorted by exponent, for deterministic output.
    pub fn sorted(&self) -> Vec<(Exp, Int)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn add_term(&mut self, e: Exp, c: &Int) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.rank);
        match self.terms.entry(e) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, k: &Int) {
        if k.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &(c * k));
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &-c);
        }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiply every exponent by `k` (e.g. ζ ↦ ζ^a, or a change of denominator).
    pub fn scale_exponents(&self, k: i32) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * k).collect(), c.clone()))
                .collect(),
        }
    }

    /// Multiply by the monomial ζ^v.
    pub fn shift(&self, v: &[i32]) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(v).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Apply an arbitrary exponent map; colliding images are summed.
    pub fn map_exponents<F: Fn(&[i32]) -> Exp>(&self, new_rank: usize, f: F) -> LaurentPoly {
        let mut out = LaurentPoly::zero(new_rank);
        for (e, c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.rank, other.rank);
        let (a, b) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if a.is_empty() || b.is_empty() {
            return Self::zero(self.rank);
        }
        let bv: Vec<(&Exp, &Int)> = b.terms.iter().collect();
        if a.len() * b.len() < PAR_THRESHOLD {
            let mut out: FxHashMap<Exp, Int> = FxHashMap::default();
            mul_into(&mut out, a.terms.iter(), &bv);
            return Self::finish(self.rank, out);
        }
        let av: Vec<(&Exp, &Int)> = a.terms.iter().collect();
        let chunk = (av.len() / (4 * rayon::current_num_threads()).max(1)).max(64);
        let parts: Vec<FxHashMap<Exp, Int>> = av
            .par_chunks(chunk)
            .map(|ch| {
                let mut out = FxHashMap::default();
                mul_into(&mut out, ch.iter().copied(), &bv);
                out
            })
            .collect();
        let mut it = parts.into_iter();
        let mut out = it.next().unwrap_or_default();
        for p in it {
            for (e, c) in p {
                match out.entry(e) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += &c;
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        Self::finish(self.rank, out)
    }

    fn finish(rank: usize, mut terms: FxHashMap<Exp, Int>) -> LaurentPoly {
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { rank, terms }
    }

    /// Exact quotient by `1 - ζ^{-w}`, or `None` if a remainder is left.
    ///
    /// Monomials are grouped into chains `rep + t·w`; along each chain the
    /// quotient is the suffix sum of the dividend.
    pub fn div_one_minus(&self, w: &[i32]) -> Option<LaurentPoly> {
        let i = w.iter().position(|&x| x != 0)?;
        let wi = w[i];
        let mut chains: FxHashMap<Exp, Vec<(i32, &Int)>> = FxHashMap::default();
        for (e, c) in &self.terms {
            let t = e[i].div_euclid(wi);
            let rep: Exp = e.iter().zip(w).map(|(x, y)| x - t * y).collect();
            chains.entry(rep).or_default().push((t, c));
        }
        let mut out = FxHashMap::default();
        for (rep, mut ch) in chains {
            ch.sort_by_key(|x| std::cmp::Reverse(x.0));
            let mut acc = Int::ZERO;
            let mut idx = 0;
            let hi = ch[0].0;
            let lo = ch[ch.len() - 1].0;
            let mut t = hi;
            while t >= lo {
                while idx < ch.len() && ch[idx].0 == t {
                    acc += ch[idx].1;
                    idx += 1;
                }
                if !acc.is_zero() {
                    let e: Exp = rep.iter().zip(w).map(|(x, y)| x + t * y).collect();
                    out.insert(e, acc.clone());
                }
                t -= 1;
            }
            if !acc.is_zero() {
                return None;
            }
        }
        Some(LaurentPoly {
            rank: self.rank,
            terms: out,
        })
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact_scalar(&self, d: &Int) -> Option<LaurentPoly> {
        let mut terms = FxHashMap::default();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), c.div_exact(d)?);
        }
        Some(LaurentPoly {
            rank: self.rank,
            terms,
        })
    }
}

fn mul_into<'a, I>(out: &mut FxHashMap<Exp, Int>, a: I, b: &[(&Exp, &Int)])
where
    I: Iterator<Item = (&'a Exp, &'a Int)>,
{
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exp = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            out.entry(e).or_insert(Int::ZERO).add_mul(ca, cb);
        }
    }
}
