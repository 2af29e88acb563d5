//! Finite quadratic modules D = L^∨/L.

use super::linalg::{self, IMat, Mat};
use super::snf::{smith, unimodular_inverse};
use crate::cyclotomic::{lcm, CycloField, Cyc};
use crate::error::{Error, Result};
use crate::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Element coordinates with respect to the generators.
pub type Elem = Vec<i64>;

/// Link from a discriminant form back to the even lattice it came from.
#[derive(Clone, Debug)]
pub struct LatticeLink {
    pub gram: IMat,
    pub gram_inv: Mat,
    /// Rows of the Smith transform U restricted to the nontrivial factors.
    pub u_rows: Vec<Vec<i128>>,
    /// Columns of U⁻¹ for the nontrivial factors: generator functionals.
    pub generators: Vec<Vec<i64>>,
}

/// A finite abelian group ⊕ Z/d_i with a Q/Z-valued quadratic form, stored
/// through its values on generators over a common denominator.
#[derive(Clone, Debug)]
pub struct DiscriminantFormData {
    pub orders: Vec<i64>,
    /// Common denominator of all q(g_i) and b(g_i, g_j); equals the level.
    pub den: i64,
    /// den · q(g_i) mod den.
    pub q_gen: Vec<i64>,
    /// den · b(g_i, g_j) mod den.
    pub b_gen: Vec<Vec<i64>>,
    pub lattice: Option<LatticeLink>,
}

fn frac_mod1(x: Q) -> Q {
    x - x.floor()
}

impl DiscriminantFormData {
    /// Build from generator orders and values of q and b on generators.
    pub fn from_generators(orders: Vec<i64>, q: &[Q], b: &[Vec<Q>]) -> Result<Self> {
        let k = orders.len();
        let mut den = 1i64;
        for i in 0..k {
            den = den.lcm(frac_mod1(q[i]).denom());
            for j in 0..k {
                if i != j {
                    den = den.lcm(frac_mod1(b[i][j]).denom());
                }
            }
        }
        let to_num = |x: Q| (frac_mod1(x) * Q::from_integer(den)).to_integer();
        let q_gen: Vec<i64> = q.iter().map(|x| to_num(*x)).collect();
        let mut b_gen = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                b_gen[i][j] = if i == j { to_num(q[i] * Q::from_integer(2)) } else { to_num(b[i][j]) };
            }
        }
        let d = DiscriminantFormData {
            orders,
            den,
            q_gen,
            b_gen,
            lattice: None,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.orders.len() {
            let o = self.orders[i];
            // o·g_i = 0 forces o²q(g_i) ∈ Z and o·b(g_i, ·) ∈ Z
            if (o * o * self.q_gen[i]) % self.den != 0 {
                return Err(Error::Invalid("q is not well defined on the group".into()));
            }
            for j in 0..self.orders.len() {
                if (o * self.b_gen[i][j]) % self.den != 0 {
                    return Err(Error::Invalid("b is not well defined on the group".into()));
                }
            }
        }
        Ok(())
    }

    /// D(L) for an even lattice L, via the Smith normal form of its Gram matrix.
    pub fn from_even_lattice(gram: &IMat) -> Result<Self> {
        let n = gram.len();
        if (0..n).any(|i| gram[i][i].rem_euclid(2) != 0) {
            return Err(Error::OddLattice);
        }
        let s = smith(gram);
        let uinv = unimodular_inverse(&s.u);
        let gram_inv = linalg::inverse(&linalg::to_q(gram))
            .ok_or_else(|| Error::Invalid("degenerate Gram matrix".into()))?;
        let mut orders = Vec::new();
        let mut u_rows = Vec::new();
        let mut gens = Vec::new();
        for i in 0..n {
            if s.diag[i] > 1 {
                orders.push(s.diag[i] as i64);
                u_rows.push(s.u[i].clone());
                gens.push((0..n).map(|r| uinv[r][i] as i64).collect::<Vec<i64>>());
            }
        }
        let gq: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| g.iter().map(|x| Q::from_integer(*x)).collect())
            .collect();
        let k = gens.len();
        let half = Q::new(1, 2);
        let q: Vec<Q> = gq
            .iter()
            .map(|g| linalg::bilinear(&gram_inv, g, g) * half)
            .collect();
        let b: Vec<Vec<Q>> = (0..k)
            .map(|i| (0..k).map(|j| linalg::bilinear(&gram_inv, &gq[i], &gq[j])).collect())
            .collect();
        let mut d = Self::from_generators(orders, &q, &b)?;
        d.lattice = Some(LatticeLink {
            gram: gram.clone(),
            gram_inv,
            u_rows,
            generators: gens,
        });
        Ok(d)
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product::<i64>() as usize
    }

    pub fn level(&self) -> i64 {
        self.den
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.orders.len()]
    }

    /// Elements in mixed-radix order; index 0 is the identity.
    pub fn element(&self, mut idx: usize) -> Elem {
        let mut a = Vec::with_capacity(self.orders.len());
        for &o in &self.orders {
            a.push((idx % o as usize) as i64);
            idx /= o as usize;
        }
        a
    }

    pub fn index_of(&self, a: &[i64]) -> usize {
        let mut idx = 0usize;
        for (x, &o) in a.iter().zip(&self.orders).rev() {
            idx = idx * o as usize + x.rem_euclid(o) as usize;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Elem {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y).rem_euclid(*o))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> Elem {
        a.iter().zip(&self.orders).map(|(x, o)| (-x).rem_euclid(*o)).collect()
    }

    pub fn mul(&self, k: i64, a: &[i64]) -> Elem {
        a.iter().zip(&self.orders).map(|(x, o)| (k * x).rem_euclid(*o)).collect()
    }

    pub fn order_of(&self, a: &[i64]) -> i64 {
        a.iter()
            .zip(&self.orders)
            .fold(1, |acc, (x, o)| acc.lcm(&(o / x.gcd(o))))
    }

    /// den · q(a) mod den.
    pub fn q_num(&self, a: &[i64]) -> i64 {
        let d = self.den as i128;
        let mut s: i128 = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] as i128;
            s += ai * ai % d * self.q_gen[i] as i128;
            for j in i + 1..a.len() {
                if a[j] != 0 {
                    s += ai * a[j] as i128 % d * self.b_gen[i][j] as i128;
                }
            }
            s %= d;
        }
        s.rem_euclid(d) as i64
    }

    pub fn q(&self, a: &[i64]) -> Q {
        Q::new(self.q_num(a), self.den)
    }

    /// den · b(a, c) mod den.
    pub fn b_num(&self, a: &[i64], c: &[i64]) -> i64 {
        let d = self.den as i128;
        let mut s: i128 = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..c.len() {
                if c[j] != 0 {
                    s += (a[i] as i128 * c[j] as i128) % d * self.b_gen[i][j] as i128;
                    s %= d;
                }
            }
        }
        s.rem_euclid(d) as i64
    }

    pub fn b(&self, a: &[i64], c: &[i64]) -> Q {
        Q::new(self.b_num(a, c), self.den)
    }

    /// Class of an integral functional on the lattice (pairings with its basis).
    pub fn class_of(&self, c: &[i64]) -> Result<Elem> {
        let link = self
            .lattice
            .as_ref()
            .ok_or_else(|| Error::Invalid("discriminant form has no lattice".into()))?;
        Ok(link
            .u_rows
            .iter()
            .zip(&self.orders)
            .map(|(row, o)| {
                let s: i128 = row.iter().zip(c).map(|(u, x)| u * *x as i128).sum();
                s.rem_euclid(*o as i128) as i64
            })
            .collect())
    }

    /// Class of a rational functional; errors unless it is integral.
    pub fn class_of_q(&self, c: &[Q]) -> Result<Elem> {
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotInDual);
        }
        let ci: Vec<i64> = c.iter().map(|x| x.to_integer()).collect();
        self.class_of(&ci)
    }

    /// A functional representing the element.
    pub fn representative(&self, a: &[i64]) -> Option<Vec<i64>> {
        let link = self.lattice.as_ref()?;
        let n = link.gram.len();
        let mut v = vec![0i64; n];
        for (g, x) in link.generators.iter().zip(a) {
            for r in 0..n {
                v[r] += g[r] * x;
            }
        }
        Some(v)
    }

    /// Invariant factors of the underlying group.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self.orders.len();
        let diag: IMat = (0..k)
            .map(|i| (0..k).map(|j| if i == j { self.orders[i] } else { 0 }).collect())
            .collect();
        smith(&diag)
            .diag
            .into_iter()
            .map(|x| x as i64)
            .filter(|x| *x > 1)
            .collect()
    }

    /// Multiset of q-values.
    pub fn q_multiset(&self) -> BTreeMap<Q, usize> {
        let mut counts = vec![0usize; self.den as usize];
        for a in self.elements() {
            counts[self.q_num(&a) as usize] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(k, c)| (Q::new(k as i64, self.den), c))
            .collect()
    }

    /// Field order used for Gauss sums and the Weil representation.
    pub fn field_order(&self) -> usize {
        lcm(8, self.den as usize)
    }

    /// Σ_γ e(q(γ)) in Q(ζ_M).
    pub fn gauss_sum(&self, field: &CycloField) -> Cyc {
        let m = field.order() as i64;
        assert_eq!(m % self.den, 0);
        let mut counts = vec![BigRational::zero(); m as usize];
        for a in self.elements() {
            let k = self.q_num(&a) * (m / self.den);
            counts[k as usize] += BigRational::from_integer(BigInt::from(1));
        }
        field.from_exponents(&counts)
    }

    /// The residue s mod 8 with Σ e(q(γ)) = √|D| e(s/8).
    pub fn milgram_signature(&self) -> Result<u8> {
        let field = CycloField::new(self.field_order());
        let g = self.gauss_sum(&field);
        let root = field.sqrt(self.size() as u64).ok_or(Error::MilgramFailure)?;
        for s in 0..8 {
            if field.mul(&root, &field.e(s, 8)) == g {
                return Ok(s as u8);
            }
        }
        Err(Error::MilgramFailure)
    }

    /// The subgroup of elements of p-power order.
    pub fn primary_part(&self, p: i64) -> Result<DiscriminantFormData> {
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (i, &o) in self.orders.iter().enumerate() {
            let mut pp = 1;
            let mut m = o;
            while m % p == 0 {
                m /= p;
                pp *= p;
            }
            if pp > 1 {
                let mut g = self.zero();
                g[i] = m % o;
                gens.push(g);
                orders.push(pp);
            }
        }
        self.subform(&gens, orders)
    }

    /// The form restricted to the subgroup ⊕⟨h_i⟩ (assumed direct).
    pub fn subform(&self, gens: &[Elem], orders: Vec<i64>) -> Result<DiscriminantFormData> {
        let q: Vec<Q> = gens.iter().map(|g| self.q(g)).collect();
        let b: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| gens.iter().map(|h| self.b(g, h)).collect())
            .collect();
        DiscriminantFormData::from_generators(orders, &q, &b)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &DiscriminantFormData) -> Result<DiscriminantFormData> {
        let k1 = self.orders.len();
        let k = k1 + other.orders.len();
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut q = Vec::with_capacity(k);
        let mut b = vec![vec![Q::zero(); k]; k];
        for i in 0..k1 {
            q.push(Q::new(self.q_gen[i], self.den));
            for j in 0..k1 {
                b[i][j] = Q::new(self.b_gen[i][j], self.den);
            }
        }
        for i in 0..other.orders.len() {
            q.push(Q::new(other.q_gen[i], other.den));
            for j in 0..other.orders.len() {
                b[k1 + i][k1 + j] = Q::new(other.b_gen[i][j], other.den);
            }
        }
        DiscriminantFormData::from_generators(orders, &q, &b)
    }

    /// The form q ↦ t·q on the same group (t = −1 gives D(−1)).
    pub fn rescaled(&self, t: i64) -> Result<DiscriminantFormData> {
        let k = self.orders.len();
        let q: Vec<Q> = (0..k).map(|i| Q::new(t * self.q_gen[i], self.den)).collect();
        let b: Vec<Vec<Q>> = (0..k)
            .map(|i| (0..k).map(|j| Q::new(t * self.b_gen[i][j], self.den)).collect())
            .collect();
        DiscriminantFormData::from_generators(self.orders.clone(), &q, &b)
    }

    /// b is nondegenerate: no nonzero element pairs trivially with all generators.
    pub fn is_nondegenerate(&self) -> bool {
        let k = self.orders.len();
        self.elements().skip(1).all(|a| {
            (0..k).any(|j| {
                let mut g = self.zero();
                g[j] = 1;
                self.b_num(&a, &g) != 0
            })
        })
    }
}

/// Summary invariants of a finite quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteQfInvariants {
    pub order: usize,
    pub invariant_factors: Vec<i64>,
    pub level: i64,
    pub signature: u8,
    /// q-value (as "p/q") to multiplicity.
    pub q_values: BTreeMap<String, usize>,
}

pub fn finite_qf_invariants(d: &DiscriminantFormData) -> Result<FiniteQfInvariants> {
    Ok(FiniteQfInvariants {
        order: d.size(),
        invariant_factors: d.invariant_factors(),
        level: d.level(),
        signature: d.milgram_signature()?,
        q_values: d
            .q_multiset()
            .into_iter()
            .map(|(q, c)| (crate::series::serialize::fmt_q(&q), c))
            .collect(),
    })
}

/// Orders of λ in L^∨/L and L_ev^∨/L_ev, and (λ, λ), for a dual vector given
/// by its pairings with the basis of L.
pub fn order_and_norm(
    c: &[Q],
    l: &super::gram::GramLattice,
    ev: &super::gram::EvenSublattice,
) -> Result<(i64, i64, Q)> {
    if c.iter().any(|x| !x.is_integer()) {
        return Err(Error::NotInDual);
    }
    let order_in = |g: &Mat, c: &[Q]| -> i64 {
        let inv = linalg::inverse(g).expect("nondegenerate");
        linalg::mat_vec(&inv, c)
            .iter()
            .fold(1i64, |acc, x| acc.lcm(x.denom()))
    };
    let c_ev = ev.restrict(c);
    Ok((
        order_in(&l.gram, c),
        order_in(&ev.lattice.gram, &c_ev),
        l.dual_norm(c),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_form() {
        let d = DiscriminantFormData::from_even_lattice(&vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(d.size(), 3);
        let ms = d.q_multiset();
        assert_eq!(ms.get(&Q::new(1, 3)), Some(&2));
        assert_eq!(d.milgram_signature().unwrap(), 2);
        assert!(d.is_nondegenerate());
    }

    #[test]
    fn odd_lattice_rejected() {
        assert_eq!(
            DiscriminantFormData::from_even_lattice(&vec![vec![1]]).unwrap_err(),
            Error::OddLattice
        );
    }

    #[test]
    fn class_and_representative_agree() {
        let g = vec![vec![4, 3, 2, 1], vec![3, 6, 4, 2], vec![2, 4, 6, 3], vec![1, 2, 3, 4]];
        let d = DiscriminantFormData::from_even_lattice(&g).unwrap();
        assert_eq!(d.size(), 125);
        for a in d.elements().take(40) {
            let r = d.representative(&a).unwrap();
            assert_eq!(d.class_of(&r).unwrap(), a);
        }
    }
}
