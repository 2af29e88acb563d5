//! Joint fixed space of ρ(S) and ρ(T).
//!
//! ρ(T)-invariance forces support on isotropic elements. The remaining
//! equations ρ(S)v = v are solved modulo a prime p ≡ 1 mod M, which bounds the
//! dimension from above; the rationally reconstructed kernel basis is then
//! checked exactly in Q(ζ_M), which bounds it from below.

use super::modp::{prime_with_root, rational_reconstruct, rref, PrimeField};
use super::rep::{build_weilrep, WeilRepData};
use crate::error::{Error, Result};
use crate::lattice::{DiscriminantFormData, Elem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Primes tried before giving up on certification.
const ATTEMPTS: usize = 4;

#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub dimension: usize,
    /// Kernel basis in reduced echelon form, indexed like `form.elements()`.
    pub basis: Vec<Vec<BigRational>>,
    /// Indices of the isotropic elements.
    pub isotropic: Vec<usize>,
    pub prime: u64,
}

/// ρ(T)v = v and ρ(S)v = v, exactly.
pub fn is_invariant(w: &WeilRepData, v: &[BigRational]) -> bool {
    let d = &w.form;
    for (g, x) in d.elements().zip(v) {
        if !x.is_zero() && d.q_num(&g) != 0 {
            return false;
        }
    }
    let sv = w.apply_s(v);
    sv.iter()
        .zip(v)
        .all(|(y, x)| w.field.as_rational(y).is_some_and(|r| r == *x))
}

fn kernel_mod_p(w: &WeilRepData, iso: &[usize], f: PrimeField, omega: u64) -> Vec<Vec<u64>> {
    let d = &w.form;
    let m = w.field.order() as i64;
    let step = m / d.den;
    let elems: Vec<Elem> = d.elements().collect();
    let pw: Vec<u64> = (0..m).map(|k| f.pow(omega, k as u64)).collect();
    let gauss = elems
        .iter()
        .fold(0u64, |acc, g| f.add(acc, pw[(d.q_num(g) * step) as usize]));
    let c = f.mul(gauss, f.inv(d.size() as u64 % f.p));
    let cols = iso.len();
    let mut a: Vec<Vec<u64>> = elems
        .iter()
        .enumerate()
        .map(|(bi, beta)| {
            iso.iter()
                .map(|&gi| {
                    let x = f.mul(c, pw[(d.b_num(&elems[gi], beta) * step) as usize]);
                    if gi == bi {
                        f.sub(x, 1)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let pivots = rref(f, &mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, a[r][fc]);
            }
            v
        })
        .collect()
}

fn lift(v: &[u64], f: PrimeField) -> Option<Vec<BigRational>> {
    v.iter()
        .map(|x| {
            rational_reconstruct(*x, f.p)
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        })
        .collect()
}

/// Dimension and a certified basis of the ρ_D-invariants in C[D].
pub fn invariant_subspace(d: &DiscriminantFormData) -> Result<InvariantSpace> {
    let w = build_weilrep(d)?;
    invariant_subspace_of(&w)
}

pub fn invariant_subspace_of(w: &WeilRepData) -> Result<InvariantSpace> {
    let d = &w.form;
    let elems: Vec<Elem> = d.elements().collect();
    let iso: Vec<usize> = (0..elems.len()).filter(|i| d.q_num(&elems[*i]) == 0).collect();
    'prime: for attempt in 0..ATTEMPTS {
        let (f, omega) = prime_with_root(w.field.order() as u64, attempt);
        let kernel = kernel_mod_p(w, &iso, f, omega);
        let mut basis = Vec::with_capacity(kernel.len());
        for k in &kernel {
            let Some(small) = lift(k, f) else { continue 'prime };
            let mut v = vec![BigRational::zero(); elems.len()];
            for (x, &i) in small.into_iter().zip(&iso) {
                v[i] = x;
            }
            if !is_invariant(w, &v) {
                continue 'prime;
            }
            basis.push(v);
        }
        return Ok(InvariantSpace {
            dimension: basis.len(),
            basis,
            isotropic: iso,
            prime: f.p,
        });
    }
    Err(Error::CertificationFailed)
}

/// Rank of a list of rational vectors.
pub fn rank(vectors: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|r| !rows[*r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let k = &rows[r][c] / &pivot[c];
            for (x, y) in rows[r].iter_mut().zip(&pivot) {
                *x -= &k * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    rank(&all) == rank(basis)
}
