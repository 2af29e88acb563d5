//! Gram lattices: R̲, its even sublattice, dual and shadow.

use super::linalg::{self, IMat, Mat};
use super::roots::RootDatum;
use crate::error::{Error, Result};
use crate::Q;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    /// Not an integral lattice (e.g. a dual).
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    pub gram: Mat,
}

impl GramLattice {
    pub fn new(gram: Mat) -> Result<Self> {
        if !linalg::is_symmetric(&gram) {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        Ok(GramLattice { gram })
    }

    pub fn from_int(g: &IMat) -> Result<Self> {
        Self::new(linalg::to_q(g))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> Q {
        linalg::det(&self.gram)
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.gram)
    }

    pub fn parity(&self) -> Parity {
        if !linalg::is_integral(&self.gram) {
            Parity::Rational
        } else if self.gram.iter().enumerate().all(|(i, r)| r[i].to_integer() % 2 == 0) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn int_gram(&self) -> Option<IMat> {
        linalg::to_int(&self.gram)
    }

    pub fn inverse(&self) -> Mat {
        linalg::inverse(&self.gram).expect("nondegenerate Gram matrix")
    }

    /// (ℓ, ℓ) for a dual vector given by its pairings `c` with the basis.
    pub fn dual_norm(&self, c: &[Q]) -> Q {
        linalg::bilinear(&self.inverse(), c, c)
    }

    /// Change of basis: rows of `b` in current coordinates.
    pub fn sublattice(&self, b: &IMat) -> GramLattice {
        let bq = linalg::to_q(b);
        let g = linalg::mul(&linalg::mul(&bq, &self.gram), &linalg::transpose(&bq));
        GramLattice { gram: g }
    }

    /// Rescale the form by `k`.
    pub fn scaled(&self, k: Q) -> GramLattice {
        GramLattice {
            gram: linalg::scale(&self.gram, k),
        }
    }
}

/// The index Gram matrix G = Σ_{r∈R⁺} γ_r γ_rᵀ of θ_R.
pub fn gram_underline_r(datum: &RootDatum) -> GramLattice {
    let n = datum.rank();
    let mut g = vec![vec![0i64; n]; n];
    for r in &datum.positive_roots {
        for i in 0..n {
            if r.gamma[i] == 0 {
                continue;
            }
            for j in 0..n {
                g[i][j] += r.gamma[i] * r.gamma[j];
            }
        }
    }
    GramLattice::from_int(&g).expect("symmetric by construction")
}

/// Gram matrix of Λ(R^∨)(h) in the fundamental coweight basis: h·A⁻¹ where
/// A is the simple-root Gram matrix, assembled blockwise.
pub fn coweight_model(datum: &RootDatum) -> GramLattice {
    let mut blocks = Vec::new();
    for (ci, &(_, k)) in datum.spec.components.iter().enumerate() {
        let off = datum.offsets[ci];
        let a: Mat = datum.cartan_gram[off..off + k]
            .iter()
            .map(|r| r[off..off + k].to_vec())
            .collect();
        let inv = linalg::inverse(&a).expect("Cartan Gram is nondegenerate");
        blocks.push(linalg::scale(&inv, datum.h[ci]));
    }
    GramLattice {
        gram: linalg::block_diag(&blocks),
    }
}

/// The even sublattice together with its basis in the coordinates of `L`.
#[derive(Clone, Debug)]
pub struct EvenSublattice {
    pub lattice: GramLattice,
    pub basis: IMat,
}

impl EvenSublattice {
    /// Restrict a functional on `L` (pairings with its basis) to `L_ev`.
    pub fn restrict(&self, c: &[Q]) -> Vec<Q> {
        self.basis
            .iter()
            .map(|row| row.iter().zip(c).map(|(b, x)| Q::from_integer(*b) * x).sum())
            .collect()
    }

    pub fn restrict_int(&self, c: &[i64]) -> Vec<i64> {
        self.basis
            .iter()
            .map(|row| row.iter().zip(c).map(|(b, x)| b * x).sum())
            .collect()
    }

    pub fn index(&self) -> usize {
        let d: Q = linalg::det(&linalg::to_q(&self.basis));
        d.to_integer().unsigned_abs() as usize
    }
}

/// {x ∈ L : (x, x) even}: odd basis vectors are paired with the first odd one.
pub fn even_sublattice(l: &GramLattice) -> Result<EvenSublattice> {
    let g = l
        .int_gram()
        .ok_or_else(|| Error::Invalid("lattice is not integral".into()))?;
    let n = g.len();
    let odd: Vec<bool> = (0..n).map(|i| g[i][i].rem_euclid(2) == 1).collect();
    let first = odd.iter().position(|&o| o);
    let mut basis = vec![vec![0i64; n]; n];
    for j in 0..n {
        basis[j][j] = 1;
        if let Some(i) = first {
            if j == i {
                basis[j][j] = 2;
            } else if odd[j] {
                basis[j][i] = 1;
            }
        }
    }
    Ok(EvenSublattice {
        lattice: l.sublattice(&basis),
        basis,
    })
}

pub fn dual_lattice(l: &GramLattice) -> GramLattice {
    GramLattice { gram: l.inverse() }
}

/// The shadow L^• = s + L^∨, with `s` given by its pairings with the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shadow {
    pub functional: Vec<Q>,
}

impl Shadow {
    /// Whether a functional (pairings with the basis) lies in the shadow.
    pub fn contains(&self, c: &[Q]) -> bool {
        c.iter()
            .zip(&self.functional)
            .all(|(x, s)| (x - s).is_integer())
    }

    pub fn is_dual(&self) -> bool {
        self.functional.iter().all(|x| x.is_zero())
    }
}

pub fn shadow(l: &GramLattice) -> Shadow {
    let half = Q::new(1, 2);
    Shadow {
        functional: (0..l.rank())
            .map(|i| {
                let x = l.gram[i][i] * half;
                x - x.floor()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::roots::build_root_datum;

    #[test]
    fn a2_model() {
        let d = build_root_datum(&"A2".parse().unwrap()).unwrap();
        let g = gram_underline_r(&d);
        assert_eq!(g, coweight_model(&d));
        assert_eq!(g.int_gram().unwrap(), vec![vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn shadows() {
        let z = GramLattice::from_int(&vec![vec![1]]).unwrap();
        assert_eq!(shadow(&z).functional, vec![Q::new(1, 2)]);
        let a2 = GramLattice::from_int(&vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert!(shadow(&a2).is_dual());
    }

    #[test]
    fn even_part_of_z8() {
        let z8 = GramLattice::new(linalg::identity(8)).unwrap();
        let ev = even_sublattice(&z8).unwrap();
        assert!(ev.lattice.is_even());
        assert_eq!(ev.lattice.det(), Q::from_integer(4));
        assert_eq!(ev.index(), 2);
        let again = even_sublattice(&ev.lattice).unwrap();
        assert_eq!(again.lattice, ev.lattice);
        assert_eq!(again.index(), 1);
    }
}
