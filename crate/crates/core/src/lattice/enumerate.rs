//! Short vectors in cosets of a positive definite lattice (Fincke–Pohst).

use super::linalg::{self, Mat};
use crate::Q;

/// All x ∈ Z^r with (y + x)ᵀ G (y + x) ≤ bound, exactly.
pub fn coset_vectors(gram: &Mat, y: &[Q], bound: Q) -> Vec<Vec<i64>> {
    let r = gram.len();
    if r == 0 {
        return vec![vec![]];
    }
    let g: Vec<Vec<f64>> = gram
        .iter()
        .map(|row| row.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect())
        .collect();
    // q_ii and q_ij of the completed-square form
    let mut q = g.clone();
    for i in 0..r {
        for j in i + 1..r {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..r {
            for l in k..r {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let yf: Vec<f64> = y.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect();
    let bf = *bound.numer() as f64 / *bound.denom() as f64 + 1e-7;
    let mut out = Vec::new();
    let mut x = vec![0i64; r];
    rec(&q, &yf, bf, r - 1, 0.0, &mut x, &mut out, gram, y, bound);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    q: &[Vec<f64>],
    y: &[f64],
    bound: f64,
    i: usize,
    used: f64,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    gram: &Mat,
    yq: &[Q],
    bq: Q,
) {
    let r = q.len();
    let mut center = y[i];
    for j in i + 1..r {
        center += q[i][j] * (y[j] + x[j] as f64);
    }
    let rem = (bound - used).max(0.0);
    let width = (rem / q[i][i]).sqrt();
    let lo = (-center - width).ceil() as i64;
    let hi = (-center + width).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let t = center + xi as f64;
        let u = used + q[i][i] * t * t;
        if u > bound {
            continue;
        }
        if i == 0 {
            let v: Vec<Q> = yq.iter().zip(x.iter()).map(|(a, b)| a + Q::from_integer(*b)).collect();
            if linalg::bilinear(gram, &v, &v) <= bq {
                out.push(x.clone());
            }
        } else {
            rec(q, y, bound, i - 1, u, x, out, gram, yq, bq);
        }
    }
    x[i] = 0;
}

/// min_{x ∈ Z^r} (y + x)ᵀ G (y + x).
pub fn coset_min(gram: &Mat, y: &[Q]) -> Q {
    let v: Vec<Q> = y.iter().map(|a| a - a.round()).collect();
    let start = linalg::bilinear(gram, &v, &v);
    let norm_of = |x: &Vec<i64>| {
        let w: Vec<Q> = y.iter().zip(x).map(|(a, b)| a + Q::from_integer(*b)).collect();
        linalg::bilinear(gram, &w, &w)
    };
    // deepen from a small radius; the rounded vector caps the search
    let mut b = Q::new(1, 2);
    loop {
        if b >= start {
            b = start;
        }
        if let Some(m) = coset_vectors(gram, y, b).iter().map(norm_of).min() {
            return m;
        }
        b *= Q::from_integer(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_in_z2_and_a2() {
        let z2 = linalg::identity(2);
        let zero = vec![Q::from_integer(0); 2];
        assert_eq!(coset_vectors(&z2, &zero, Q::from_integer(1)).len(), 5);
        let a2 = linalg::to_q(&vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(coset_vectors(&a2, &zero, Q::from_integer(2)).len(), 7);
        let y = vec![Q::new(1, 3), Q::new(2, 3)];
        assert_eq!(coset_min(&a2, &y), Q::new(2, 3));
    }
}
