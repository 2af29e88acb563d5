//! Small dense rational and integer matrices.

use crate::Q;
use num_traits::{One, Zero};

pub type Mat = Vec<Vec<Q>>;
pub type IMat = Vec<Vec<i64>>;

pub fn to_q(m: &IMat) -> Mat {
    m.iter()
        .map(|r| r.iter().map(|x| Q::from_integer(*x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..m)
                .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &Mat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `vᵀ A w`.
pub fn bilinear(a: &Mat, v: &[Q], w: &[Q]) -> Q {
    dot(v, &mat_vec(a, w))
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                let row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &Mat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = m[r][c] / m[c][c];
                let row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row) {
                    *x -= f * y;
                }
            }
        }
    }
    d
}

/// Sylvester's criterion.
pub fn is_positive_definite(a: &Mat) -> bool {
    (1..=a.len()).all(|k| {
        let sub: Mat = a[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&sub) > Q::zero()
    })
}

pub fn is_symmetric(a: &Mat) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == a[j][i]))
}

pub fn is_integral(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_integer()))
}

pub fn to_int(a: &Mat) -> Option<IMat> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// Direct sum of square matrices.
pub fn block_diag(blocks: &[Mat]) -> Mat {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = vec![vec![Q::zero(); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, r) in b.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m[off + i][off + j] = *x;
            }
        }
        off += b.len();
    }
    m
}

pub fn scale(a: &Mat, k: Q) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let a = to_q(&vec![vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        assert_eq!(det(&a), Q::from_integer(3));
        assert!(is_positive_definite(&a));
        assert!(inverse(&to_q(&vec![vec![1, 2], vec![2, 4]])).is_none());
    }
}
