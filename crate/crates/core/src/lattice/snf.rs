//! Smith normal form over the integers.

/// `u · a · v = diag(d)` with `u`, `v` unimodular and `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub diag: Vec<i128>,
}

fn ident(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect()
}

/// Smith normal form of a square integer matrix.
pub fn smith(a: &[Vec<i64>]) -> Smith {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|x| *x as i128).collect()).collect();
    let mut u = ident(n);
    let mut v = ident(n);
    for k in 0..n {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(k, pi);
            u.swap(k, pi);
            for r in m.iter_mut() {
                r.swap(k, pj);
            }
            for r in v.iter_mut() {
                r.swap(k, pj);
            }
            let p = m[k][k];
            let mut clean = true;
            for i in k + 1..n {
                let f = m[i][k] / p;
                if f != 0 {
                    for j in 0..n {
                        m[i][j] -= f * m[k][j];
                        u[i][j] -= f * u[k][j];
                    }
                }
                if m[i][k] != 0 {
                    clean = false;
                }
            }
            for j in k + 1..n {
                let f = m[k][j] / p;
                if f != 0 {
                    for i in 0..n {
                        m[i][j] -= f * m[i][k];
                        v[i][j] -= f * v[i][k];
                    }
                }
                if m[k][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in 0..n {
                        m[k][j] += m[i][j];
                        u[k][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if m[k][k] < 0 {
            for j in 0..n {
                m[k][j] = -m[k][j];
                u[k][j] = -u[k][j];
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    Smith { u, v, diag }
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut inv = ident(n);
    for c in 0..n {
        // Euclid on column c below the diagonal
        loop {
            let mut best: Option<usize> = None;
            for r in c..n {
                if m[r][c] != 0 && best.is_none_or(|b| m[r][c].abs() < m[b][c].abs()) {
                    best = Some(r);
                }
            }
            let b = best.expect("unimodular matrix");
            m.swap(c, b);
            inv.swap(c, b);
            let mut done = true;
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                for j in 0..n {
                    m[r][j] -= f * m[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
                if m[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        assert!(m[c][c].abs() == 1, "matrix is not unimodular");
        if m[c][c] < 0 {
            for j in 0..n {
                m[c][j] = -m[c][j];
                inv[c][j] = -inv[c][j];
            }
        }
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let f = m[r][c];
            if f != 0 {
                for j in 0..n {
                    m[r][j] -= f * m[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn smith_of_a4_scaled() {
        // 5·A4⁻¹ has invariant factors 1, 5, 5, 5
        let g = vec![
            vec![4, 3, 2, 1],
            vec![3, 6, 4, 2],
            vec![2, 4, 6, 3],
            vec![1, 2, 3, 4],
        ];
        let s = smith(&g);
        assert_eq!(s.diag, vec![1, 5, 5, 5]);
        let gi: Vec<Vec<i128>> = g.iter().map(|r| r.iter().map(|x| *x as i128).collect()).collect();
        let d = matmul(&matmul(&s.u, &gi), &s.v);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
        let ui = unimodular_inverse(&s.u);
        assert_eq!(matmul(&ui, &s.u), ident(4));
    }

    #[test]
    fn divisibility_chain() {
        let s = smith(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.diag, vec![1, 6]);
    }
}
