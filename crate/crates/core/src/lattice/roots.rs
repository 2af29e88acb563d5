//! Root systems, positive roots and the q-order-one classification.

use crate::error::{Error, Result};
use crate::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    /// Ranks for which the family is defined without repeating a smaller type.
    pub fn is_legal(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Number of positive roots.
    pub fn num_positive(self, n: usize) -> usize {
        match self {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

/// A root system as a list of irreducible components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub components: Vec<(Family, usize)>,
}

impl RootSystemSpec {
    pub fn new(mut components: Vec<(Family, usize)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::IllegalRootSystem("no components".into()));
        }
        for &(f, n) in &components {
            if !f.is_legal(n) {
                return Err(Error::IllegalRootSystem(format!("{}{}", f.letter(), n)));
            }
        }
        components.sort();
        Ok(RootSystemSpec { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    pub fn num_positive(&self) -> usize {
        self.components.iter().map(|&(f, n)| f.num_positive(n)).sum()
    }

    /// Canonical names of the eight systems with q-order one.
    pub fn canonical_names() -> [&'static str; 8] {
        ["A4", "A1+B3", "A1+C3", "B2+G2", "3A2", "3A1+A3", "2A1+A2+B2", "8A1"]
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut k = 1;
            while i + k < self.components.len() && self.components[i + k] == c {
                k += 1;
            }
            let name = format!("{}{}", c.0.letter(), c.1);
            parts.push(if k > 1 { format!("{k}{name}") } else { name });
            i += k;
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::IllegalRootSystem(s.to_string());
        let mut comps = Vec::new();
        for part in s.split(['+', ',']) {
            let part = part.trim();
            let pos = part.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
            let mult: usize = if pos == 0 {
                1
            } else {
                part[..pos].parse().map_err(|_| bad())?
            };
            let fam = Family::from_letter(part[pos..].chars().next().unwrap().to_ascii_uppercase())
                .ok_or_else(bad)?;
            let rank: usize = part[pos + 1..].parse().map_err(|_| bad())?;
            for _ in 0..mult {
                comps.push((fam, rank));
            }
        }
        RootSystemSpec::new(comps)
    }
}

/// Inner products of simple roots (Bourbaki numbering, short roots of
/// B, C, F normalised as printed below, long roots of ADE of length² 2).
pub fn simple_root_gram(fam: Family, n: usize) -> Vec<Vec<Q>> {
    let z = Q::from_integer;
    let mut g = vec![vec![z(0); n]; n];
    let chain = |g: &mut Vec<Vec<Q>>, edges: &[(usize, usize)]| {
        for i in 0..n {
            g[i][i] = z(2);
        }
        for &(i, j) in edges {
            g[i][j] = z(-1);
            g[j][i] = z(-1);
        }
    };
    let path: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    match fam {
        Family::A => chain(&mut g, &path),
        Family::B => {
            chain(&mut g, &path);
            g[n - 1][n - 1] = z(1);
        }
        Family::C => {
            chain(&mut g, &path);
            g[n - 1][n - 1] = z(4);
            g[n - 2][n - 1] = z(-2);
            g[n - 1][n - 2] = z(-2);
        }
        Family::D => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            chain(&mut g, &e);
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            chain(&mut g, &e);
        }
        Family::F => {
            chain(&mut g, &path);
            g[2][2] = z(1);
            g[3][3] = z(1);
            g[2][3] = Q::new(-1, 2);
            g[3][2] = Q::new(-1, 2);
        }
        Family::G => {
            g = vec![vec![z(2), z(-3)], vec![z(-3), z(6)]];
        }
    }
    g
}

/// Simple roots in the standard ambient coordinates.
pub fn ambient_simple_roots(fam: Family, n: usize) -> Vec<Vec<Q>> {
    let z = Q::from_integer;
    let unit = |dim: usize, i: usize| -> Vec<Q> {
        let mut v = vec![z(0); dim];
        v[i] = z(1);
        v
    };
    let diff = |dim: usize, i: usize, j: usize| -> Vec<Q> {
        let mut v = unit(dim, i);
        v[j] -= z(1);
        v
    };
    match fam {
        Family::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Family::B | Family::C | Family::D => {
            let mut v: Vec<Vec<Q>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let last = match fam {
                Family::B => unit(n, n - 1),
                Family::C => unit(n, n - 1).into_iter().map(|x| x * z(2)).collect(),
                _ => {
                    let mut w = unit(n, n - 1);
                    w[n - 2] = z(1);
                    w
                }
            };
            v.push(last);
            v
        }
        Family::G => vec![
            vec![z(1), z(-1), z(0)],
            vec![z(-2), z(1), z(1)],
        ],
        Family::F => {
            let h = Q::new(1, 2);
            vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![h, -h, -h, -h],
            ]
        }
        Family::E => {
            let h = Q::new(1, 2);
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            let mut a2 = unit(8, 0);
            a2[1] = z(1);
            let mut v = vec![a1, a2];
            v.extend((0..6).map(|i| diff(8, i + 1, i)));
            v.truncate(n);
            v
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveRoot {
    /// Coefficients γ_{r,f} over all simple roots of the system.
    pub gamma: Vec<i64>,
    /// Squared length (r, r).
    pub norm: Q,
    pub component: usize,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub spec: RootSystemSpec,
    /// Simple roots per component, ambient coordinates of that component.
    pub simple_roots: Vec<Vec<Vec<Q>>>,
    /// Simple-root inner products, block diagonal over components.
    pub cartan_gram: Vec<Vec<Q>>,
    pub positive_roots: Vec<PositiveRoot>,
    /// Offset of each component's simple roots in the global numbering.
    pub offsets: Vec<usize>,
    pub h: Vec<Q>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn gammas(&self) -> Vec<Vec<i64>> {
        self.positive_roots.iter().map(|r| r.gamma.clone()).collect()
    }
}

fn ip(g: &[Vec<Q>], a: &[i64], b: &[i64]) -> Q {
    let mut s = Q::from_integer(0);
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            s += g[i][j] * Q::from_integer(x * y);
        }
    }
    s
}

/// Positive roots in simple-root coordinates via root strings, ordered by
/// height and then lexicographically.
pub fn positive_roots(g: &[Vec<Q>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut roots: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..n {
                let mut p = 0;
                loop {
                    let mut c = b.clone();
                    c[i] -= p + 1;
                    if roots.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let cij = Q::from_integer(2) * ip(g, b, &simple[i]) / g[i][i];
                let qq = Q::from_integer(p) - cij;
                if qq > Q::from_integer(0) {
                    let mut c = b.clone();
                    c[i] += 1;
                    if roots.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        layer = next;
    }
    let mut v: Vec<_> = roots.into_iter().collect();
    v.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    v
}

pub fn build_root_datum(spec: &RootSystemSpec) -> Result<RootDatum> {
    let n = spec.rank();
    let z = Q::from_integer;
    let mut cartan = vec![vec![z(0); n]; n];
    let mut pos = Vec::new();
    let mut offsets = Vec::new();
    let mut hs = Vec::new();
    let mut simple = Vec::new();
    let mut off = 0;
    for (ci, &(fam, k)) in spec.components.iter().enumerate() {
        if !fam.is_legal(k) {
            return Err(Error::IllegalRootSystem(format!("{}{}", fam.letter(), k)));
        }
        let g = simple_root_gram(fam, k);
        for i in 0..k {
            for j in 0..k {
                cartan[off + i][off + j] = g[i][j];
            }
        }
        let roots = positive_roots(&g);
        debug_assert_eq!(roots.len(), fam.num_positive(k));
        let mut total = z(0);
        for r in roots {
            let norm = ip(&g, &r, &r);
            total += norm;
            let mut gamma = vec![0; n];
            gamma[off..off + k].copy_from_slice(&r);
            pos.push(PositiveRoot {
                gamma,
                norm,
                component: ci,
            });
        }
        hs.push(total / z(k as i64));
        simple.push(ambient_simple_roots(fam, k));
        offsets.push(off);
        off += k;
    }
    Ok(RootDatum {
        spec: spec.clone(),
        simple_roots: simple,
        cartan_gram: cartan,
        positive_roots: pos,
        offsets,
        h: hs,
    })
}

/// h = (1/n) Σ_{r ∈ R⁺} (r, r) for one component.
pub fn coxeter_h(datum: &RootDatum, component: usize) -> Result<Q> {
    datum
        .h
        .get(component)
        .copied()
        .ok_or_else(|| Error::Invalid(format!("no component {component}")))
}

/// All root systems R with n + 2N = 24, i.e. θ_R of q-order one.
pub fn classify_q_order_one() -> Vec<RootSystemSpec> {
    let fams = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];
    let mut items = Vec::new();
    for f in fams {
        for n in 1..=24 {
            if f.is_legal(n) {
                let w = n + 2 * f.num_positive(n);
                if w <= 24 {
                    items.push(((f, n), w));
                }
            }
        }
    }
    items.sort();
    let mut out = Vec::new();
    fn rec(
        items: &[((Family, usize), usize)],
        start: usize,
        left: usize,
        cur: &mut Vec<(Family, usize)>,
        out: &mut Vec<RootSystemSpec>,
    ) {
        if left == 0 {
            out.push(RootSystemSpec::new(cur.clone()).expect("legal"));
            return;
        }
        for i in start..items.len() {
            let (c, w) = items[i];
            if w <= left {
                cur.push(c);
                rec(items, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    rec(&items, 0, 24, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_matches_gram() {
        let cases = [
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (f, n) in cases {
            let a = ambient_simple_roots(f, n);
            let g = simple_root_gram(f, n);
            for i in 0..n {
                for j in 0..n {
                    let d: Q = a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum();
                    assert_eq!(d, g[i][j], "{f:?}{n} ({i},{j})");
                }
            }
            assert_eq!(positive_roots(&g).len(), f.num_positive(n), "{f:?}{n}");
        }
    }

    #[test]
    fn names_roundtrip() {
        for name in RootSystemSpec::canonical_names() {
            let s: RootSystemSpec = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
        assert!("G3".parse::<RootSystemSpec>().is_err());
        assert!("C2".parse::<RootSystemSpec>().is_err());
    }

    #[test]
    fn small_counts() {
        let d = build_root_datum(&"B2+G2".parse().unwrap()).unwrap();
        assert_eq!((d.rank(), d.num_positive()), (4, 10));
        let d = build_root_datum(&"A1".parse().unwrap()).unwrap();
        assert_eq!(d.positive_roots[0].gamma, vec![1]);
        assert_eq!(d.h[0], Q::from_integer(2));
    }
}
