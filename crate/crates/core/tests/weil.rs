use num_bigint::BigInt;
use num_rational::BigRational;
use rootlift::cyclotomic::CycloField;
use rootlift::lattice::*;
use rootlift::weil::*;
use std::f64::consts::PI;

fn form(name: &str) -> (usize, DiscriminantFormData) {
    let spec: RootSystemSpec = name.parse().unwrap();
    let datum = build_root_datum(&spec).unwrap();
    let ev = even_sublattice(&gram_underline_r(&datum)).unwrap();
    let d = DiscriminantFormData::from_even_lattice(&ev.lattice.int_gram().unwrap()).unwrap();
    (datum.rank(), d)
}

fn d8() -> DiscriminantFormData {
    let mut g = vec![vec![0i64; 8]; 8];
    for i in 0..8 {
        g[i][i] = 2;
    }
    for i in 0..6 {
        g[i][i + 1] = -1;
        g[i + 1][i] = -1;
    }
    g[5][7] = -1;
    g[7][5] = -1;
    DiscriminantFormData::from_even_lattice(&g).unwrap()
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

type C = (f64, f64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cis(x: f64) -> C {
    ((2.0 * PI * x).cos(), (2.0 * PI * x).sin())
}

/// Rank of a complex matrix by partial pivoting.
fn numeric_rank(mut a: Vec<Vec<C>>, tol: f64) -> usize {
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).max_by(|i, j| {
            let ni = a[*i][c].0.hypot(a[*i][c].1);
            let nj = a[*j][c].0.hypot(a[*j][c].1);
            ni.partial_cmp(&nj).unwrap()
        }) else { break };
        if a[p][c].0.hypot(a[p][c].1) < tol {
            continue;
        }
        a.swap(rank, p);
        let piv = a[rank][c];
        let n = piv.0 * piv.0 + piv.1 * piv.1;
        let inv = (piv.0 / n, -piv.1 / n);
        for i in 0..a.len() {
            if i == rank {
                continue;
            }
            let f = cmul(a[i][c], inv);
            if f.0.hypot(f.1) == 0.0 {
                continue;
            }
            for k in c..cols {
                let t = cmul(f, a[rank][k]);
                a[i][k].0 -= t.0;
                a[i][k].1 -= t.1;
            }
        }
        rank += 1;
    }
    rank
}

/// dim ker [ρ(S) − 1; ρ(T) − 1] in floating point, with c = e(sign/8)/√|D|.
fn numeric_invariant_dim(d: &DiscriminantFormData, sign: usize) -> usize {
    let elems: Vec<Elem> = d.elements().collect();
    let n = elems.len();
    let c = cis(sign as f64 / 8.0);
    let c = (c.0 / (n as f64).sqrt(), c.1 / (n as f64).sqrt());
    let mut rows = Vec::new();
    for beta in &elems {
        let mut row: Vec<C> = elems
            .iter()
            .map(|g| {
                let b = d.b(g, beta);
                cmul(c, cis(*b.numer() as f64 / *b.denom() as f64))
            })
            .collect();
        row[d.index_of(beta)].0 -= 1.0;
        rows.push(row);
    }
    for (i, g) in elems.iter().enumerate() {
        let q = d.q(g);
        let t = cis(-(*q.numer() as f64) / *q.denom() as f64);
        let mut row = vec![(0.0, 0.0); n];
        row[i] = (t.0 - 1.0, t.1);
        rows.push(row);
    }
    n - numeric_rank(rows, 1e-8)
}

const DIMS: [(&str, usize); 8] = [
    ("A4", 1),
    ("A1+B3", 2),
    ("A1+C3", 1),
    ("B2+G2", 1),
    ("3A2", 1),
    ("3A1+A3", 1),
    ("2A1+A2+B2", 2),
    ("8A1", 2),
];

#[test]
fn invariant_dimensions() {
    for (name, dim) in DIMS {
        let (rank, d) = form(name);
        let w = build_weilrep(&d).unwrap();
        let inv = invariant_subspace_of(&w).unwrap();
        assert_eq!(inv.dimension, dim, "{name}");
        assert_eq!(inv.basis.len(), dim);
        assert!(inv.basis.iter().all(|v| is_invariant(&w, v)));
        for v in &inv.basis {
            for (i, g) in d.elements().enumerate() {
                if !inv.isotropic.contains(&i) {
                    assert_eq!(v[i], r(0), "{name}: support off isotropic {g:?}");
                }
            }
        }
        if d.size() <= 128 {
            assert_eq!(numeric_invariant_dim(&d, rank % 8), dim, "{name} (numeric)");
        }
    }
}

#[test]
fn trivial_and_d8_forms() {
    let u = DiscriminantFormData::from_even_lattice(&vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(u.size(), 1);
    let inv = invariant_subspace(&u).unwrap();
    assert_eq!(inv.dimension, 1);
    assert_eq!(inv.basis, vec![vec![r(1)]]);

    let d = d8();
    assert_eq!(d.size(), 4);
    assert_eq!(d.invariant_factors(), vec![2, 2]);
    let qs = d.q_multiset();
    assert_eq!(qs.get(&rootlift::Q::new(0, 1)), Some(&3));
    assert_eq!(qs.get(&rootlift::Q::new(1, 2)), Some(&1));
    let w = build_weilrep(&d).unwrap();
    let f = &w.field;
    let minus: Vec<usize> = w.t_diag.iter().enumerate().filter(|(_, t)| **t == f.integer(-1)).map(|(i, _)| i).collect();
    assert_eq!(minus.len(), 1);
    assert!(w.t_diag.iter().all(|t| *t == f.one() || *t == f.integer(-1)));
    assert_eq!(w.signature, 0);
    assert_eq!(w.s_scale, f.rational(BigRational::new(1.into(), 2.into())));
    let zero = d.zero();
    for beta in d.elements() {
        assert_eq!(w.s_entry(&beta, &zero), w.s_scale);
    }
    assert_eq!(numeric_invariant_dim(&d, 0), invariant_subspace(&d).unwrap().dimension);
}

#[test]
fn s_squared_and_st_cubed() {
    let mut small = vec![d8()];
    for name in ["8A1", "3A2"] {
        small.push(form(name).1);
    }
    small.push(form("A2").1);
    for d in &small {
        let w = build_weilrep(d).unwrap();
        assert!(w.check_s_squared().unwrap());
        assert!(w.check_st_cubed().unwrap());
    }
    for (name, _) in DIMS {
        let w = build_weilrep(&form(name).1).unwrap();
        assert!(w.check_s_squared().unwrap(), "{name}");
    }
    let big = build_weilrep(&form("A4").1).unwrap();
    assert!(big.check_st_cubed().is_err());
    assert!(big.dense_s().is_ok());
    assert!(build_weilrep(&form("B2+G2").1).unwrap().dense_s().is_err());
}

#[test]
fn apply_s_matches_dense() {
    let d = form("3A2").1;
    let w = build_weilrep(&d).unwrap();
    let s = w.dense_s().unwrap();
    let f = &w.field;
    let v: Vec<BigRational> = (0..d.size() as i64).map(|i| BigRational::new((i % 5 - 2).into(), (1 + i % 3).into())).collect();
    let got = w.apply_s(&v);
    for (row, g) in s.iter().zip(&got) {
        let want = row.iter().zip(&v).fold(f.zero(), |acc, (x, c)| f.add(&acc, &f.scale(x, c)));
        assert_eq!(&want, g);
    }
}

#[test]
fn milgram_identity_all_eight() {
    for (name, _) in DIMS {
        let (rank, d) = form(name);
        let f = CycloField::new(d.field_order());
        let g = d.gauss_sum(&f);
        let root = f.sqrt(d.size() as u64).unwrap();
        assert_eq!(g, f.mul(&root, &f.e(rank as i64, 8)), "{name}");
        // the same identity in floating point
        let (mut re, mut im) = (0.0, 0.0);
        for x in d.elements() {
            let q = d.q(&x);
            let z = cis(*q.numer() as f64 / *q.denom() as f64);
            re += z.0;
            im += z.1;
        }
        let want = cis(rank as f64 / 8.0);
        let s = (d.size() as f64).sqrt();
        assert!((re - s * want.0).abs() < 1e-9 && (im - s * want.1).abs() < 1e-9, "{name}");
        assert_eq!(d.milgram_signature().unwrap() as usize, rank % 8);
    }
}

#[test]
fn chi_values() {
    let f8 = CycloField::new(8);
    for (name, _) in DIMS {
        let d = form(name).1;
        assert_eq!(chi_d(&d, 1).unwrap(), f8.one(), "{name}");
    }
    let d = form("3A2").1;
    assert_eq!(chi_d(&d, 2).unwrap(), f8.integer(-1));
    assert_eq!(chi_d(&d, 4).unwrap(), f8.one());
    assert!(chi_d(&d, 3).is_err());
    for name in ["A4", "3A2", "8A1", "3A1+A3"] {
        let d = form(name).1;
        let units: Vec<i64> = (1..40).filter(|a| chi_d(&d, *a).is_ok()).collect();
        for a in &units {
            for b in &units {
                let ab = chi_d(&d, a * b).unwrap();
                let prod = f8.mul(&chi_d(&d, *a).unwrap(), &chi_d(&d, *b).unwrap());
                assert_eq!(ab, prod, "{name}: χ({a}·{b})");
            }
        }
    }
    assert!(chi_d(&form("A1").1, 3).is_err());
}

#[test]
fn split_structures() {
    for name in ["8A1", "A1+B3", "2A1+A2+B2"] {
        let rep = split_structure_check(&name.parse().unwrap()).unwrap();
        assert!(rep.verdict.is_pass(), "{name}: {rep:?}");
        assert_eq!(rep.dimension, 2);
        assert_eq!(rep.odd_part_dimension, 1);
        assert!(rep.spans && rep.theta_proportional);
        assert!(rep.gamma1.is_some() && rep.gamma2.is_some());
    }
    let rep = table_structure_check(&"B2+G2".parse().unwrap()).unwrap();
    assert!(rep.verdict.is_pass());
    assert_eq!(rep.generator_support, 12);
    assert!(rep.frame.is_some());
}

#[test]
fn theta_r_component_vector_is_invariant() {
    for (name, _) in DIMS {
        let spec: RootSystemSpec = name.parse().unwrap();
        let dec = theta_r_decomposition(&spec).unwrap();
        let w = build_weilrep(&dec.form).unwrap();
        let inv = invariant_subspace_of(&w).unwrap();
        let zero = rootlift::Q::from_integer(0);
        let v: Vec<BigRational> = dec
            .components
            .iter()
            .map(|c| c.get(&zero).map(|x| BigRational::from_integer(x.to_bigint())).unwrap_or_else(|| r(0)))
            .collect();
        assert!(v.iter().any(|x| *x != r(0)), "{name}");
        assert!(in_span(&inv.basis, &v), "{name}");
    }
}

#[test]
fn conway_correspondence_all_eight() {
    assert_eq!(CONWAY_TABLE.len(), 8);
    for (name, _) in DIMS {
        let rep = conway_correspondence_check(&name.parse().unwrap()).unwrap();
        assert!(rep.agrees, "{name}: {rep:?}");
        assert!(rep.even_genus_agrees);
    }
}

#[test]
fn genus_symbols() {
    let d = form_from_symbol("2_II^-2").unwrap();
    assert_eq!(d.size(), 4);
    let (_, a2) = form("A2");
    let sym = form_from_symbol("3^-1").unwrap();
    assert_eq!(finite_qf_invariants(&sym).unwrap(), finite_qf_invariants(&a2).unwrap());
    assert!(form_from_symbol("2_3^+1").is_err());
    assert!(form_from_symbol("4^x").is_err());
}
