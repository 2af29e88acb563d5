//! Explicit shape of the invariants for the split cases and for B₂⊕G₂.

use super::invariants::{invariant_subspace, is_invariant, rank, InvariantSpace};
use super::rep::build_weilrep;
use crate::error::Result;
use crate::jacobi::{theta_decompose, theta_r, VVDecomposition};
use crate::lattice::{DiscriminantFormData, Elem, RootSystemSpec};
use crate::lifts::Verdict;
use crate::series::serialize::fmt_q;
use crate::Q;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Decomposition of θ_R against D(L_ev); θ_R has singular weight so a
/// short expansion already fixes its components.
pub fn theta_r_decomposition(spec: &RootSystemSpec) -> Result<VVDecomposition> {
    let theta = theta_r(spec, Q::from_integer(3))?;
    theta_decompose(&theta)
}

/// A subgroup given by generators in D together with its own form.
pub struct Embedded {
    pub form: DiscriminantFormData,
    pub gens: Vec<Elem>,
}

impl Embedded {
    pub fn embed(&self, d: &DiscriminantFormData, x: &[i64]) -> Elem {
        self.gens
            .iter()
            .zip(x)
            .fold(d.zero(), |acc, (g, k)| d.add(&acc, &d.mul(*k, g)))
    }
}

/// The 2-part of D (`two = true`) or its odd part.
pub fn primary_sum(d: &DiscriminantFormData, two: bool) -> Result<Embedded> {
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (i, &o) in d.orders.iter().enumerate() {
        let mut two_pow = 1;
        let mut m = o;
        while m % 2 == 0 {
            m /= 2;
            two_pow *= 2;
        }
        let (ord, mult) = if two { (two_pow, m) } else { (m, two_pow) };
        if ord > 1 {
            let mut g = d.zero();
            g[i] = mult % o;
            gens.push(g);
            orders.push(ord);
        }
    }
    let form = d.subform(&gens, orders)?;
    Ok(Embedded { form, gens })
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn fmt_vec(d: &DiscriminantFormData, v: &[BigRational]) -> Vec<(Elem, String)> {
    d.elements()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .map(|(g, x)| (g, x.to_string()))
        .collect()
}

/// Constant term vector of the decomposition, if every component lives at one exponent.
fn constant_vector(dec: &VVDecomposition) -> Option<(Q, Vec<BigRational>)> {
    let mut exps = dec.components.iter().flat_map(|c| c.keys().copied());
    let e = exps.next()?;
    if dec.components.iter().any(|c| c.keys().any(|x| *x != e)) {
        return None;
    }
    let v = dec
        .components
        .iter()
        .map(|c| c.get(&e).map_or(BigRational::zero(), |x| BigRational::from_integer(x.to_bigint())))
        .collect();
    Some((e, v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitStructureReport {
    pub root_system: String,
    pub form_size: usize,
    pub dimension: usize,
    pub gamma1: Option<Elem>,
    pub gamma2: Option<Elem>,
    pub odd_part_dimension: usize,
    /// v₁⊗w and v₂⊗w are invariant and span the invariants.
    pub spans: bool,
    pub theta_exponent: Option<String>,
    /// θ_R's component vector is a nonzero multiple of (v₁ − v₂)⊗w.
    pub theta_proportional: bool,
    pub theta_support: Vec<(Elem, String)>,
    pub verdict: Verdict,
}

/// D = 2_II^{+2} ⊕ D′: invariants spanned by (e₀ + e_{γᵢ})⊗w.
pub fn split_structure_check(spec: &RootSystemSpec) -> Result<SplitStructureReport> {
    let dec = theta_r_decomposition(spec)?;
    let d = &dec.form;
    let full = invariant_subspace(d)?;
    let two = primary_sum(d, true)?;
    let odd = primary_sum(d, false)?;
    let iso: Vec<Elem> = two
        .form
        .elements()
        .filter(|g| g.iter().any(|x| *x != 0) && two.form.q_num(g) == 0)
        .map(|g| two.embed(d, &g))
        .collect();
    let mut report = SplitStructureReport {
        root_system: spec.to_string(),
        form_size: d.size(),
        dimension: full.dimension,
        gamma1: None,
        gamma2: None,
        odd_part_dimension: 0,
        spans: false,
        theta_exponent: None,
        theta_proportional: false,
        theta_support: Vec::new(),
        verdict: Verdict::Fail,
    };
    if two.form.size() != 4 || iso.len() != 2 || d.b(&iso[0], &iso[1]) != Q::new(1, 2) {
        return Ok(report);
    }
    report.gamma1 = Some(iso[0].clone());
    report.gamma2 = Some(iso[1].clone());
    let odd_inv: InvariantSpace = invariant_subspace(&odd.form)?;
    report.odd_part_dimension = odd_inv.dimension;
    if odd_inv.dimension != 1 {
        return Ok(report);
    }
    let w = &odd_inv.basis[0];
    let odd_elems: Vec<Elem> = odd.form.elements().collect();
    let tensor = |g: &Elem, sign: i64| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); d.size()];
        for (o, x) in odd_elems.iter().zip(w) {
            if x.is_zero() {
                continue;
            }
            let base = odd.embed(d, o);
            v[d.index_of(&base)] += x;
            v[d.index_of(&d.add(&base, g))] += x * rat(sign);
        }
        v
    };
    let u1 = tensor(&iso[0], 1);
    let u2 = tensor(&iso[1], 1);
    let rep = build_weilrep(d)?;
    report.spans = full.dimension == 2
        && is_invariant(&rep, &u1)
        && is_invariant(&rep, &u2)
        && rank(&[u1.clone(), u2.clone()]) == 2;
    let diff: Vec<BigRational> = u1.iter().zip(&u2).map(|(a, b)| a - b).collect();
    if let Some((e, t)) = constant_vector(&dec) {
        report.theta_exponent = Some(fmt_q(&e));
        report.theta_proportional = t.iter().any(|x| !x.is_zero()) && rank(&[t.clone(), diff]) == 1;
        report.theta_support = fmt_vec(d, &t);
    }
    report.verdict = Verdict::from_bool(report.spans && report.theta_proportional);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStructureReport {
    pub root_system: String,
    pub part_size: usize,
    pub dimension: usize,
    pub generator_support: usize,
    pub frames_tried: usize,
    /// (γ₁, γ₂, δ₁, δ₂) realizing the ±1 table.
    pub frame: Option<[Elem; 4]>,
    pub verdict: Verdict,
}

/// B₂⊕G₂: the invariant of the 2-part is the printed ±1 table up to scale.
pub fn table_structure_check(spec: &RootSystemSpec) -> Result<TableStructureReport> {
    let dec = theta_r_decomposition(spec)?;
    let part = primary_sum(&dec.form, true)?.form;
    let inv = invariant_subspace(&part)?;
    let mut report = TableStructureReport {
        root_system: spec.to_string(),
        part_size: part.size(),
        dimension: inv.dimension,
        generator_support: 0,
        frames_tried: 0,
        frame: None,
        verdict: Verdict::Fail,
    };
    if inv.dimension != 1 {
        return Ok(report);
    }
    let gen = &inv.basis[0];
    report.generator_support = gen.iter().filter(|x| !x.is_zero()).count();
    let elems: Vec<Elem> = part.elements().collect();
    let gammas: Vec<&Elem> = elems
        .iter()
        .filter(|g| part.order_of(g) == 2 && part.q(g) == Q::new(3, 4))
        .collect();
    let deltas: Vec<&Elem> = elems
        .iter()
        .filter(|g| part.order_of(g) == 4 && part.q(g) == Q::new(1, 4))
        .collect();
    let quarter = Q::new(1, 4);
    for g1 in &gammas {
        for g2 in &gammas {
            if g1 >= g2 || part.b(g1, g2) != Q::from_integer(0) {
                continue;
            }
            for d1 in &deltas {
                for d2 in &deltas {
                    if part.b(d1, d2) != quarter {
                        continue;
                    }
                    let frame = [(*g1).clone(), (*g2).clone(), (*d1).clone(), (*d2).clone()];
                    if !generates(&part, &frame) {
                        continue;
                    }
                    report.frames_tried += 1;
                    let table = table_vector(&part, &frame);
                    if rank(&[gen.clone(), table]) == 1 {
                        report.frame = Some(frame);
                        report.verdict = Verdict::from_bool(report.generator_support == 12);
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

fn generates(d: &DiscriminantFormData, f: &[Elem; 4]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..4 {
                for e in 0..4 {
                    let x = d.add(&d.add(&d.mul(a, &f[0]), &d.mul(b, &f[1])), &d.add(&d.mul(c, &f[2]), &d.mul(e, &f[3])));
                    seen.insert(x);
                }
            }
        }
    }
    seen.len() == d.size()
}

/// +1 and −1 positions of the table in terms of (γ, a, b) ↦ γ + aδ₁ + bδ₂.
const PLUS: [(usize, i64, i64); 6] = [(0, 1, 0), (0, 0, -1), (0, -1, 1), (1, -1, 0), (1, 0, 1), (1, 1, -1)];
const MINUS: [(usize, i64, i64); 6] = [(0, -1, 0), (0, 0, 1), (0, 1, -1), (1, 1, 0), (1, 0, -1), (1, -1, 1)];

fn table_vector(d: &DiscriminantFormData, f: &[Elem; 4]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); d.size()];
    for (list, sign) in [(&PLUS, 1), (&MINUS, -1)] {
        for &(gi, a, b) in list.iter() {
            let x = d.add(&f[gi], &d.add(&d.mul(a, &f[2]), &d.mul(b, &f[3])));
            v[d.index_of(&x)] += rat(sign);
        }
    }
    v
}
