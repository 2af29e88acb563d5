//! Singular patterns of the components F_γ of ψ_R.

use super::verify::Verdict;
use crate::error::Result;
use crate::int::Int;
use crate::jacobi::VVDecomposition;
use crate::lattice::{DiscriminantFormData, Elem, RootSystemSpec};
use crate::series::serialize::fmt_q;
use crate::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Expected q^{exponent} slot (coefficient one) per element index.
pub type Pattern = BTreeMap<usize, Q>;

/// A labelled expected pattern; `label` names the special elements used.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub pattern: Pattern,
}

fn qq(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

/// ord(γ) = d > 1 and q(γ) = 1/d.
fn square_free_slots(d: &DiscriminantFormData, allowed: &[i64], into: &mut Pattern) {
    for g in d.elements() {
        let o = d.order_of(&g);
        if o > 1 && allowed.contains(&o) && d.q(&g) == qq(1, o) {
            into.insert(d.index_of(&g), qq(-1, o));
        }
    }
}

fn insert_checked(p: &mut Pattern, i: usize, e: Q) -> bool {
    match p.insert(i, e) {
        Some(old) => old == e,
        None => true,
    }
}

fn fmt_elem(g: &Elem) -> String {
    format!("{g:?}")
}

/// Pairs (u, v) of orthogonal order-2 elements with q = 3/4 whose
/// complement has 2-part (Z/4)²; returns x₂ = u + v.
fn x2_from_2_6_plus_2(d: &DiscriminantFormData) -> Vec<Elem> {
    let elems: Vec<Elem> = d.elements().collect();
    let threes: Vec<&Elem> = elems
        .iter()
        .filter(|g| d.order_of(g) == 2 && d.q(g) == qq(3, 4))
        .collect();
    let mut out = Vec::new();
    for (i, u) in threes.iter().enumerate() {
        for v in &threes[i + 1..] {
            if d.b(u, v) != Q::from_integer(0) {
                continue;
            }
            let two_part: Vec<&Elem> = elems
                .iter()
                .filter(|c| {
                    let o = d.order_of(c);
                    o & (o - 1) == 0 && d.b(c, u) == Q::from_integer(0) && d.b(c, v) == Q::from_integer(0)
                })
                .collect();
            let small = two_part.iter().filter(|c| d.order_of(c) <= 2).count();
            if two_part.len() == 16 && small == 4 {
                let x = d.add(u, v);
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Candidate patterns for a root system's discriminant form.
pub fn expected_patterns(spec: &RootSystemSpec, d: &DiscriminantFormData) -> Vec<Candidate> {
    let name = spec.to_string();
    let level = d.level();
    let elems: Vec<Elem> = d.elements().collect();
    match name.as_str() {
        "A1+C3" => {
            let mut out = Vec::new();
            let x2s: Vec<&Elem> = elems
                .iter()
                .filter(|g| d.order_of(g) == 2 && d.q(g) == qq(3, 4))
                .collect();
            for x2 in x2s {
                let mut x4s: Vec<Elem> = Vec::new();
                for g in &elems {
                    if d.order_of(g) == 4 && d.q(g) == qq(1, 8) && d.b(g, x2) == Q::from_integer(0) {
                        let comp: Vec<&Elem> = elems
                            .iter()
                            .filter(|c| d.b(c, g) == Q::from_integer(0) && d.b(c, x2) == Q::from_integer(0))
                            .collect();
                        let small = comp.iter().filter(|c| d.order_of(c) <= 4).count();
                        let x4 = d.mul(2, g);
                        if comp.len() == 64 && small == 16 && !x4s.contains(&x4) {
                            x4s.push(x4);
                        }
                    }
                }
                for x4 in x4s {
                    let mut p = Pattern::new();
                    let mut ok = insert_checked(&mut p, d.index_of(&x4), qq(-1, 2));
                    for delta in &elems {
                        // 2q(δ) ≡ b(δ, δ) mod 1
                        if (d.b(delta, delta) + d.b(x2, delta) - qq(3, 4)).is_integer() {
                            let g = d.add(x2, &d.mul(2, delta));
                            ok &= insert_checked(&mut p, d.index_of(&g), qq(-1, 4));
                        }
                    }
                    for g in &elems {
                        if d.order_of(g) == 8 && d.q(g) == qq(1, 8) {
                            ok &= insert_checked(&mut p, d.index_of(g), qq(-1, 8));
                        }
                    }
                    if ok {
                        out.push(Candidate {
                            label: format!("x2 = {}, x4 = {}", fmt_elem(x2), fmt_elem(&x4)),
                            pattern: p,
                        });
                    }
                }
            }
            out
        }
        "B2+G2" => x2_from_2_6_plus_2(d)
            .into_iter()
            .filter_map(|x2| {
                let mut p = Pattern::new();
                let mut ok = insert_checked(&mut p, d.index_of(&x2), qq(-1, 2));
                for g in &elems {
                    let o = d.order_of(g);
                    if [3, 4, 12].contains(&o) && d.q(g) == qq(1, o) {
                        ok &= insert_checked(&mut p, d.index_of(g), qq(-1, o));
                    }
                    if o == 3 && d.q(g) == qq(2, 3) {
                        ok &= insert_checked(&mut p, d.index_of(&d.add(&x2, g)), qq(-1, 6));
                    }
                }
                ok.then(|| Candidate {
                    label: format!("x2 = {}", fmt_elem(&x2)),
                    pattern: p,
                })
            })
            .collect(),
        "3A1+A3" => x2_from_2_6_plus_2(d)
            .into_iter()
            .filter_map(|x2| {
                let mut p = Pattern::new();
                let mut ok = insert_checked(&mut p, d.index_of(&x2), qq(-1, 2));
                for g in &elems {
                    if d.order_of(g) == 4 && d.q(g) == qq(1, 4) {
                        ok &= insert_checked(&mut p, d.index_of(g), qq(-1, 4));
                    }
                }
                ok.then(|| Candidate {
                    label: format!("x2 = {}", fmt_elem(&x2)),
                    pattern: p,
                })
            })
            .collect(),
        _ => {
            let divs: Vec<i64> = (2..=level).filter(|k| level % k == 0).collect();
            let mut p = Pattern::new();
            square_free_slots(d, &divs, &mut p);
            vec![Candidate {
                label: "square-free level".into(),
                pattern: p,
            }]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFinding {
    pub class: Elem,
    pub order: i64,
    pub q: String,
    pub expected: Option<String>,
    pub observed: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalPartReport {
    pub root_system: String,
    pub level: i64,
    pub f0_constant: String,
    pub expected_constant: usize,
    pub complete: bool,
    pub singular_cosets: usize,
    pub candidates_tried: usize,
    pub matched: Option<String>,
    /// Disagreements against the best candidate when nothing matched.
    pub offending: Vec<CosetFinding>,
    pub verdict: Verdict,
}

fn observed(dec: &VVDecomposition, i: usize) -> Vec<(Q, Int)> {
    dec.components[i]
        .range(..Q::from_integer(0))
        .map(|(e, c)| (*e, c.clone()))
        .collect()
}

fn offenders(dec: &VVDecomposition, p: &Pattern) -> Vec<CosetFinding> {
    let d = &dec.form;
    let mut out = Vec::new();
    for (i, g) in d.elements().enumerate() {
        let obs = observed(dec, i);
        let exp = p.get(&i);
        let good = match exp {
            Some(e) => obs.len() == 1 && obs[0].0 == *e && obs[0].1.is_one(),
            None => obs.is_empty(),
        };
        if !good {
            out.push(CosetFinding {
                order: d.order_of(&g),
                q: fmt_q(&d.q(&g)),
                class: g,
                expected: exp.map(fmt_q),
                observed: obs.iter().map(|(e, c)| (fmt_q(e), c.to_string())).collect(),
            });
        }
    }
    out
}

/// Compare the principal parts of ψ_R's components with the expected patterns.
pub fn principal_part_check(spec: &RootSystemSpec, dec: &VVDecomposition) -> Result<PrincipalPartReport> {
    let d = &dec.form;
    let complete = dec.complete_below.iter().all(|c| *c > Q::from_integer(0));
    let f0 = dec.components[d.index_of(&d.zero())]
        .get(&Q::from_integer(0))
        .cloned()
        .unwrap_or(Int::ZERO);
    let rk = spec.rank();
    let singular = (0..d.size()).filter(|i| !observed(dec, *i).is_empty()).count();
    let cands = expected_patterns(spec, d);
    let mut matched = None;
    let mut best: Option<Vec<CosetFinding>> = None;
    for c in &cands {
        let off = offenders(dec, &c.pattern);
        if off.is_empty() {
            matched = Some(c.label.clone());
            best = Some(off);
            break;
        }
        if best.as_ref().is_none_or(|b| off.len() < b.len()) {
            best = Some(off);
        }
    }
    let ok = complete && matched.is_some() && f0 == rk as i64;
    Ok(PrincipalPartReport {
        root_system: spec.to_string(),
        level: d.level(),
        f0_constant: f0.to_string(),
        expected_constant: rk,
        complete,
        singular_cosets: singular,
        candidates_tried: cands.len(),
        matched,
        offending: best.unwrap_or_default(),
        verdict: Verdict::from_bool(ok),
    })
}
