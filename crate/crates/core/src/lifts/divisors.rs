//! Divisor multiplicities Σ_d f(d²n, dℓ) and the reflectivity scan.

use super::verify::Verdict;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::jacobi::{JacobiFormExpansion, VVDecomposition};
use crate::lattice::Elem;
use crate::series::serialize::fmt_q;
use crate::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn mu_max(dec: &VVDecomposition) -> Q {
    dec.min_norm.iter().copied().max().unwrap_or(Q::from_integer(0))
}

/// Σ_{d ≥ 1} F_{dγ}(d²e) for e < 0.
pub fn multiplicity_by_class(dec: &VVDecomposition, g: &[i64], e: Q) -> Result<Int> {
    if e >= Q::from_integer(0) {
        return Err(Error::Invalid("divisor classes need negative norm".into()));
    }
    let top = mu_max(dec);
    let mut total = Int::ZERO;
    let mut d = 1i64;
    loop {
        let ex = e * Q::from_integer(d * d);
        if -ex > top {
            break;
        }
        let h = dec.form.mul(d, g);
        let i = dec.form.index_of(&h);
        if ex >= dec.complete_below[i] {
            return Err(Error::InsufficientPrecision {
                requested: ex.to_string(),
                available: dec.complete_below[i].to_string(),
            });
        }
        if let Some(c) = dec.components[i].get(&ex) {
            total += c;
        }
        d += 1;
    }
    Ok(total)
}

/// Σ_d f(d²n, dℓ) read straight from the series of ψ.
pub fn divisor_multiplicity(psi: &JacobiFormExpansion, dec: &VVDecomposition, n: Q, l: &[Q]) -> Result<Int> {
    let zd = psi.series.z_den() as i64;
    let mut e_num = Vec::with_capacity(l.len());
    for x in l {
        let y = x * Q::from_integer(zd);
        if !y.is_integer() {
            return Ok(Int::ZERO);
        }
        e_num.push(y.to_integer() as i32);
    }
    let e = n - psi.norms().norm(&e_num) / Q::from_integer(2);
    if e >= Q::from_integer(0) {
        return Err(Error::Invalid("divisor classes need 2n − (ℓ,ℓ) < 0".into()));
    }
    let top = mu_max(dec);
    let mut total = Int::ZERO;
    let mut d = 1i64;
    while -(e * Q::from_integer(d * d)) <= top {
        let dq = Q::from_integer(d);
        let dl: Vec<Q> = l.iter().map(|x| x * dq).collect();
        total += &psi.series.coefficient(n * dq * dq, &dl)?;
        d += 1;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub class: Elem,
    pub order: i64,
    /// 2n − (ℓ, ℓ).
    pub norm: String,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectivityReport {
    pub norm_bound: String,
    pub classes_checked: usize,
    pub nonzero: Vec<DivisorClass>,
    /// "(order, norm)" → number of classes with multiplicity one.
    pub table: BTreeMap<String, usize>,
    pub bad: Vec<DivisorClass>,
    pub weight: String,
    pub singular_weight: String,
    pub verdict: Verdict,
}

/// Every class (γ, e) with e ≡ −q(γ), −bound ≤ 2e < 0; multiplicities must lie in {0, 1}.
pub fn reflectivity_report(psi: &JacobiFormExpansion, dec: &VVDecomposition, norm_bound: Q) -> Result<ReflectivityReport> {
    let form = &dec.form;
    let mut checked = 0;
    let mut nonzero = Vec::new();
    let mut bad = Vec::new();
    let mut table = BTreeMap::new();
    let half = norm_bound / Q::from_integer(2);
    for g in form.elements() {
        let mut e = -form.q(&g);
        if e == Q::from_integer(0) {
            e = Q::from_integer(-1);
        }
        while -e <= half {
            checked += 1;
            let m = multiplicity_by_class(dec, &g, e)?;
            let entry = DivisorClass {
                class: g.clone(),
                order: form.order_of(&g),
                norm: fmt_q(&(e * Q::from_integer(2))),
                multiplicity: m.to_string(),
            };
            if m.is_one() {
                *table
                    .entry(format!("({}, {})", entry.order, entry.norm))
                    .or_insert(0) += 1;
                nonzero.push(entry);
            } else if !m.is_zero() {
                bad.push(entry);
            }
            e -= Q::from_integer(1);
        }
    }
    let zero = vec![Q::from_integer(0); psi.rank()];
    let f00 = psi.series.coefficient(Q::from_integer(0), &zero)?;
    let weight = Q::new(f00.to_i64().unwrap_or(0), 2);
    let singular = Q::new(dec.even.lattice.rank() as i64 + 2, 2) - Q::from_integer(1);
    let ok = bad.is_empty() && weight == singular;
    Ok(ReflectivityReport {
        norm_bound: fmt_q(&norm_bound),
        classes_checked: checked,
        nonzero,
        table,
        bad,
        weight: fmt_q(&weight),
        singular_weight: fmt_q(&singular),
        verdict: Verdict::from_bool(ok),
    })
}
