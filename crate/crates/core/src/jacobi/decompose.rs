//! Theta decomposition φ = Σ_γ F_γ Θ_γ over the even sublattice.

use super::form::JacobiFormExpansion;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::enumerate::coset_min;
use crate::lattice::{even_sublattice, linalg, DiscriminantFormData, Elem, EvenSublattice};
use crate::series::{LaurentPoly, PuiseuxSeries};
use crate::Q;
use num_integer::Integer;
use std::collections::BTreeMap;

/// Two terms of one class and one hyperbolic norm with different coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub class: Elem,
    pub exponent: Q,
    pub first: Int,
    pub second: Int,
}

#[derive(Clone, Debug)]
pub struct VVDecomposition {
    pub even: EvenSublattice,
    pub form: DiscriminantFormData,
    /// F_γ as exponent → coefficient, indexed by element index of `form`.
    pub components: Vec<BTreeMap<Q, Int>>,
    /// F_γ is complete below this exponent (source precision minus μ_γ).
    pub complete_below: Vec<Q>,
    /// μ_γ = min (ℓ, ℓ)/2 over the coset.
    pub min_norm: Vec<Q>,
    pub violations: Vec<Violation>,
}

impl VVDecomposition {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn component(&self, g: &[i64]) -> &BTreeMap<Q, Int> {
        &self.components[self.form.index_of(g)]
    }

    /// F_γ as a rank-0 series.
    pub fn component_series(&self, g: &[i64]) -> PuiseuxSeries {
        let i = self.form.index_of(g);
        let c = &self.components[i];
        let mut den = 1i64;
        for q in c.keys() {
            den = den.lcm(q.denom());
        }
        PuiseuxSeries::from_levels(
            0,
            den,
            1,
            self.complete_below[i],
            c.iter().map(|(q, v)| {
                (
                    (q * Q::from_integer(den)).to_integer(),
                    LaurentPoly::monomial(0, Default::default(), v.clone()),
                )
            }),
        )
    }

    /// Coefficients below exponent `e` (with their exponents) of F_γ.
    pub fn principal_part(&self, g: &[i64], below: Q) -> Vec<(Q, Int)> {
        self.component(g)
            .range(..below)
            .map(|(q, v)| (*q, v.clone()))
            .collect()
    }
}

/// Decompose a Jacobi form whose ζ-exponents restrict to L_ev^∨.
pub fn theta_decompose(phi: &JacobiFormExpansion) -> Result<VVDecomposition> {
    let even = even_sublattice(&phi.index)?;
    let gram_ev = even
        .lattice
        .int_gram()
        .ok_or_else(|| Error::Invalid("index lattice is not integral".into()))?;
    let form = DiscriminantFormData::from_even_lattice(&gram_ev)?;
    let s = &phi.series;
    let zd = s.z_den() as i64;
    let ne = phi.norms();
    let mut components: Vec<BTreeMap<Q, Int>> = vec![BTreeMap::new(); form.size()];
    let mut violations = Vec::new();
    for (n, p) in s.levels() {
        let nq = Q::new(n, s.q_den());
        for (e, c) in p.iter() {
            let ei: Vec<i64> = e.iter().map(|x| *x as i64).collect();
            let restricted = even.restrict_int(&ei);
            if restricted.iter().any(|x| x % zd != 0) {
                return Err(Error::NotInDual);
            }
            let cp: Vec<i64> = restricted.iter().map(|x| x / zd).collect();
            let class = form.class_of(&cp)?;
            let idx = form.index_of(&class);
            let ex = nq - ne.norm(e) / Q::from_integer(2);
            match components[idx].get(&ex) {
                Some(old) if old != c => violations.push(Violation {
                    class,
                    exponent: ex,
                    first: old.clone(),
                    second: c.clone(),
                }),
                Some(_) => {}
                None => {
                    components[idx].insert(ex, c.clone());
                }
            }
        }
    }
    let gram_ev_q = linalg::to_q(&gram_ev);
    let inv = linalg::inverse(&gram_ev_q).expect("nondegenerate");
    let mut min_norm = Vec::with_capacity(form.size());
    for g in form.elements() {
        let rep: Vec<Q> = form
            .representative(&g)
            .expect("lattice form")
            .iter()
            .map(|x| Q::from_integer(*x))
            .collect();
        let y = linalg::mat_vec(&inv, &rep);
        min_norm.push(coset_min(&gram_ev_q, &y) / Q::from_integer(2));
    }
    let complete_below = min_norm.iter().map(|m| s.q_prec() - m).collect();
    Ok(VVDecomposition {
        even,
        form,
        components,
        complete_below,
        min_norm,
        violations,
    })
}
