//! Discriminant forms from Jordan-component symbols, and the Conway-group
//! lattice comparison for the eight root systems.

use super::discriminant::{finite_qf_invariants, DiscriminantFormData, FiniteQfInvariants};
use super::gram::{even_sublattice, gram_underline_r};
use super::linalg;
use super::roots::{build_root_datum, RootSystemSpec};
use crate::cyclotomic::kronecker;
use crate::error::{Error, Result};
use crate::Q;
use num_traits::Zero;
use serde::Serialize;

/// One Jordan component q^{±n} (odd q), q_II^{±n} or q_t^{±n} (q a power of two).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanComponent {
    pub scale: i64,
    pub sign: i8,
    pub rank: usize,
    /// None for odd primes and for type II; Some(t) for 2-adic odd type.
    pub oddity: Option<i64>,
}

fn parse_component(tok: &str) -> Result<JordanComponent> {
    let bad = || Error::Invalid(format!("bad Jordan component {tok:?}"));
    let (head, tail) = tok.split_once('^').ok_or_else(bad)?;
    let (scale_s, ty) = match head.split_once('_') {
        Some((s, t)) => (s, Some(t)),
        None => (head, None),
    };
    let scale: i64 = scale_s.parse().map_err(|_| bad())?;
    let (sign, rank_s) = match tail.as_bytes().first() {
        Some(b'+') => (1, &tail[1..]),
        Some(b'-') => (-1, &tail[1..]),
        _ => return Err(bad()),
    };
    let rank: usize = rank_s.parse().map_err(|_| bad())?;
    let two_power = scale > 1 && scale & (scale - 1) == 0;
    let oddity = match ty {
        None if scale % 2 == 1 => None,
        Some("II") if two_power => {
            if rank % 2 == 1 {
                return Err(bad());
            }
            None
        }
        Some(t) if two_power => Some(t.parse::<i64>().map_err(|_| bad())?.rem_euclid(8)),
        _ => return Err(bad()),
    };
    Ok(JordanComponent {
        scale,
        sign,
        rank,
        oddity,
    })
}

/// Parse a whitespace-separated symbol such as `2_3^-1 4_1^+1 8_II^-2` or `3^+5`.
pub fn parse_symbol(s: &str) -> Result<Vec<JordanComponent>> {
    s.split_whitespace().map(parse_component).collect()
}

fn diagonal(scale: i64, q: &[Q]) -> Result<DiscriminantFormData> {
    let n = q.len();
    let b: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q[i] * Q::from_integer(2) } else { Q::zero() }).collect())
        .collect();
    DiscriminantFormData::from_generators(vec![scale; n], q, &b)
}

/// The hyperbolic plane (ε = +) or the anisotropic plane (ε = −) at scale q.
fn even_plane(scale: i64, sign: i8) -> Result<DiscriminantFormData> {
    let v = if sign > 0 { Q::zero() } else { Q::new(1, scale) };
    let off = Q::new(1, scale);
    DiscriminantFormData::from_generators(vec![scale, scale], &[v, v], &[vec![v * 2, off], vec![off, v * 2]])
}

/// Units u_i ∈ {1, 3, 5, 7} with Σu ≡ t and (2/Πu) = ε.
fn odd_units(rank: usize, t: i64, sign: i8) -> Option<Vec<i64>> {
    fn go(rank: usize, acc: &mut Vec<i64>, t: i64, sign: i8) -> bool {
        if acc.len() == rank {
            let sum: i64 = acc.iter().sum();
            let prod = acc.iter().product::<i64>().rem_euclid(8);
            let eps = if prod == 1 || prod == 7 { 1 } else { -1 };
            return sum.rem_euclid(8) == t && eps == sign;
        }
        let start = acc.last().copied().unwrap_or(1);
        for u in [1, 3, 5, 7] {
            if u < start {
                continue;
            }
            acc.push(u);
            if go(rank, acc, t, sign) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(rank, &mut acc, t, sign).then_some(acc)
}

fn component_form(c: &JordanComponent) -> Result<DiscriminantFormData> {
    let q = c.scale;
    if q % 2 == 1 {
        let p = (2..=q).find(|p| q % p == 0).unwrap_or(q);
        let nonres = (2..p).find(|a| kronecker(*a, p) == -1).unwrap_or(1);
        let mut units = vec![1i64; c.rank];
        if c.sign < 0 {
            *units.last_mut().ok_or_else(|| Error::Invalid("empty component".into()))? = nonres;
        }
        // lattice Gram q·diag(a_i) gives q(e_i/(q a_i)) = (2a_i)^{-1}/q
        let vals: Vec<Q> = units
            .iter()
            .map(|a| {
                let inv = (1..q).find(|x| (x * 2 * a).rem_euclid(q) == 1).unwrap_or(1);
                Q::new(inv, q)
            })
            .collect();
        return diagonal(q, &vals);
    }
    match c.oddity {
        None => {
            let planes = c.rank / 2;
            let mut out: Option<DiscriminantFormData> = None;
            for i in 0..planes {
                let sign = if i == 0 { c.sign } else { 1 };
                let p = even_plane(q, sign)?;
                out = Some(match out {
                    None => p,
                    Some(o) => o.direct_sum(&p)?,
                });
            }
            out.ok_or_else(|| Error::Invalid("empty component".into()))
        }
        Some(t) => {
            let units = odd_units(c.rank, t, c.sign)
                .ok_or_else(|| Error::Invalid(format!("no odd Jordan component {q}_{t}^{}{}", c.sign, c.rank)))?;
            let vals: Vec<Q> = units.iter().map(|u| Q::new(*u, 2 * q)).collect();
            diagonal(q, &vals)
        }
    }
}

/// The discriminant form of a symbol (trivial form for an empty symbol).
pub fn form_from_symbol(s: &str) -> Result<DiscriminantFormData> {
    let mut out = DiscriminantFormData::from_generators(vec![], &[], &[])?;
    for c in parse_symbol(s)? {
        out = out.direct_sum(&component_form(&c)?)?;
    }
    Ok(out)
}

/// D(U(N)).
pub fn hyperbolic_form(n: i64) -> Result<DiscriminantFormData> {
    if n == 1 {
        return DiscriminantFormData::from_generators(vec![], &[], &[]);
    }
    let off = Q::new(1, n);
    DiscriminantFormData::from_generators(vec![n, n], &[Q::zero(), Q::zero()], &[vec![Q::zero(), off], vec![off, Q::zero()]])
}

/// Genus data of L_ev and of the fixed-point lattice Λ_g, with the class of g.
#[derive(Clone, Copy, Debug)]
pub struct ConwayRow {
    pub root_system: &'static str,
    pub even_symbol: &'static str,
    pub class: &'static str,
    pub cycle_shape: &'static str,
    pub fixed_symbol: &'static str,
}

pub const CONWAY_TABLE: [ConwayRow; 8] = [
    ConwayRow { root_system: "A4", even_symbol: "5^+3", class: "5C", cycle_shape: "1^-1 5^5", fixed_symbol: "5^+3" },
    ConwayRow { root_system: "A1+B3", even_symbol: "2_II^+2 5^+3", class: "-10D", cycle_shape: "1^-2 2^3 5^2 10^1", fixed_symbol: "2_II^-4 5^-3" },
    ConwayRow { root_system: "A1+C3", even_symbol: "2_3^-1 4_1^+1 8_II^-2", class: "-8E", cycle_shape: "1^-2 2^3 4^1 8^2", fixed_symbol: "2_3^-1 4_1^+1 8_II^-2" },
    ConwayRow { root_system: "B2+G2", even_symbol: "2_6^+2 4_II^-2 3^-3", class: "-12I", cycle_shape: "1^-2 2^2 3^2 4^1 12^1", fixed_symbol: "2_2^+2 4_II^-2 3^+3" },
    ConwayRow { root_system: "3A2", even_symbol: "3^-3", class: "3C", cycle_shape: "1^-3 3^9", fixed_symbol: "3^+5" },
    ConwayRow { root_system: "3A1+A3", even_symbol: "2_6^+2 4_II^-2", class: "-4C", cycle_shape: "1^-4 2^6 4^4", fixed_symbol: "2_6^+2 4_II^+4" },
    ConwayRow { root_system: "2A1+A2+B2", even_symbol: "2_II^+2 3^-3", class: "-6C", cycle_shape: "1^-4 2^5 3^4 6^1", fixed_symbol: "2_II^-6 3^-5" },
    ConwayRow { root_system: "8A1", even_symbol: "2_II^+2", class: "-2A", cycle_shape: "1^-8 2^16", fixed_symbol: "2_II^+8" },
];

pub fn conway_row(spec: &RootSystemSpec) -> Result<&'static ConwayRow> {
    let name = spec.to_string();
    CONWAY_TABLE
        .iter()
        .find(|r| r.root_system == name)
        .ok_or(Error::IllegalRootSystem(name))
}

/// D(L_ev) for a root system.
pub fn even_discriminant_form(spec: &RootSystemSpec) -> Result<DiscriminantFormData> {
    let datum = build_root_datum(spec)?;
    let ev = even_sublattice(&gram_underline_r(&datum))?;
    let g = ev
        .lattice
        .int_gram()
        .ok_or_else(|| Error::Invalid("even sublattice is not integral".into()))?;
    DiscriminantFormData::from_even_lattice(&g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConwayReport {
    pub root_system: String,
    pub level: i64,
    pub class: String,
    pub cycle_shape: String,
    pub even_symbol: String,
    /// D(L_ev) matches the tabulated genus of L_ev.
    pub even_genus_agrees: bool,
    pub left: FiniteQfInvariants,
    pub right: FiniteQfInvariants,
    pub orders_agree: bool,
    pub invariant_factors_agree: bool,
    pub levels_agree: bool,
    pub signatures_agree: bool,
    pub q_values_agree: bool,
    pub agrees: bool,
}

/// D(U(N)⊕U(N)⊕L_ev^∨(−N)) against D(U⊕U(N)⊕Λ_g(−1)).
pub fn conway_correspondence_check(spec: &RootSystemSpec) -> Result<ConwayReport> {
    let row = conway_row(spec)?;
    let d_ev = even_discriminant_form(spec)?;
    let n = d_ev.level();
    let datum = build_root_datum(spec)?;
    let ev = even_sublattice(&gram_underline_r(&datum))?;
    let inv = ev.lattice.inverse();
    let scaled = linalg::to_int(&linalg::scale(&inv, Q::from_integer(n)))
        .ok_or_else(|| Error::Invalid("L_ev^∨(N) is not integral".into()))?;
    let dual_part = DiscriminantFormData::from_even_lattice(&scaled)?.rescaled(-1)?;
    let u_n = hyperbolic_form(n)?;
    let left = u_n.direct_sum(&u_n)?.direct_sum(&dual_part)?;
    let right = u_n.direct_sum(&form_from_symbol(row.fixed_symbol)?.rescaled(-1)?)?;
    let even_genus_agrees = finite_qf_invariants(&d_ev)? == finite_qf_invariants(&form_from_symbol(row.even_symbol)?)?;
    let (l, r) = (finite_qf_invariants(&left)?, finite_qf_invariants(&right)?);
    let orders_agree = l.order == r.order;
    let invariant_factors_agree = l.invariant_factors == r.invariant_factors;
    let levels_agree = l.level == r.level;
    let signatures_agree = l.signature == r.signature;
    let q_values_agree = l.q_values == r.q_values;
    Ok(ConwayReport {
        root_system: spec.to_string(),
        level: n,
        class: row.class.into(),
        cycle_shape: row.cycle_shape.into(),
        even_symbol: row.even_symbol.into(),
        even_genus_agrees,
        agrees: orders_agree && invariant_factors_agree && levels_agree && signatures_agree && q_values_agree,
        left: l,
        right: r,
        orders_agree,
        invariant_factors_agree,
        levels_agree,
        signatures_agree,
        q_values_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        let c = parse_symbol("2_3^-1 4_1^+1 8_II^-2").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].oddity, Some(3));
        assert_eq!(c[2].oddity, None);
        assert!(parse_symbol("2_II^+1").is_err());
        assert!(parse_symbol("6^+1").is_err());
    }

    #[test]
    fn anisotropic_plane() {
        let d = form_from_symbol("2_II^-2").unwrap();
        assert_eq!(d.size(), 4);
        assert_eq!(d.milgram_signature().unwrap(), 4);
        let h = form_from_symbol("2_II^+2").unwrap();
        assert_eq!(h.milgram_signature().unwrap(), 0);
    }

    #[test]
    fn odd_prime_components() {
        // D(A₂) = 3^{-1}, D(E₆) = 3^{+1}
        assert_eq!(form_from_symbol("3^-1").unwrap().q_multiset().get(&Q::new(1, 3)), Some(&2));
        assert_eq!(form_from_symbol("3^+1").unwrap().q_multiset().get(&Q::new(2, 3)), Some(&2));
    }
}
