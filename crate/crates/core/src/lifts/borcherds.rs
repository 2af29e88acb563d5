//! ψ = −φ|T₋(2)/φ and its Borcherds product as a Fourier–Jacobi expansion.

use super::triple::TripleSeries;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::jacobi::{hecke_tminus, hecke_tminus_unnormalized, theta_block, JacobiFormExpansion, ThetaBlockSpec};
use crate::series::{ps_add, ps_exact_div, ps_mul, Exp, LaurentPoly, PuiseuxSeries};
use crate::Q;
use num_integer::Integer;
use std::collections::BTreeMap;

/// −φ|T₋(2)/φ, divided exactly using φ's leading-coefficient factorization.
pub fn psi_of(phi: &JacobiFormExpansion) -> Result<JacobiFormExpansion> {
    let factors = phi
        .leading_factors
        .as_ref()
        .ok_or(Error::MissingFactorization)?;
    let t2 = hecke_tminus(phi, 2)?;
    let q = ps_exact_div(&t2.series.neg(), &phi.series, factors)?;
    Ok(JacobiFormExpansion {
        index: phi.index.clone(),
        weight: Q::from_integer(0),
        eta_character: 0,
        series: q.reduced(),
        claimed_holomorphic: false,
        leading_factors: None,
    })
}

#[derive(Clone, Debug)]
pub struct BorcherdsInput {
    pub psi: JacobiFormExpansion,
    /// ℓ ↦ f(0, ℓ), ℓ as a functional on the index lattice.
    pub f0: BTreeMap<Vec<Q>, Int>,
    pub c: Q,
    pub prefactor_block: ThetaBlockSpec,
    /// ℓ > 0 iff (w, ℓ) > 0; lexicographic on the support of f(0, ·).
    pub positivity_functional: Vec<Q>,
}

impl BorcherdsInput {
    pub fn f00(&self) -> Int {
        let zero = vec![Q::from_integer(0); self.psi.rank()];
        self.f0.get(&zero).cloned().unwrap_or(Int::ZERO)
    }

    /// Weight f(0, 0)/2 of the product.
    pub fn weight(&self) -> Q {
        Q::new(self.f00().to_i64().expect("small"), 2)
    }

    pub fn is_positive(&self, l: &[Q]) -> bool {
        l.iter()
            .zip(&self.positivity_functional)
            .map(|(a, b)| a * b)
            .sum::<Q>()
            > Q::from_integer(0)
    }
}

/// Borcherds data of θ: ψ = −θ|T₋(2)/θ with its q⁰ layer.
pub fn borcherds_input(theta: &JacobiFormExpansion) -> Result<BorcherdsInput> {
    borcherds_input_from_psi(psi_of(theta)?)
}

pub fn borcherds_input_from_psi(psi: JacobiFormExpansion) -> Result<BorcherdsInput> {
    let s = &psi.series;
    let rank = psi.rank();
    let zd = s.z_den() as i64;
    let mut f0 = BTreeMap::new();
    let mut c_num = Q::from_integer(0);
    let ne = psi.norms();
    let mut max_abs = 1i64;
    if let Some(p) = s.level(0) {
        for (e, c) in p.iter() {
            let l: Vec<Q> = e.iter().map(|x| Q::new(*x as i64, zd)).collect();
            let neg: Exp = e.iter().map(|x| -x).collect();
            if p.get(&neg) != *c {
                return Err(Error::Invalid(format!("f(0, ℓ) ≠ f(0, −ℓ) at ℓ = {l:?}")));
            }
            let ci = c
                .to_i64()
                .ok_or_else(|| Error::Invalid("f(0, ℓ) too large".into()))?;
            c_num += ne.norm(e) * Q::from_integer(ci);
            max_abs = max_abs.max(e.iter().map(|x| (*x as i64).abs()).max().unwrap_or(0));
            f0.insert(l, c.clone());
        }
    }
    if s.order() < Q::from_integer(0) {
        return Err(Error::Invalid("ψ has negative q-order".into()));
    }
    let c = c_num / Q::from_integer(2 * rank as i64);
    let base = 2 * max_abs + 1;
    let positivity_functional: Vec<Q> = (0..rank)
        .map(|i| Q::from_integer(base.pow((rank - 1 - i) as u32)) / Q::from_integer(zd))
        .collect();
    let mut input = BorcherdsInput {
        psi,
        f0,
        c,
        prefactor_block: ThetaBlockSpec {
            eta_power: 0,
            factors: vec![],
        },
        positivity_functional,
    };
    let mut factors = Vec::new();
    for (l, v) in &input.f0 {
        if !input.is_positive(l) {
            continue;
        }
        let m = v
            .to_i64()
            .filter(|m| *m >= 0)
            .ok_or_else(|| Error::Invalid("negative f(0, ℓ) for ℓ > 0".into()))?;
        factors.push((l.clone(), m as u32));
    }
    let f00 = input.f00().to_i64().expect("small");
    input.prefactor_block = ThetaBlockSpec::from_f(f00, factors);
    Ok(input)
}

fn integral_c(input: &BorcherdsInput) -> Result<i64> {
    if !input.c.is_integer() || input.c < Q::from_integer(0) {
        return Err(Error::Invalid(format!("Weyl vector term C = {} is not a nonnegative integer", input.c)));
    }
    Ok(input.c.to_integer())
}

/// f(k, ·) as a Laurent polynomial (integral k).
fn f_level(psi: &PuiseuxSeries, k: i64) -> Option<&LaurentPoly> {
    psi.level(k * psi.q_den())
}

/// Π_ℓ (1 − X ζ^ℓ)^{f_ℓ} = Σ_k e_k X^k for k ≤ kmax, via power sums.
pub fn group_expansion(f: &LaurentPoly, kmax: usize) -> Vec<LaurentPoly> {
    let rank = f.rank();
    let p: Vec<LaurentPoly> = (0..=kmax)
        .map(|j| if j == 0 { LaurentPoly::zero(rank) } else { f.scale_exponents(j as i32) })
        .collect();
    let mut e = vec![LaurentPoly::one(rank)];
    for k in 1..=kmax {
        let mut s = LaurentPoly::zero(rank);
        for j in 1..=k {
            s.add_assign(&p[j].mul(&e[k - j]));
        }
        let ek = s
            .neg()
            .div_exact_scalar(&Int::from(k as i64))
            .expect("power-sum recursion over Z");
        e.push(ek);
    }
    e
}

fn check_psi_prec(input: &BorcherdsInput, n_max: i64, m_max: i64) -> Result<()> {
    let need = Q::from_integer(n_max.max(0) * m_max.max(0));
    let have = input.psi.series.q_prec();
    if have <= need {
        return Err(Error::InsufficientPrecision {
            requested: need.to_string(),
            available: have.to_string(),
        });
    }
    Ok(())
}

/// Bounds (n_max, m_max) of the product part below the prefactor.
fn product_box(input: &BorcherdsInput, q_max: i64, xi_max: u32) -> Result<(i64, i64, i64)> {
    let c = integral_c(input)?;
    let ord = input.prefactor_block.q_order();
    let n_max = (Q::from_integer(q_max) - ord).floor().to_integer();
    let m_max = xi_max as i64 - c;
    Ok((c, n_max, m_max))
}

fn prefactor_triple(input: &BorcherdsInput, q_max: i64, xi_max: u32, c: i64) -> Result<TripleSeries> {
    let rank = input.psi.rank();
    let theta = if input.prefactor_block.factors.is_empty() {
        crate::series::eta_power(input.prefactor_block.eta_power, Q::from_integer(q_max + 1), rank)
    } else {
        theta_block(&input.prefactor_block, Q::from_integer(q_max + 1))?.series
    };
    TripleSeries::from_layers(rank, Q::from_integer(q_max), xi_max, [(c as u32, theta)])
}

/// Θ_{f(0,·)} ξ^C Π_{m ≥ 1, n ≥ 0, ℓ} (1 − qⁿ ζ^ℓ ξ^m)^{f(nm, ℓ)} through (q_max, xi_max).
pub fn borcherds_product(input: &BorcherdsInput, q_max: i64, xi_max: u32) -> Result<TripleSeries> {
    let (c, n_max, m_max) = product_box(input, q_max, xi_max)?;
    let rank = input.psi.rank();
    if m_max < 0 || n_max < 0 {
        return Ok(TripleSeries::zero(rank, Q::from_integer(q_max), xi_max));
    }
    check_psi_prec(input, n_max, m_max)?;
    let psi = &input.psi.series;
    let mut acc: BTreeMap<(i64, i64), LaurentPoly> = BTreeMap::new();
    acc.insert((0, 0), LaurentPoly::one(rank));
    for m in 1..=m_max {
        for n in 0..=n_max {
            let Some(f) = f_level(psi, n * m) else { continue };
            let kmax = if n == 0 { m_max / m } else { (m_max / m).min(n_max / n) };
            let e = group_expansion(f, kmax as usize);
            let mut next = acc.clone();
            for (k, ek) in e.iter().enumerate().skip(1) {
                if ek.is_empty() {
                    continue;
                }
                let (dm, dn) = (k as i64 * m, k as i64 * n);
                for ((am, an), p) in &acc {
                    if am + dm > m_max || an + dn > n_max {
                        continue;
                    }
                    let prod = p.mul(ek);
                    let slot = next
                        .entry((am + dm, an + dn))
                        .or_insert_with(|| LaurentPoly::zero(rank));
                    slot.add_assign(&prod);
                }
            }
            next.retain(|_, p| !p.is_empty());
            acc = next;
        }
    }
    let mut prod = TripleSeries::with_denominators(rank, 1, psi.z_den(), Q::from_integer(q_max), xi_max);
    for ((m, n), p) in &acc {
        prod.add_level(*m as u32, *n, p);
    }
    prefactor_triple(input, q_max, xi_max, c)?.mul(&prod)
}

fn div_series(s: &PuiseuxSeries, k: i64) -> PuiseuxSeries {
    let d = Int::from(k);
    PuiseuxSeries::from_levels(
        s.rank(),
        s.q_den(),
        s.z_den(),
        s.q_prec(),
        s.levels().map(|(n, p)| {
            (
                n,
                p.div_exact_scalar(&d)
                    .expect("exponential recursion over Z"),
            )
        }),
    )
}

/// Θ ξ^C exp(−Σ_M (ψ|T₋(M)) ξ^M) through (q_max, xi_max).
///
/// The layers obey k·E_k = −Σ_j (j·ψ|T₋(j))·E_{k−j}.
pub fn exp_form_product(input: &BorcherdsInput, q_max: i64, xi_max: u32) -> Result<TripleSeries> {
    let (c, n_max, m_max) = product_box(input, q_max, xi_max)?;
    let rank = input.psi.rank();
    if m_max < 0 || n_max < 0 {
        return Ok(TripleSeries::zero(rank, Q::from_integer(q_max), xi_max));
    }
    check_psi_prec(input, n_max, m_max)?;
    let target = Q::from_integer(n_max + 1);
    let h: Vec<PuiseuxSeries> = (1..=m_max)
        .map(|j| hecke_tminus_unnormalized(&input.psi, j as u64).map(|f| f.series.with_prec(target)))
        .collect::<Result<_>>()?;
    let mut e = vec![PuiseuxSeries::one(rank, target)];
    for k in 1..=m_max as usize {
        let mut s = PuiseuxSeries::zero(rank, target);
        for j in 1..=k {
            s = ps_add(&s, &ps_mul(&h[j - 1], &e[k - j])?)?;
        }
        e.push(div_series(&s.neg(), k as i64));
    }
    let (mut qd, mut zd) = (1i64, 1i32);
    for s in &e {
        qd = qd.lcm(&s.q_den());
        zd = zd.lcm(&s.z_den());
    }
    // layers are known through q^{n_max}; the prefactor pushes the rest past q_max
    let mut prod = TripleSeries::with_denominators(rank, qd, zd, Q::from_integer(q_max), xi_max);
    for (k, s) in e.iter().enumerate() {
        for (n, p) in s.rescale(qd, zd).levels() {
            prod.add_level(k as u32, n, p);
        }
    }
    prefactor_triple(input, q_max, xi_max, c)?.mul(&prod)
}

/// Add `delta` to the coefficient f(n, ℓ) of ψ (n ≥ 1, so the q⁰ data stay fixed).
pub fn perturb_psi(input: &mut BorcherdsInput, n: i64, l: &[Q], delta: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::Invalid("perturbation must sit at q-exponent ≥ 1".into()));
    }
    let s = &input.psi.series;
    let mut zd = s.z_den() as i64;
    for x in l {
        zd = zd.lcm(x.denom());
    }
    let e: Exp = l.iter().map(|x| (x * Q::from_integer(zd)).to_integer() as i32).collect();
    let bump = PuiseuxSeries::from_levels(
        s.rank(),
        1,
        zd as i32,
        s.q_prec(),
        [(n, LaurentPoly::monomial(s.rank(), e, Int::from(delta)))],
    );
    input.psi.series = ps_add(s, &bump)?;
    Ok(())
}
