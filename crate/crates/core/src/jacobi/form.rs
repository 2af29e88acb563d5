//! Jacobi forms as tagged series; theta blocks and θ_R.

use crate::error::Result;
use crate::int::Int;
use crate::lattice::linalg::{self, Mat};
use crate::lattice::{build_root_datum, gram_underline_r, GramLattice, RootDatum, RootSystemSpec};
use crate::series::{eta_power, jtheta_linear, ps_mul, BinomialFactor, Exp, PuiseuxSeries};
use crate::Q;
use num_integer::Integer;
use num_traits::Zero;

/// A truncated Jacobi form together with its index lattice and weight.
#[derive(Clone, Debug)]
pub struct JacobiFormExpansion {
    /// Gram matrix of the index lattice; ζ-exponents are functionals on it.
    pub index: GramLattice,
    pub weight: Q,
    /// Exponent of ν_η in the character, mod 24.
    pub eta_character: i64,
    pub series: PuiseuxSeries,
    pub claimed_holomorphic: bool,
    /// Factorization of the leading coefficient into triple-product
    /// binomials, over the series' ζ-denominator.
    pub leading_factors: Option<Vec<BinomialFactor>>,
}

/// Norms (ℓ, ℓ) of ζ-exponent numerators, computed with an integral
/// adjugate so the inner loop stays in integers.
#[derive(Clone, Debug)]
pub struct NormEvaluator {
    adj: Vec<Vec<i64>>,
    den: i64,
}

impl NormEvaluator {
    /// For functionals stored as numerators over `z_den` on a lattice with
    /// Gram matrix `gram`.
    pub fn new(gram: &Mat, z_den: i32) -> Self {
        let inv = linalg::inverse(gram).expect("nondegenerate index");
        let mut l = 1i64;
        for r in &inv {
            for x in r {
                l = l.lcm(x.denom());
            }
        }
        let adj = inv
            .iter()
            .map(|r| r.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect())
            .collect();
        NormEvaluator {
            adj,
            den: l * (z_den as i64) * (z_den as i64),
        }
    }

    pub fn norm(&self, e: &[i32]) -> Q {
        Q::new(self.norm_num(e), self.den)
    }

    /// Numerator of the norm over [`Self::den`].
    pub fn norm_num(&self, e: &[i32]) -> i64 {
        let mut s = 0i64;
        for (i, row) in self.adj.iter().enumerate() {
            if e[i] == 0 {
                continue;
            }
            let mut t = 0i64;
            for (j, a) in row.iter().enumerate() {
                t += a * e[j] as i64;
            }
            s += t * e[i] as i64;
        }
        s
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

impl JacobiFormExpansion {
    pub fn rank(&self) -> usize {
        self.series.rank()
    }

    pub fn norms(&self) -> NormEvaluator {
        NormEvaluator::new(&self.index.gram, self.series.z_den())
    }

    /// Classical index matrix ½·Gram.
    pub fn classical_index(&self) -> Mat {
        linalg::scale(&self.index.gram, Q::new(1, 2))
    }

    pub fn q_order(&self) -> Q {
        self.series.order()
    }

    pub fn with_series(&self, series: PuiseuxSeries) -> Self {
        JacobiFormExpansion {
            series,
            leading_factors: None,
            ..self.clone()
        }
    }
}

/// η^{eta_power}·Π ϑ(τ, (form, 𝔷))^{mult}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBlockSpec {
    pub eta_power: i64,
    pub factors: Vec<(Vec<Q>, u32)>,
}

impl ThetaBlockSpec {
    /// Θ_f = η^{f(0)} Π (ϑ_a/η)^{f(a)}.
    pub fn from_f(f0: i64, factors: Vec<(Vec<Q>, u32)>) -> Self {
        let total: i64 = factors.iter().map(|(_, m)| *m as i64).sum();
        ThetaBlockSpec {
            eta_power: f0 - total,
            factors,
        }
    }

    pub fn from_int_forms(eta_power: i64, forms: &[Vec<i64>]) -> Self {
        ThetaBlockSpec {
            eta_power,
            factors: forms
                .iter()
                .map(|f| (f.iter().map(|x| Q::from_integer(*x)).collect(), 1))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.first().map_or(0, |f| f.0.len())
    }

    pub fn num_thetas(&self) -> i64 {
        self.factors.iter().map(|(_, m)| *m as i64).sum()
    }

    pub fn weight(&self) -> Q {
        Q::new(self.eta_power + self.num_thetas(), 2)
    }

    pub fn q_order(&self) -> Q {
        Q::new(self.eta_power, 24) + Q::new(self.num_thetas(), 8)
    }

    pub fn eta_character(&self) -> i64 {
        (self.eta_power + 3 * self.num_thetas()).rem_euclid(24)
    }

    /// Σ mult·form·formᵀ.
    pub fn gram(&self) -> Mat {
        let r = self.rank();
        let mut g = vec![vec![Q::zero(); r]; r];
        for (f, m) in &self.factors {
            for i in 0..r {
                for j in 0..r {
                    g[i][j] += f[i] * f[j] * Q::from_integer(*m as i64);
                }
            }
        }
        g
    }
}

/// Expand a theta block below `q^prec`.
pub fn theta_block(spec: &ThetaBlockSpec, prec: Q) -> Result<JacobiFormExpansion> {
    let rank = spec.rank();
    let total = spec.q_order();
    let base = prec - total;
    let mut acc = eta_power(spec.eta_power, base + Q::new(spec.eta_power, 24), rank);
    let theta_prec = base + Q::new(1, 8);
    for (form, m) in &spec.factors {
        let t = jtheta_linear(form, theta_prec);
        for _ in 0..*m {
            acc = ps_mul(&acc, &t)?;
        }
    }
    let series = acc.with_prec(prec);
    let zd = series.z_den();
    let factors = if series.is_zero() {
        None
    } else {
        let mut v = Vec::new();
        for (form, m) in &spec.factors {
            let nums: Exp = form
                .iter()
                .map(|x| (x * Q::from_integer(zd as i64)).to_integer() as i32)
                .collect();
            let shift: Exp = nums.iter().map(|x| x / 2).collect();
            for _ in 0..*m {
                v.push(BinomialFactor {
                    coeff: Int::ONE,
                    shift: shift.clone(),
                    step: nums.clone(),
                });
            }
        }
        Some(v)
    };
    let gram = spec.gram();
    Ok(JacobiFormExpansion {
        index: GramLattice { gram },
        weight: spec.weight(),
        eta_character: spec.eta_character(),
        series,
        claimed_holomorphic: false,
        leading_factors: factors,
    })
}

/// The block η^{n−N} Π_{r∈R⁺} ϑ(τ, Σ_f γ_{r,f} z_f) of a root system.
pub fn theta_r_spec(datum: &RootDatum) -> ThetaBlockSpec {
    let n = datum.rank() as i64;
    let big_n = datum.num_positive() as i64;
    ThetaBlockSpec::from_int_forms(n - big_n, &datum.gammas())
}

/// θ_R truncated below `q^prec`.
pub fn theta_r(spec: &RootSystemSpec, prec: Q) -> Result<JacobiFormExpansion> {
    let datum = build_root_datum(spec)?;
    let mut f = theta_block(&theta_r_spec(&datum), prec)?;
    f.index = gram_underline_r(&datum);
    f.claimed_holomorphic = true;
    Ok(f)
}

/// Coefficients with 2n − (ℓ, ℓ) < 0.
pub fn singular_part(phi: &JacobiFormExpansion) -> Vec<(Q, Vec<Q>, Int)> {
    let ne = phi.norms();
    let s = &phi.series;
    let zd = s.z_den() as i64;
    let mut out = Vec::new();
    for (n, p) in s.levels() {
        let two_n = Q::new(2 * n, s.q_den());
        for (e, c) in p.iter() {
            if two_n < ne.norm(e) {
                out.push((
                    Q::new(n, s.q_den()),
                    e.iter().map(|x| Q::new(*x as i64, zd)).collect(),
                    c.clone(),
                ));
            }
        }
    }
    out.sort();
    out
}

/// The trivial block η^{24}: weight 12, index 0.
pub fn delta(prec: Q) -> JacobiFormExpansion {
    JacobiFormExpansion {
        index: GramLattice { gram: vec![] },
        weight: Q::from_integer(12),
        eta_character: 0,
        series: eta_power(24, prec, 0),
        claimed_holomorphic: true,
        leading_factors: Some(vec![]),
    }
}

