//! The Weil representation ρ_D on C[D].

use crate::cyclotomic::{kronecker, CycloField, Cyc};
use crate::error::{Error, Result};
use crate::lattice::{DiscriminantFormData, Elem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// ρ(T) e_γ = e(−q(γ)) e_γ and ρ(S) e_γ = c Σ_β e(b(γ, β)) e_β with
/// c = e(sign/8)/√|D| = G/|D|, G the Gauss sum. ρ(S) is kept implicit.
#[derive(Clone, Debug)]
pub struct WeilRepData {
    pub form: DiscriminantFormData,
    pub field: CycloField,
    pub signature: u8,
    pub gauss: Cyc,
    /// G/|D|.
    pub s_scale: Cyc,
    pub t_diag: Vec<Cyc>,
}

/// Dense ρ(S) is only materialized up to this many elements.
pub const DENSE_LIMIT: usize = 128;

pub fn build_weilrep(d: &DiscriminantFormData) -> Result<WeilRepData> {
    let signature = d.milgram_signature()?;
    if signature % 2 == 1 {
        return Err(Error::OddSignature);
    }
    let field = CycloField::new(d.field_order());
    let gauss = d.gauss_sum(&field);
    let inv = BigRational::new(BigInt::one(), BigInt::from(d.size()));
    let s_scale = field.scale(&gauss, &inv);
    let t_diag = d.elements().map(|g| field.e(-d.q_num(&g), d.den)).collect();
    Ok(WeilRepData {
        form: d.clone(),
        field,
        signature,
        gauss,
        s_scale,
        t_diag,
    })
}

impl WeilRepData {
    pub fn dimension(&self) -> usize {
        self.form.size()
    }

    /// ⟨e_β, ρ(S) e_γ⟩.
    pub fn s_entry(&self, beta: &[i64], gamma: &[i64]) -> Cyc {
        let d = &self.form;
        self.field.mul(&self.s_scale, &self.field.e(d.b_num(gamma, beta), d.den))
    }

    /// ρ(S) as a dense matrix (row β, column γ); small forms only.
    pub fn dense_s(&self) -> Result<Vec<Vec<Cyc>>> {
        if self.dimension() > DENSE_LIMIT {
            return Err(Error::Invalid(format!(
                "dense ρ(S) limited to {DENSE_LIMIT} elements, form has {}",
                self.dimension()
            )));
        }
        let elems: Vec<Elem> = self.form.elements().collect();
        Ok(elems
            .iter()
            .map(|b| elems.iter().map(|g| self.s_entry(b, g)).collect())
            .collect())
    }

    /// ρ(S) applied to a vector with rational entries, exactly.
    pub fn apply_s(&self, v: &[BigRational]) -> Vec<Cyc> {
        let d = &self.form;
        let m = self.field.order() as i64;
        let step = m / d.den;
        let elems: Vec<Elem> = d.elements().collect();
        let support: Vec<usize> = (0..v.len()).filter(|i| !v[*i].is_zero()).collect();
        elems
            .iter()
            .map(|beta| {
                let mut counts = vec![BigRational::zero(); m as usize];
                for &i in &support {
                    let k = d.b_num(&elems[i], beta) * step;
                    counts[k as usize] += &v[i];
                }
                let x = self.field.from_exponents(&counts);
                self.field.mul(&self.s_scale, &x)
            })
            .collect()
    }

    /// ρ(T) applied to a vector with cyclotomic entries.
    pub fn apply_t(&self, v: &[Cyc]) -> Vec<Cyc> {
        v.iter().zip(&self.t_diag).map(|(x, t)| self.field.mul(x, t)).collect()
    }

    /// ρ(S)² e_γ = e(sign/4) e_{−γ}: c²|D| = e(sign/4) plus nondegeneracy
    /// (character orthogonality), and the full matrix identity for small forms.
    pub fn check_s_squared(&self) -> Result<bool> {
        let f = &self.field;
        let n = BigRational::from_integer(BigInt::from(self.dimension()));
        let lhs = f.scale(&f.mul(&self.s_scale, &self.s_scale), &n);
        let phase = f.e(self.signature as i64, 4);
        if lhs != phase || !self.form.is_nondegenerate() {
            return Ok(false);
        }
        if self.dimension() > DENSE_LIMIT {
            return Ok(true);
        }
        let d = &self.form;
        let m = f.order();
        let step = m / d.den as usize;
        let c2 = f.mul(&self.s_scale, &self.s_scale);
        let elems: Vec<Elem> = d.elements().collect();
        for g in &elems {
            let target = d.neg(g);
            for beta in &elems {
                let mut counts = vec![0i64; m];
                for mid in &elems {
                    counts[(d.b_num(g, mid) + d.b_num(mid, beta)) as usize * step % m] += 1;
                }
                let counts: Vec<BigRational> = counts.into_iter().map(|c| BigRational::from_integer(c.into())).collect();
                let sum = f.from_exponents(&counts);
                let want = if *beta == target { phase.clone() } else { f.zero() };
                if f.mul(&c2, &sum) != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// (ρ(S)ρ(T))³ = ρ(S)² on every basis vector; forms of at most 32 elements.
    pub fn check_st_cubed(&self) -> Result<bool> {
        if self.dimension() > 32 {
            return Err(Error::Invalid("(ST)³ check limited to 32 elements".into()));
        }
        let s = self.dense_s()?;
        let f = &self.field;
        let k = self.dimension();
        let apply = |v: &[Cyc]| -> Vec<Cyc> {
            let tv = self.apply_t(v);
            (0..k)
                .map(|r| (0..k).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(&s[r][c], &tv[c]))))
                .collect()
        };
        let phase = f.e(self.signature as i64, 4);
        let elems: Vec<Elem> = self.form.elements().collect();
        for (i, g) in elems.iter().enumerate() {
            let mut v = vec![f.zero(); k];
            v[i] = f.one();
            for _ in 0..3 {
                v = apply(&v);
            }
            let target = self.form.index_of(&self.form.neg(g));
            for (r, x) in v.iter().enumerate() {
                let want = if r == target { phase.clone() } else { f.zero() };
                if *x != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// χ_D(a) = (a / |D|) e((a − 1)·oddity/8), with the oddity read off the
/// Gauss-sum phase of the 2-part.
pub fn chi_d(d: &DiscriminantFormData, a: i64) -> Result<Cyc> {
    if a.gcd(&d.level()) != 1 || a.gcd(&(d.size() as i64)) != 1 {
        return Err(Error::NotCoprime(a));
    }
    if d.milgram_signature()? % 2 == 1 {
        return Err(Error::OddSignature);
    }
    let two = d.primary_part(2)?;
    let oddity = if two.size() == 1 { 0 } else { two.milgram_signature()? as i64 };
    let field = CycloField::new(8);
    let k = kronecker(a, d.size() as i64);
    let phase = field.e((a - 1).rem_euclid(8) * oddity, 8);
    Ok(field.scale(&phase, &BigRational::from_integer(BigInt::from(k))))
}
