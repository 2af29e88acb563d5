//! Exact arithmetic in cyclotomic fields Q(ζ_M).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The field Q(ζ_M) with power basis 1, ζ, …, ζ^{φ(M)−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloField {
    m: usize,
    /// Φ_M, monic, lowest degree first.
    phi: Vec<i64>,
}

/// An element of a [`CycloField`] in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc(pub Vec<BigRational>);

fn poly_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    debug_assert!(r.iter().all(|x| *x == 0));
    q
}

/// Coefficients of the M-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: usize) -> Vec<i64> {
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_divide(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl CycloField {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1);
        CycloField {
            m,
            phi: cyclotomic_poly(m),
        }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![BigRational::zero(); self.degree()])
    }

    pub fn one(&self) -> Cyc {
        self.rational(BigRational::one())
    }

    pub fn rational(&self, x: BigRational) -> Cyc {
        let mut c = self.zero();
        c.0[0] = x;
        c
    }

    pub fn integer(&self, x: i64) -> Cyc {
        self.rational(BigRational::from_integer(BigInt::from(x)))
    }

    /// Reduce a polynomial in ζ (any length) modulo Φ_M.
    pub fn reduce(&self, mut p: Vec<BigRational>) -> Cyc {
        let d = self.degree();
        for i in (d..p.len()).rev() {
            if p[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[i]);
            for (j, f) in self.phi.iter().enumerate().take(d) {
                if *f != 0 {
                    p[i - d + j] -= &c * BigRational::from_integer(BigInt::from(*f));
                }
            }
        }
        p.resize(d, BigRational::zero());
        Cyc(p)
    }

    /// Σ_k counts[k] ζ^k, exponents read mod M.
    pub fn from_exponents(&self, counts: &[BigRational]) -> Cyc {
        let mut p = vec![BigRational::zero(); self.m];
        for (k, c) in counts.iter().enumerate() {
            p[k % self.m] += c;
        }
        self.reduce(p)
    }

    /// ζ_M^k for any integer k.
    pub fn zeta(&self, k: i64) -> Cyc {
        let e = k.rem_euclid(self.m as i64) as usize;
        let mut p = vec![BigRational::zero(); self.m.max(1)];
        p[e] = BigRational::one();
        self.reduce(p)
    }

    /// e(x) for a rational x whose denominator divides M.
    pub fn e(&self, num: i64, den: i64) -> Cyc {
        assert!((self.m as i64) % den == 0, "e({num}/{den}) not in Q(ζ_{})", self.m);
        self.zeta(num * (self.m as i64 / den))
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Cyc, k: &BigRational) -> Cyc {
        Cyc(a.0.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let d = self.degree();
        let mut p = vec![BigRational::zero(); 2 * d];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        self.reduce(p)
    }

    pub fn pow(&self, a: &Cyc, mut e: u32) -> Cyc {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut p = vec![BigRational::zero(); self.m];
        for (i, x) in a.0.iter().enumerate() {
            p[(self.m - i) % self.m] += x;
        }
        self.reduce(p)
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// The rational value, if `a` lies in Q.
    pub fn as_rational(&self, a: &Cyc) -> Option<BigRational> {
        a.0[1..].iter().all(|x| x.is_zero()).then(|| a.0[0].clone())
    }

    /// √n for a positive integer n, when it lies in this field.
    pub fn sqrt(&self, n: u64) -> Option<Cyc> {
        assert!(n > 0);
        let mut sq = 1u64;
        let mut free = 1u64;
        let mut rest = n;
        let mut p = 2;
        while p * p <= rest {
            while rest.is_multiple_of(p * p) {
                rest /= p * p;
                sq *= p;
            }
            if rest.is_multiple_of(p) {
                rest /= p;
                free *= p;
            }
            p += 1;
        }
        free *= rest;
        let mut r = self.integer(sq as i64);
        let mut f = free;
        let mut p = 2u64;
        while f > 1 {
            if f.is_multiple_of(p) {
                f /= p;
                r = self.mul(&r, &self.sqrt_prime(p)?);
            }
            p += 1;
        }
        debug_assert_eq!(
            self.as_rational(&self.mul(&r, &r)),
            Some(BigRational::from_integer(BigInt::from(n)))
        );
        Some(r)
    }

    fn sqrt_prime(&self, p: u64) -> Option<Cyc> {
        let m = self.m as u64;
        if p == 2 {
            if !m.is_multiple_of(8) {
                return None;
            }
            return Some(self.add(&self.e(1, 8), &self.e(-1, 8)));
        }
        if !m.is_multiple_of(p) || (p % 4 == 3 && !m.is_multiple_of(4)) {
            return None;
        }
        let mut g = self.zero();
        for x in 0..p as i64 {
            g = self.add(&g, &self.e((x * x) % p as i64, p as i64));
        }
        if p % 4 == 1 {
            Some(g)
        } else {
            Some(self.mul(&self.neg(&self.e(1, 4)), &g))
        }
    }
}

/// lcm helper for field orders.
pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

/// Kronecker symbol (a / n) for n > 0.
pub fn kronecker(a: i64, n: i64) -> i64 {
    assert!(n > 0);
    let mut a = a;
    let mut n = n;
    let mut r = 1;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            r = -r;
        }
    }
    // Jacobi symbol (a / n), n odd
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            r = -r;
        }
        a %= n;
    }
    if n == 1 {
        r
    } else {
        0
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        let f = CycloField::new(24);
        let z = f.zeta(1);
        assert_eq!(f.pow(&z, 24), f.one());
        assert_eq!(f.pow(&z, 12), f.integer(-1));
        let i = f.e(1, 4);
        assert_eq!(f.mul(&i, &f.conj(&i)), f.one());
    }

    #[test]
    fn square_roots() {
        let f = CycloField::new(120);
        for n in [2u64, 3, 5, 6, 12, 125, 500, 1728, 27] {
            let r = f.sqrt(n).unwrap();
            assert_eq!(
                f.as_rational(&f.mul(&r, &r)),
                Some(BigRational::from_integer(BigInt::from(n)))
            );
        }
        assert!(CycloField::new(8).sqrt(3).is_none());
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(2, 27), -1);
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(3, 8), -1);
        assert_eq!(kronecker(7, 8), 1);
        assert_eq!(kronecker(2, 4), 0);
        assert_eq!(kronecker(5, 1), 1);
    }
}
