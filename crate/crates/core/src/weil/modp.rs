//! Arithmetic modulo word-sized primes p ≡ 1 mod M.

use num_integer::Integer;

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let f = PrimeField { p: n };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The `skip`-th prime p ≡ 1 mod m below 2^62, with a primitive m-th root of unity.
pub fn prime_with_root(m: u64, skip: usize) -> (PrimeField, u64) {
    let mut k = ((1u64 << 62) - 1) / m;
    let mut seen = 0;
    loop {
        let p = k * m + 1;
        if is_prime(p) {
            if seen == skip {
                let f = PrimeField { p };
                let fac = prime_factors(m);
                for g in 2u64.. {
                    let w = f.pow(g, (p - 1) / m);
                    if fac.iter().all(|r| f.pow(w, m / r) != 1) {
                        return (f, w);
                    }
                }
            }
            seen += 1;
        }
        k -= 1;
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: PrimeField, a: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(r) = (row..a.len()).find(|r| a[*r][c] != 0) else { continue };
        a.swap(row, r);
        let inv = f.inv(a[row][c]);
        for x in a[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[row].clone();
        for (i, other) in a.iter_mut().enumerate() {
            if i == row || other[c] == 0 {
                continue;
            }
            let k = other[c];
            for (x, y) in other.iter_mut().zip(&pivot_row) {
                if *y != 0 {
                    *x = f.sub(*x, f.mul(k, *y));
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

/// Rational reconstruction of `a mod p` with |num|, den ≤ √(p/2).
pub fn rational_reconstruct(a: u64, p: u64) -> Option<(i64, i64)> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (mut n, mut d) = (r1, t1);
    if d < 0 {
        n = -n;
        d = -d;
    }
    if (n as i64).gcd(&(d as i64)) != 1 {
        return None;
    }
    Some((n as i64, d as i64))
}
