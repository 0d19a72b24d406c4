//! The residue field `F_q`, `q = p^f`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` where
//! `c_0 + c_1 x + ... ` is the reduced representative modulo the defining
//! polynomial. This encoding also fixes the canonical ordering of residues.

use crate::error::{Error, Result};

/// Largest `q` for which a field context (with log/exp tables) is built.
pub const FIELD_BOUND: u64 = 1 << 20;

/// Residue field element, encoded as described in the module docs.
pub type FElem = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    f: u32,
    q: u64,
    /// Monic defining polynomial, little-endian, length `f + 1`.
    poly: Vec<u64>,
    gen: FElem,
    exp: Vec<FElem>,
    log: Vec<u32>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

// Polynomials over F_p as little-endian coefficient vectors.

/// Remainder modulo a monic polynomial.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for d in (dm..r.len()).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        for i in 0..=dm {
            let idx = d - dm + i;
            r[idx] = (r[idx] + p - c * m[i] % p) % p;
        }
    }
    r.truncate(dm);
    r
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let f = poly.len() - 1;
    if f == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=f/2.
    for d in 1..=f / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut c = code;
            for coef in div.iter_mut().take(d) {
                *coef = c % p;
                c /= p;
            }
            div[d] = 1;
            let r = poly_rem(poly, &div, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Builds `F_{p^f}` with the least monic irreducible defining polynomial
    /// (ordered by the integer code of its non-leading coefficients) and the
    /// least generator of the multiplicative group.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::BadDegree(f));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= FIELD_BOUND)
            .ok_or(Error::FieldTooLarge { p, f })?;
        let fu = f as usize;
        let mut poly = vec![0u64; fu + 1];
        poly[fu] = 1;
        let ncand = p.pow(f);
        let mut found = false;
        for code in 0..ncand {
            let mut c = code;
            for coef in poly.iter_mut().take(fu) {
                *coef = c % p;
                c /= p;
            }
            if is_irreducible(&poly, p) {
                found = true;
                break;
            }
        }
        debug_assert!(found);
        let mut ctx = FieldCtx {
            p,
            f,
            q,
            poly,
            gen: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        let factors = prime_factors(order);
        let gen = (1..q as FElem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| ctx.pow_slow(g, order / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        ctx.gen = gen;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x: FElem = 1;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i as u32;
            x = ctx.mul_slow(x, gen);
        }
        ctx.exp = exp;
        ctx.log = log;
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> FElem {
        self.gen
    }

    pub fn defining_poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn coeffs(&self, x: FElem) -> Vec<u64> {
        let mut c = x as u64;
        (0..self.f)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u64]) -> FElem {
        let mut code = 0u64;
        for &d in c.iter().take(self.f as usize).rev() {
            code = code * self.p + d % self.p;
        }
        code as FElem
    }

    pub fn from_int(&self, a: i64) -> FElem {
        a.rem_euclid(self.p as i64) as FElem
    }

    pub fn add(&self, a: FElem, b: FElem) -> FElem {
        if self.f == 1 {
            return ((a as u64 + b as u64) % self.p) as FElem;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let c: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn neg(&self, a: FElem) -> FElem {
        if self.f == 1 {
            return ((self.p - a as u64) % self.p) as FElem;
        }
        let c: Vec<u64> = self.coeffs(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: FElem, b: FElem) -> FElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FElem, b: FElem) -> FElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let l = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[l as usize]
    }

    pub fn inv(&self, a: FElem) -> Result<FElem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let l = (order - self.log[a as usize] as u64) % order;
        Ok(self.exp[l as usize])
    }

    pub fn pow(&self, a: FElem, e: u64) -> FElem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = self.q - 1;
        let l = (self.log[a as usize] as u128 * e as u128 % order as u128) as u64;
        self.exp[l as usize]
    }

    /// Discrete logarithm to the canonical generator.
    pub fn log(&self, a: FElem) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a as usize] as u64)
    }

    pub fn exp(&self, e: u64) -> FElem {
        self.exp[(e % (self.q - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FElem) -> u64 {
        let l = self.log[a as usize] as u64;
        let m = self.q - 1;
        m / gcd(l, m)
    }

    /// Polynomial multiplication modulo the defining polynomial, without tables.
    pub fn mul_slow(&self, a: FElem, b: FElem) -> FElem {
        let p = self.p;
        let fu = self.f as usize;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * fu];
        for i in 0..fu {
            for j in 0..fu {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            }
        }
        for d in (fu..2 * fu).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..fu {
                let idx = d - fu + i;
                prod[idx] = (prod[idx] + p * p - c * self.poly[i] % p) % p;
            }
        }
        self.from_coeffs(&prod[..fu])
    }

    pub fn pow_slow(&self, a: FElem, mut e: u64) -> FElem {
        let mut r: FElem = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    pub fn elements(&self) -> impl Iterator<Item = FElem> {
        0..self.q as FElem
    }

    pub fn units(&self) -> impl Iterator<Item = FElem> {
        1..self.q as FElem
    }

    /// Determinant of a square matrix over the field, by Gaussian elimination.
    pub fn det(&self, mat: &[Vec<FElem>]) -> FElem {
        let n = mat.len();
        let mut a: Vec<Vec<FElem>> = mat.to_vec();
        let mut det: FElem = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                a.swap(piv, col);
                det = self.neg(det);
            }
            let pv = a[col][col];
            det = self.mul(det, pv);
            let inv = self.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col] == 0 {
                    continue;
                }
                let factor = self.mul(a[r][col], inv);
                for c in col..n {
                    let t = self.mul(factor, a[col][c]);
                    a[r][c] = self.sub(a[r][c], t);
                }
            }
        }
        det
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
