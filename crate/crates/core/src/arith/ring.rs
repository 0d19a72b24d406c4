//! Truncated rings of integers `O / p^k` of the unramified extension of `Q_p`
//! of degree `f`: `Z/p^k` for `f = 1`, the Galois ring `Z/p^k[x]/(F)` otherwise,
//! where `F` is the coefficient-wise lift of the residue field's defining
//! polynomial.

use super::field::{FElem, FieldCtx};
use crate::error::{Error, Result};

/// Largest supported residue degree.
pub const MAX_F: usize = 6;

/// Coefficient vector of a ring element; entries beyond `f` are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RElem(pub [u64; MAX_F]);

impl RElem {
    pub const ZERO: RElem = RElem([0; MAX_F]);

    pub fn from_u64(a: u64) -> Self {
        let mut c = [0; MAX_F];
        c[0] = a;
        RElem(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCtx {
    p: u64,
    f: usize,
    /// Maximal precision: `p^nmax` times `p^nmax` still fits in a `u128`.
    nmax: u32,
    pw: Vec<u64>,
    poly: [u64; MAX_F],
}

impl RingCtx {
    pub fn new(field: &FieldCtx) -> Result<Self> {
        let f = field.degree() as usize;
        if f > MAX_F {
            return Err(Error::BadDegree(f as u32));
        }
        let p = field.p();
        let mut pw = vec![1u64];
        while let Some(next) = pw.last().unwrap().checked_mul(p) {
            if next >= 1 << 62 {
                break;
            }
            pw.push(next);
        }
        let nmax = (pw.len() - 1) as u32;
        let mut poly = [0u64; MAX_F];
        poly[..f].copy_from_slice(&field.defining_poly()[..f]);
        Ok(RingCtx { p, f, nmax, pw, poly })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    /// `p^k` for `k <= nmax`.
    pub fn pk(&self, k: u32) -> u64 {
        self.pw[k as usize]
    }

    pub fn one(&self) -> RElem {
        RElem::from_u64(1)
    }

    pub fn from_i64(&self, a: i64, k: u32) -> RElem {
        let m = self.pk(k) as i128;
        RElem::from_u64((a as i128).rem_euclid(m) as u64)
    }

    pub fn reduce(&self, a: &RElem, k: u32) -> RElem {
        let m = self.pk(k);
        let mut out = RElem::ZERO;
        for i in 0..self.f {
            out.0[i] = a.0[i] % m;
        }
        out
    }

    pub fn add(&self, a: &RElem, b: &RElem, k: u32) -> RElem {
        let m = self.pk(k);
        let mut out = RElem::ZERO;
        for i in 0..self.f {
            out.0[i] = ((a.0[i] % m) + (b.0[i] % m)) % m;
        }
        out
    }

    pub fn neg(&self, a: &RElem, k: u32) -> RElem {
        let m = self.pk(k);
        let mut out = RElem::ZERO;
        for i in 0..self.f {
            out.0[i] = (m - a.0[i] % m) % m;
        }
        out
    }

    pub fn sub(&self, a: &RElem, b: &RElem, k: u32) -> RElem {
        self.add(a, &self.neg(b, k), k)
    }

    pub fn mul(&self, a: &RElem, b: &RElem, k: u32) -> RElem {
        let m = self.pk(k) as u128;
        if self.f == 1 {
            return RElem::from_u64(((a.0[0] as u128 % m) * (b.0[0] as u128 % m) % m) as u64);
        }
        let f = self.f;
        let mut prod = [0u128; 2 * MAX_F];
        for i in 0..f {
            let ai = a.0[i] as u128 % m;
            if ai == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = (prod[i + j] + ai * (b.0[j] as u128 % m)) % m;
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..f {
                let idx = d - f + i;
                let t = c * self.poly[i] as u128 % m;
                prod[idx] = (prod[idx] + m - t) % m;
            }
        }
        let mut out = RElem::ZERO;
        for i in 0..f {
            out.0[i] = prod[i] as u64;
        }
        out
    }

    pub fn pow(&self, a: &RElem, mut e: u128, k: u32) -> RElem {
        let mut r = self.reduce(&self.one(), k);
        let mut b = self.reduce(a, k);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b, k);
            }
            b = self.mul(&b, &b, k);
            e >>= 1;
        }
        r
    }

    pub fn scale_int(&self, a: &RElem, c: u64, k: u32) -> RElem {
        self.mul(a, &RElem::from_u64(c % self.pk(k)), k)
    }

    /// `p`-adic valuation of `a` modulo `p^k`; returns `k` for zero.
    pub fn val(&self, a: &RElem, k: u32) -> u32 {
        let m = self.pk(k);
        let mut v = k;
        for i in 0..self.f {
            let mut c = a.0[i] % m;
            if c == 0 {
                continue;
            }
            let mut w = 0;
            while c.is_multiple_of(self.p) {
                c /= self.p;
                w += 1;
            }
            v = v.min(w);
        }
        v
    }

    /// Exact division by `p^s`, assuming all coefficients are divisible.
    pub fn shift_down(&self, a: &RElem, s: u32) -> RElem {
        let d = self.pk(s);
        let mut out = RElem::ZERO;
        for i in 0..self.f {
            debug_assert_eq!(a.0[i] % d, 0);
            out.0[i] = a.0[i] / d;
        }
        out
    }

    /// Multiplication by `p^s` modulo `p^k`.
    pub fn shift_up(&self, a: &RElem, s: u32, k: u32) -> RElem {
        if s >= k {
            return RElem::ZERO;
        }
        let m = self.pk(k) as u128;
        let d = self.pk(s) as u128;
        let mut out = RElem::ZERO;
        for i in 0..self.f {
            out.0[i] = ((a.0[i] as u128 % m) * d % m) as u64;
        }
        out
    }

    /// Residue modulo `p`, as a field element.
    pub fn residue(&self, a: &RElem) -> FElem {
        let mut code = 0u64;
        for i in (0..self.f).rev() {
            code = code * self.p + a.0[i] % self.p;
        }
        code as FElem
    }

    /// Coefficient-wise lift of a residue to `[0, p)`.
    pub fn lift(&self, x: FElem) -> RElem {
        let mut c = x as u64;
        let mut out = RElem::ZERO;
        for i in 0..self.f {
            out.0[i] = c % self.p;
            c /= self.p;
        }
        out
    }

    /// The `p`-adic digit of `a` at position `i`, as a residue.
    pub fn digit(&self, a: &RElem, i: u32) -> FElem {
        let d = self.pk(i);
        let mut code = 0u64;
        for j in (0..self.f).rev() {
            code = code * self.p + (a.0[j] / d) % self.p;
        }
        code as FElem
    }

    /// Inverse of a unit modulo `p^k` by Hensel lifting the residue inverse.
    pub fn inv(&self, field: &FieldCtx, a: &RElem, k: u32) -> Result<RElem> {
        let r = self.residue(a);
        if r == 0 {
            return Err(Error::NotUnit(self.val(a, k) as i64));
        }
        let mut x = self.lift(field.inv(r)?);
        let two = RElem::from_u64(2);
        let mut prec = 1;
        while prec < k {
            prec = (2 * prec).min(k);
            let ax = self.mul(a, &x, prec);
            let t = self.sub(&self.reduce(&two, prec), &ax, prec);
            x = self.mul(&x, &t, prec);
        }
        Ok(self.reduce(&x, k))
    }

    /// Teichmüller lift of a residue to `O/p^k`.
    pub fn teichmuller(&self, field: &FieldCtx, x: FElem, k: u32) -> RElem {
        let mut t = self.lift(x);
        if x == 0 {
            return RElem::ZERO;
        }
        let q = field.q() as u128;
        for _ in 0..k {
            t = self.pow(&t, q, k);
        }
        t
    }
}
