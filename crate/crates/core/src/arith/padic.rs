//! Elements of the unramified local field `K` with capped relative precision.

use std::fmt;

use super::field::{FElem, FieldCtx};
use super::ring::{RElem, RingCtx};
use crate::error::{Error, Result};

/// Valuation used for an exact zero.
pub const ZERO_VAL: i64 = 1 << 40;

/// `pi^val * unit + O(pi^(val + prec))`.
///
/// `unit` is reduced modulo `p^prec` and is a unit whenever `prec > 0`.
/// `prec == 0` encodes zero known modulo `pi^val`; [`ZERO_VAL`] marks the exact
/// zero. Matrices over `K` need zero entries, so zero is representable even
/// though `K^×` is the intended domain of most operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KElem {
    val: i64,
    unit: RElem,
    prec: u32,
}

impl KElem {
    pub fn zero() -> Self {
        KElem {
            val: ZERO_VAL,
            unit: RElem::ZERO,
            prec: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec == 0 && self.val >= ZERO_VAL
    }

    /// The valuation, or `None` when the element is indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// The stored exponent; for zeros this is the absolute precision.
    pub fn raw_val(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &RElem {
        &self.unit
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Absolute precision: the element is known modulo `pi^abs_prec`.
    pub fn abs_prec(&self) -> i64 {
        if self.is_zero() {
            self.val
        } else {
            self.val + self.prec as i64
        }
    }
}

/// The field `K` together with its residue field and truncated integer ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalField {
    pub residue: FieldCtx,
    pub ring: RingCtx,
}

impl LocalField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        let residue = FieldCtx::new(p, f)?;
        let ring = RingCtx::new(&residue)?;
        Ok(LocalField { residue, ring })
    }

    pub fn p(&self) -> u64 {
        self.residue.p()
    }

    pub fn f(&self) -> u32 {
        self.residue.degree()
    }

    pub fn q(&self) -> u64 {
        self.residue.q()
    }

    pub fn nmax(&self) -> u32 {
        self.ring.nmax()
    }

    fn clamp_prec(&self, prec: u32) -> u32 {
        prec.min(self.ring.nmax())
    }

    /// Normalizes `pi^val * raw + O(pi^(val + prec))` where `raw` need not be a unit.
    pub fn k_from_raw(&self, val: i64, raw: &RElem, prec: u32) -> KElem {
        let prec = self.clamp_prec(prec);
        let raw = self.ring.reduce(raw, prec);
        let w = self.ring.val(&raw, prec);
        if w >= prec {
            return KElem {
                val: val.saturating_add(prec as i64).min(ZERO_VAL),
                unit: RElem::ZERO,
                prec: 0,
            };
        }
        let unit = self.ring.shift_down(&raw, w);
        KElem {
            val: val + w as i64,
            unit: self.ring.reduce(&unit, prec - w),
            prec: prec - w,
        }
    }

    pub fn k_from_int(&self, a: i64, prec: u32) -> KElem {
        if a == 0 {
            return KElem::zero();
        }
        let prec = self.clamp_prec(prec);
        let p = self.p() as i64;
        let (mut v, mut b) = (0i64, a);
        while b % p == 0 {
            b /= p;
            v += 1;
        }
        KElem {
            val: v,
            unit: self.ring.from_i64(b, prec),
            prec,
        }
    }

    pub fn k_from_ratio(&self, a: i64, b: i64, prec: u32) -> Result<KElem> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = self.k_from_int(a, prec);
        let den = self.k_from_int(b, prec);
        self.k_div(&num, &den)
    }

    /// `pi^val * u` for an integral coefficient vector `u` (not necessarily a unit).
    pub fn k_from_coeffs(&self, val: i64, coeffs: &[i64], prec: u32) -> KElem {
        let prec = self.clamp_prec(prec);
        let m = self.ring.pk(prec) as i128;
        let mut raw = RElem::ZERO;
        for (i, &c) in coeffs.iter().take(self.ring.f()).enumerate() {
            raw.0[i] = (c as i128).rem_euclid(m) as u64;
        }
        if raw.is_zero() {
            return KElem::zero();
        }
        self.k_from_raw(val, &raw, prec)
    }

    pub fn k_one(&self) -> KElem {
        self.k_from_int(1, self.nmax())
    }

    /// `pi^k`, exact to working precision.
    pub fn k_pi_pow(&self, k: i64) -> KElem {
        KElem {
            val: k,
            unit: self.ring.one(),
            prec: self.nmax(),
        }
    }

    /// Teichmüller lift of a residue, as an element of `K`.
    pub fn k_teichmuller(&self, x: FElem) -> KElem {
        if x == 0 {
            return KElem::zero();
        }
        KElem {
            val: 0,
            unit: self.ring.teichmuller(&self.residue, x, self.nmax()),
            prec: self.nmax(),
        }
    }

    /// Truncates to absolute precision `abs`.
    pub fn k_truncate(&self, a: &KElem, abs: i64) -> KElem {
        if a.is_zero() {
            return KElem {
                val: a.val.min(abs),
                ..KElem::zero()
            };
        }
        if abs <= a.val {
            return KElem {
                val: abs,
                ..KElem::zero()
            };
        }
        let prec = (a.prec as i64).min(abs - a.val) as u32;
        KElem {
            val: a.val,
            unit: self.ring.reduce(&a.unit, prec),
            prec,
        }
    }

    pub fn k_add(&self, a: &KElem, b: &KElem) -> KElem {
        let abs = a.abs_prec().min(b.abs_prec());
        if a.is_zero() {
            return self.k_truncate(b, abs);
        }
        if b.is_zero() {
            return self.k_truncate(a, abs);
        }
        let v = a.val.min(b.val);
        let k = (abs - v).clamp(0, self.nmax() as i64) as u32;
        if k == 0 {
            return KElem {
                val: abs,
                ..KElem::zero()
            };
        }
        let sa = self.shifted(&a.unit, (a.val - v) as u64, k);
        let sb = self.shifted(&b.unit, (b.val - v) as u64, k);
        self.k_from_raw(v, &self.ring.add(&sa, &sb, k), k)
    }

    fn shifted(&self, u: &RElem, s: u64, k: u32) -> RElem {
        if s >= k as u64 {
            RElem::ZERO
        } else {
            self.ring.shift_up(u, s as u32, k)
        }
    }

    pub fn k_neg(&self, a: &KElem) -> KElem {
        if a.is_zero() {
            return *a;
        }
        KElem {
            unit: self.ring.neg(&a.unit, a.prec),
            ..*a
        }
    }

    pub fn k_sub(&self, a: &KElem, b: &KElem) -> KElem {
        self.k_add(a, &self.k_neg(b))
    }

    pub fn k_mul(&self, a: &KElem, b: &KElem) -> KElem {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => KElem {
                val: a.val.saturating_add(b.val).min(ZERO_VAL),
                ..KElem::zero()
            },
            (true, false) => KElem {
                val: a.val.saturating_add(b.val).min(ZERO_VAL),
                ..KElem::zero()
            },
            (false, true) => KElem {
                val: b.val.saturating_add(a.val).min(ZERO_VAL),
                ..KElem::zero()
            },
            (false, false) => {
                let prec = a.prec.min(b.prec);
                KElem {
                    val: a.val + b.val,
                    unit: self.ring.mul(&a.unit, &b.unit, prec),
                    prec,
                }
            }
        }
    }

    pub fn k_inv(&self, a: &KElem) -> Result<KElem> {
        if a.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() {
            return Err(Error::Precision(format!(
                "cannot invert an element known only modulo pi^{}",
                a.val
            )));
        }
        Ok(KElem {
            val: -a.val,
            unit: self.ring.inv(&self.residue, &a.unit, a.prec)?,
            prec: a.prec,
        })
    }

    pub fn k_div(&self, a: &KElem, b: &KElem) -> Result<KElem> {
        Ok(self.k_mul(a, &self.k_inv(b)?))
    }

    pub fn k_pow(&self, a: &KElem, e: i64) -> Result<KElem> {
        let base = if e < 0 { self.k_inv(a)? } else { *a };
        if base.is_zero() {
            return Ok(if e == 0 { self.k_one() } else { self.k_mul(&base, &base) });
        }
        let em = e.unsigned_abs() as u128;
        Ok(KElem {
            val: base.val * e.abs(),
            unit: self.ring.pow(&base.unit, em, base.prec),
            prec: base.prec,
        })
    }

    /// The residue of a unit.
    pub fn k_reduce_mod_pi(&self, a: &KElem) -> Result<FElem> {
        match a.valuation() {
            None => Err(Error::Precision(
                "element is indistinguishable from zero".into(),
            )),
            Some(0) => Ok(self.ring.residue(&a.unit)),
            Some(v) => Err(Error::NotUnit(v)),
        }
    }

    /// The unit part `a / pi^v(a)`.
    pub fn k_unit_part(&self, a: &KElem) -> Result<KElem> {
        if a.is_zero() {
            return Err(Error::Precision("zero has no unit part".into()));
        }
        Ok(KElem { val: 0, ..*a })
    }

    /// Equality up to the joint precision of the operands.
    pub fn k_approx_eq(&self, a: &KElem, b: &KElem) -> bool {
        self.k_sub(a, b).is_zero()
    }

    /// An integral element as a ring element modulo `p^k`.
    pub fn k_to_ring(&self, a: &KElem, k: u32) -> Result<RElem> {
        if k == 0 {
            return Ok(RElem::ZERO);
        }
        if a.is_zero() {
            return if a.val >= k as i64 {
                Ok(RElem::ZERO)
            } else {
                Err(Error::Precision(format!(
                    "entry known modulo pi^{} but needed modulo pi^{k}",
                    a.val
                )))
            };
        }
        if a.val < 0 {
            return Err(Error::NotContained(format!(
                "entry of valuation {} is not integral",
                a.val
            )));
        }
        if a.val >= k as i64 {
            return Ok(RElem::ZERO);
        }
        if a.abs_prec() < k as i64 {
            return Err(Error::Precision(format!(
                "entry known modulo pi^{} but needed modulo pi^{k}",
                a.abs_prec()
            )));
        }
        Ok(self.ring.shift_up(&a.unit, a.val as u32, k))
    }

    /// Ring element modulo `p^k` as an element of `K` known modulo `pi^k`.
    pub fn k_from_ring(&self, a: &RElem, k: u32) -> KElem {
        if k == 0 {
            return KElem {
                val: 0,
                ..KElem::zero()
            };
        }
        self.k_from_raw(0, a, k)
    }

    /// The canonical representative of `a mod pi^k O`: an exact element whose
    /// digits below `k` agree with those of `a`, with unit coefficients in `[0, p^len)`.
    pub fn k_canonical_mod(&self, a: &KElem, k: i64) -> Result<KElem> {
        if a.is_zero() {
            return if a.val >= k {
                Ok(KElem::zero())
            } else {
                Err(Error::Precision(format!(
                    "entry known modulo pi^{} but needed modulo pi^{k}",
                    a.val
                )))
            };
        }
        if a.val >= k {
            return Ok(KElem::zero());
        }
        if a.abs_prec() < k {
            return Err(Error::Precision(format!(
                "entry known modulo pi^{} but needed modulo pi^{k}",
                a.abs_prec()
            )));
        }
        let len = (k - a.val) as u32;
        Ok(KElem {
            val: a.val,
            unit: self.ring.reduce(&a.unit, len),
            prec: self.nmax(),
        })
    }

    pub fn format(&self, a: &KElem) -> String {
        KDisplay { lf: self, a }.to_string()
    }
}

struct KDisplay<'a> {
    lf: &'a LocalField,
    a: &'a KElem,
}

impl fmt::Display for KDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.a;
        if a.is_zero() {
            return write!(f, "0");
        }
        let unit = if self.lf.f() == 1 {
            a.unit.0[0].to_string()
        } else {
            let cs: Vec<String> = (0..self.lf.f() as usize)
                .map(|i| a.unit.0[i].to_string())
                .collect();
            format!("[{}]", cs.join(","))
        };
        match a.val {
            0 => write!(f, "{unit}"),
            1 => write!(f, "pi*{unit}"),
            v => write!(f, "pi^{v}*{unit}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q7() -> LocalField {
        LocalField::new(7, 1).unwrap()
    }

    #[test]
    fn pi_times_inverse_pi() {
        let k = q7();
        let a = k.k_pi_pow(1);
        let b = k.k_pi_pow(-1);
        let c = k.k_mul(&a, &b);
        assert_eq!(c.valuation(), Some(0));
        assert_eq!(k.k_reduce_mod_pi(&c).unwrap(), 1);
    }

    #[test]
    fn unit_reduction() {
        let k = q7();
        let a = k.k_from_int(3, 4);
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(k.k_reduce_mod_pi(&a).unwrap(), 3);
        let b = k.k_from_int(7, 4);
        assert_eq!(k.k_reduce_mod_pi(&b), Err(Error::NotUnit(1)));
    }

    #[test]
    fn one_third_at_precision_two() {
        let k = q7();
        let a = k.k_from_ratio(1, 3, 2).unwrap();
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(a.unit().0[0], 33);
        assert_eq!(a.prec(), 2);
    }

    #[test]
    fn cancellation_loses_precision() {
        let k = q7();
        let a = k.k_from_int(1 + 49, 4);
        let b = k.k_from_int(1, 4);
        let d = k.k_sub(&a, &b);
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.prec(), 2);
        let z = k.k_sub(&a, &a);
        assert!(z.is_zero());
        assert_eq!(z.abs_prec(), 4);
        assert!(k.k_inv(&z).is_err());
    }

    #[test]
    fn canonical_representatives() {
        let k = q7();
        let a = k.k_from_int(-1, 5);
        let r = k.k_canonical_mod(&a, 2).unwrap();
        assert_eq!(r.unit().0[0], 48);
        let low = k.k_from_int(-1, 1);
        assert!(k.k_canonical_mod(&low, 2).is_err());
    }

    #[test]
    fn display() {
        let k = q7();
        assert_eq!(k.format(&k.k_from_int(3, 3)), "3");
        assert_eq!(k.format(&k.k_from_int(14, 3)), "pi*2");
        assert_eq!(k.format(&k.k_from_ratio(1, 49, 3).unwrap()), "pi^-2*1");
    }
}
