//! Roots of unity `mu_n`, encoded as exponents of `zeta_n = g^((q-1)/n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{FElem, FieldCtx};
use super::padic::LocalField;
use super::ring::RElem;
use crate::error::{Error, Result};

/// `zeta_n^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuScalar {
    n: u64,
    exp: u64,
}

impl MuScalar {
    pub fn new(n: u64, exp: i64) -> Self {
        assert!(n > 0, "mu_0 is not a group");
        MuScalar {
            n,
            exp: exp.rem_euclid(n as i64) as u64,
        }
    }

    pub fn one(n: u64) -> Self {
        MuScalar { n, exp: 0 }
    }

    /// `-1` as an element of `mu_n`; only exists for even `n`.
    pub fn minus_one(n: u64) -> Option<Self> {
        n.is_multiple_of(2).then_some(MuScalar { n, exp: n / 2 })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    pub fn mul(&self, other: &MuScalar) -> Self {
        assert_eq!(self.n, other.n, "mismatched mu_n");
        MuScalar {
            n: self.n,
            exp: (self.exp + other.exp) % self.n,
        }
    }

    pub fn inv(&self) -> Self {
        MuScalar {
            n: self.n,
            exp: (self.n - self.exp) % self.n,
        }
    }

    pub fn div(&self, other: &MuScalar) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = self.n as i128;
        MuScalar {
            n: self.n,
            exp: ((self.exp as i128 * e as i128).rem_euclid(n)) as u64,
        }
    }

    /// Sign of a `mu_2` element.
    pub fn as_sign(&self) -> Option<i8> {
        match (self.n, self.exp) {
            (_, 0) => Some(1),
            (n, e) if n % 2 == 0 && e == n / 2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for MuScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_sign() {
            Some(1) => write!(f, "1"),
            Some(_) => write!(f, "-1"),
            None => write!(f, "zeta_{}^{}", self.n, self.exp),
        }
    }
}

pub fn check_n(field: &FieldCtx, n: u64) -> Result<()> {
    let qm1 = field.q() - 1;
    if n == 0 || !qm1.is_multiple_of(n) {
        return Err(Error::NDoesNotDivide { n, qm1 });
    }
    Ok(())
}

/// The residue `zeta_n^exp`.
pub fn mu_embed(field: &FieldCtx, s: &MuScalar) -> Result<FElem> {
    check_n(field, s.n())?;
    let step = (field.q() - 1) / s.n();
    Ok(field.exp(step * s.exp()))
}

/// Inverse of [`mu_embed`] on the `n`-torsion of `F_q^×`.
pub fn mu_dlog(field: &FieldCtx, x: FElem, n: u64) -> Result<MuScalar> {
    check_n(field, n)?;
    if x == 0 {
        return Err(Error::NotRootOfUnity(n));
    }
    let step = (field.q() - 1) / n;
    let l = field.log(x)?;
    if l % step != 0 {
        return Err(Error::NotRootOfUnity(n));
    }
    Ok(MuScalar::new(n, (l / step) as i64))
}

/// `x -> x^((q-1)/n)`, read in `mu_n`.
pub fn power_residue_char(field: &FieldCtx, x: FElem, n: u64) -> Result<MuScalar> {
    check_n(field, n)?;
    if x == 0 {
        return Err(Error::DivisionByZero);
    }
    let y = field.pow(x, (field.q() - 1) / n);
    mu_dlog(field, y, n)
}

/// Sign of the permutation `x -> a x` of `F_q`, by cycle decomposition.
pub fn zolotarev_sign(field: &FieldCtx, a: FElem) -> Result<i8> {
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    let perm: Vec<usize> = field.elements().map(|x| field.mul(a, x) as usize).collect();
    Ok(permutation_sign(&perm))
}

/// Sign of a permutation of `0..len`, via cycle parity.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parity += len - 1;
    }
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Which element of each `mu_n`-orbit serves as its base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum RepRule {
    /// The least element in the canonical ordering.
    #[default]
    Least,
    /// The second least element (the least one when `n = 1`).
    SecondLeast,
}

/// `mu_n` inside a local field: the residue `zeta_n`, its Teichmüller lift and
/// orbit tables on `F_q^×`.
#[derive(Debug, Clone)]
pub struct MuCtx {
    n: u64,
    step: u64,
    zeta: FElem,
    teich: Vec<RElem>,
    /// For each residue `d != 0` and each rule: the `j` with `d = zeta^j * rep(d)`.
    orbit_exp: [Vec<u32>; 2],
}

impl MuCtx {
    pub fn new(lf: &LocalField, n: u64) -> Result<Self> {
        let field = &lf.residue;
        check_n(field, n)?;
        let step = (field.q() - 1) / n;
        let zeta = field.exp(step);
        let nmax = lf.nmax();
        let t = lf.ring.teichmuller(field, zeta, nmax);
        let mut teich = Vec::with_capacity(n as usize);
        let mut acc = lf.ring.reduce(&lf.ring.one(), nmax);
        for _ in 0..n {
            teich.push(acc);
            acc = lf.ring.mul(&acc, &t, nmax);
        }
        let q = field.q() as usize;
        let mut tables = [vec![0u32; q], vec![0u32; q]];
        for d in field.units() {
            let mut orbit: Vec<FElem> = (0..n)
                .map(|j| field.mul(field.exp(step * j), d))
                .collect();
            orbit.sort_unstable();
            for (r, rule) in [RepRule::Least, RepRule::SecondLeast].iter().enumerate() {
                let rep = match rule {
                    RepRule::Least => orbit[0],
                    RepRule::SecondLeast => orbit[1.min(orbit.len() - 1)],
                };
                let diff = (field.log(d)? + field.q() - 1 - field.log(rep)?) % (field.q() - 1);
                tables[r][d as usize] = (diff / step) as u32;
            }
        }
        Ok(MuCtx {
            n,
            step,
            zeta,
            teich,
            orbit_exp: tables,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn zeta(&self) -> FElem {
        self.zeta
    }

    /// Teichmüller lift of `zeta^j` at working precision.
    pub fn teich(&self, j: u64) -> &RElem {
        &self.teich[(j % self.n) as usize]
    }

    /// The exponent `j` with `d = zeta^j * rep(d)` for a nonzero leading residue `d`.
    pub fn orbit_exp(&self, d: FElem, rule: RepRule) -> u64 {
        let idx = match rule {
            RepRule::Least => 0,
            RepRule::SecondLeast => 1,
        };
        self.orbit_exp[idx][d as usize] as u64
    }

    pub fn scalar(&self, exp: i64) -> MuScalar {
        MuScalar::new(self.n, exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler(field: &FieldCtx, x: FElem, n: u64) -> FElem {
        let mut acc = 1;
        for _ in 0..(field.q() - 1) / n {
            acc = field.mul_slow(acc, x);
        }
        acc
    }

    #[test]
    fn embed_square_root_of_one() {
        let k = FieldCtx::new(7, 1).unwrap();
        assert_eq!(mu_embed(&k, &MuScalar::new(2, 1)).unwrap(), 6);
    }

    #[test]
    fn dlog_cube_root_mod_13() {
        let k = FieldCtx::new(13, 1).unwrap();
        let s = mu_dlog(&k, 3, 3).unwrap();
        assert!(s.exp() == 1 || s.exp() == 2);
        assert_eq!(mu_embed(&k, &s).unwrap(), 3);
        assert_eq!(mu_dlog(&k, 2, 3), Err(Error::NotRootOfUnity(3)));
    }

    #[test]
    fn trivial_mu_1() {
        let k = FieldCtx::new(7, 1).unwrap();
        for x in k.units() {
            assert_eq!(power_residue_char(&k, x, 1).unwrap().exp(), 0);
        }
        assert_eq!(mu_dlog(&k, 1, 1).unwrap().exp(), 0);
    }

    #[test]
    fn residue_characters() {
        let k7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(power_residue_char(&k7, 3, 2).unwrap().as_sign(), Some(-1));
        let k13 = FieldCtx::new(13, 1).unwrap();
        let c = power_residue_char(&k13, 2, 3).unwrap();
        assert_eq!(mu_embed(&k13, &c).unwrap(), 3);
        assert!(power_residue_char(&k13, 1, 4).unwrap().is_one());
        assert!(matches!(
            power_residue_char(&k13, 2, 5),
            Err(Error::NDoesNotDivide { .. })
        ));
    }

    #[test]
    fn character_matches_repeated_multiplication() {
        for (p, f) in [(7, 1), (13, 1), (3, 2), (5, 2)] {
            let k = FieldCtx::new(p, f).unwrap();
            for n in super::super::field::divisors(k.q() - 1) {
                for x in k.units() {
                    let c = power_residue_char(&k, x, n).unwrap();
                    assert_eq!(mu_embed(&k, &c).unwrap(), euler(&k, x, n));
                }
            }
        }
    }

    #[test]
    fn zolotarev_examples() {
        let k = FieldCtx::new(7, 1).unwrap();
        assert_eq!(zolotarev_sign(&k, 3).unwrap(), -1);
        assert_eq!(zolotarev_sign(&k, 2).unwrap(), 1);
        assert_eq!(zolotarev_sign(&k, 1).unwrap(), 1);
    }

    #[test]
    fn orbit_tables() {
        let lf = LocalField::new(13, 1).unwrap();
        let mu = MuCtx::new(&lf, 3).unwrap();
        let k = &lf.residue;
        for d in k.units() {
            let j = mu.orbit_exp(d, RepRule::Least);
            let rep = k.mul(d, k.inv(k.exp(mu.step() * j)).unwrap());
            // rep is the least element of its orbit
            for i in 0..3 {
                assert!(k.mul(rep, k.exp(mu.step() * i)) >= rep);
            }
        }
    }
}
