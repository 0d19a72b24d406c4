//! Power residue symbols by formula, through `mu_n`-set determinants and
//! through the central extension, with a cross-checking report.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{power_residue_char, FElem, KElem, LocalField, MuScalar};
use crate::error::{Error, Result};
use crate::extension::corrected_symbol;
use crate::lattice::{FiniteModule, ModMap};
use crate::torsor::DetCtx;

/// Working precision for symbols of elements with the given valuations:
/// the sum of their absolute values plus two.
pub fn default_precision(vals: &[i64]) -> u32 {
    vals.iter().map(|v| v.unsigned_abs() as u32).sum::<u32>() + 2
}

fn val(a: &KElem) -> Result<i64> {
    a.valuation()
        .ok_or_else(|| Error::Precision("element is indistinguishable from zero".into()))
}

/// `(-1)^(v(a)v(b)) a^v(b) / b^v(a) mod pi`.
pub fn tame_symbol(lf: &LocalField, a: &KElem, b: &KElem) -> Result<FElem> {
    let (va, vb) = (val(a)?, val(b)?);
    let num = lf.k_pow(a, vb)?;
    let den = lf.k_pow(b, va)?;
    let mut u = lf.k_reduce_mod_pi(&lf.k_div(&num, &den)?)?;
    if (va * vb) % 2 != 0 {
        u = lf.residue.neg(u);
    }
    Ok(u)
}

/// `(a, b)_n`: the tame symbol followed by `x -> x^((q-1)/n)`.
pub fn power_residue_symbol(lf: &LocalField, a: &KElem, b: &KElem, n: u64) -> Result<MuScalar> {
    power_residue_char(&lf.residue, tame_symbol(lf, a, b)?, n)
}

/// `(a, 1 - a)_n = 1`.
pub fn steinberg_check(lf: &LocalField, a: &KElem, n: u64) -> Result<bool> {
    let b = lf.k_sub(&lf.k_one(), a);
    if b.is_zero() {
        return Err(Error::Invalid("a = 1 has no Steinberg partner".into()));
    }
    Ok(power_residue_symbol(lf, a, &b, n)?.is_one())
}

/// The tame symbol read through `Δ` of multiplication by it on the residue
/// field, viewed as a `mu_n`-set by enumeration.
pub fn muset_symbol(dc: &DetCtx, a: &KElem, b: &KElem) -> Result<MuScalar> {
    let lf = dc.lf();
    let u = tame_symbol(lf, a, b)?;
    let k = FiniteModule::new(lf, &[1]);
    let mult = ModMap::new(&lf.ring, k.clone(), k, vec![vec![lf.ring.lift(u)]])?;
    dc.det_of_module_aut_brute(&mult)
}

/// Which routes a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Muset,
    Extension,
    All,
}

impl Method {
    fn includes(self, other: Method) -> bool {
        self == Method::All || self == other
    }
}

/// Outcome of evaluating one symbol by up to three routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolReport {
    pub p: u64,
    pub f: u32,
    pub n: u64,
    pub a: String,
    pub b: String,
    pub direct: Option<MuScalar>,
    pub muset: Option<MuScalar>,
    pub extension: Option<MuScalar>,
    pub agree: bool,
    pub micros: u64,
}

/// Evaluates the requested routes and records whether they agree.
pub fn crosscheck_with(dc: &DetCtx, a: &KElem, b: &KElem, method: Method) -> Result<SymbolReport> {
    let lf = dc.lf();
    let start = Instant::now();
    let direct = method
        .includes(Method::Direct)
        .then(|| power_residue_symbol(lf, a, b, dc.n()))
        .transpose()?;
    let muset = method
        .includes(Method::Muset)
        .then(|| muset_symbol(dc, a, b))
        .transpose()?;
    let extension = method
        .includes(Method::Extension)
        .then(|| corrected_symbol(dc, a, b))
        .transpose()?;
    let values: Vec<MuScalar> = [direct, muset, extension].into_iter().flatten().collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    Ok(SymbolReport {
        p: lf.p(),
        f: lf.f(),
        n: dc.n(),
        a: lf.format(a),
        b: lf.format(b),
        direct,
        muset,
        extension,
        agree,
        micros: start.elapsed().as_micros() as u64,
    })
}

/// All three routes.
pub fn crosscheck(dc: &DetCtx, a: &KElem, b: &KElem) -> Result<SymbolReport> {
    crosscheck_with(dc, a, b, Method::All)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{mu_embed, parse_elem};

    fn q(p: u64) -> LocalField {
        LocalField::new(p, 1).unwrap()
    }

    fn el(lf: &LocalField, s: &str) -> KElem {
        parse_elem(lf, s, 8).unwrap()
    }

    #[test]
    fn tame_symbol_examples() {
        let lf = q(7);
        assert_eq!(tame_symbol(&lf, &el(&lf, "7"), &el(&lf, "7")).unwrap(), 6);
        assert_eq!(tame_symbol(&lf, &el(&lf, "3"), &el(&lf, "5")).unwrap(), 1);
        assert_eq!(tame_symbol(&lf, &el(&lf, "3"), &el(&lf, "7")).unwrap(), 3);
    }

    #[test]
    fn power_residue_examples() {
        let lf = q(7);
        let s = power_residue_symbol(&lf, &el(&lf, "7"), &el(&lf, "7"), 2).unwrap();
        assert_eq!(s.as_sign(), Some(-1));
        assert!(power_residue_symbol(&lf, &el(&lf, "pi^2*3"), &el(&lf, "1"), 3)
            .unwrap()
            .is_one());
        let lf = q(13);
        let s = power_residue_symbol(&lf, &el(&lf, "2"), &el(&lf, "13"), 3).unwrap();
        assert_eq!(mu_embed(&lf.residue, &s).unwrap(), 3);
    }

    #[test]
    fn steinberg_examples() {
        let lf = q(7);
        assert!(steinberg_check(&lf, &el(&lf, "-1"), 2).unwrap());
        for n in [1, 2, 3, 6] {
            assert!(steinberg_check(&lf, &el(&lf, "7"), n).unwrap());
            assert!(steinberg_check(&lf, &el(&lf, "1/7"), n).unwrap());
        }
        assert!(steinberg_check(&lf, &el(&lf, "1"), 2).is_err());
    }

    #[test]
    fn crosscheck_examples() {
        let lf = q(7);
        let dc = DetCtx::new(lf.clone(), 2).unwrap();
        let r = crosscheck(&dc, &el(&lf, "7"), &el(&lf, "7")).unwrap();
        assert!(r.agree);
        assert_eq!(r.direct.unwrap().as_sign(), Some(-1));
        let r = crosscheck(&dc, &el(&lf, "3"), &el(&lf, "5")).unwrap();
        assert!(r.agree && r.extension.unwrap().is_one());
    }

    #[test]
    fn default_precision_rule() {
        assert_eq!(default_precision(&[1, -2]), 5);
        assert_eq!(default_precision(&[]), 2);
    }
}
