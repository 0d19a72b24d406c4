//! Symbol sweeps: the commutator symbol against the uncorrected tame
//! formula, three-way agreement of the symbol routes, Steinberg relations and
//! the laws of the direct power residue symbol.

use rand::Rng;
use serde_json::json;

use super::{gen, sub_seed, PropertyResult, VerifyConfig};
use crate::arith::{power_residue_char, FElem, KElem, LocalField, MuScalar};
use crate::error::{Error, Result};
use crate::extension::comm_symbol_scalar;
use crate::symbols::{crosscheck, default_precision, power_residue_symbol, steinberg_check, tame_symbol};
use crate::torsor::DetCtx;

/// `pi^v u` with `u` the lift of the residue `code`.
pub fn sweep_elem(lf: &LocalField, v: i64, code: FElem, prec: u32) -> KElem {
    lf.k_mul(&lf.k_pi_pow(v), &gen::residue_unit(lf, code, prec))
}

/// Evaluates `eval(a, b)` at the default precision for the valuations
/// involved, retrying once at full precision if that was not enough.
pub fn at_sweep_precision<T>(
    lf: &LocalField,
    (va, ua): (i64, FElem),
    (vb, ub): (i64, FElem),
    eval: impl Fn(&KElem, &KElem) -> Result<T>,
) -> Result<T> {
    let prec = default_precision(&[va, vb]).min(lf.nmax());
    let first = eval(&sweep_elem(lf, va, ua, prec), &sweep_elem(lf, vb, ub, prec));
    match first {
        Err(Error::Precision(_)) => {
            let full = lf.nmax();
            eval(&sweep_elem(lf, va, ua, full), &sweep_elem(lf, vb, ub, full))
        }
        other => other,
    }
}

/// Runs `eval` on every pair `(pi^va u_a, pi^vb u_b)` with valuations in
/// `[-vmax, vmax]` and units over all nonzero residues, for every `n`.
fn sweep(
    lf: &LocalField,
    cfg: &VerifyConfig,
    r: &mut PropertyResult,
    eval: impl Fn(&DetCtx, &KElem, &KElem) -> Result<bool>,
) -> Result<()> {
    let q = lf.q() as FElem;
    for n in cfg.ns(lf)? {
        let dc = DetCtx::new(lf.clone(), n)?.with_bound(cfg.bound);
        for va in -cfg.vmax..=cfg.vmax {
            for vb in -cfg.vmax..=cfg.vmax {
                for ua in 1..q {
                    for ub in 1..q {
                        let outcome = at_sweep_precision(lf, (va, ua), (vb, ub), |a, b| eval(&dc, a, b));
                        r.check(outcome, || {
                            json!({ "n": n, "a": [va, ua], "b": [vb, ub] })
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(a^v(b) / b^v(a) mod pi)^((q-1)/n)`, the tame formula without its sign.
pub fn unsigned_formula(lf: &LocalField, a: &KElem, b: &KElem, n: u64) -> Result<MuScalar> {
    let val = |x: &KElem| {
        x.valuation()
            .ok_or_else(|| Error::Precision("element is indistinguishable from zero".into()))
    };
    let u = lf.k_div(&lf.k_pow(a, val(b)?)?, &lf.k_pow(b, val(a)?)?)?;
    power_residue_char(&lf.residue, lf.k_reduce_mod_pi(&u)?, n)
}

/// `{a, b}` equals the unsigned tame formula on the whole sweep.
pub fn check_theorem(lf: &LocalField, cfg: &VerifyConfig) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("commutator symbol = unsigned tame formula");
    sweep(lf, cfg, &mut r, |dc, a, b| {
        Ok(comm_symbol_scalar(dc, a, b)? == unsigned_formula(dc.lf(), a, b, dc.n())?)
    })?;
    Ok(r)
}

/// The direct symbol, the `mu_n`-set route and the corrected commutator
/// symbol agree on the whole sweep. Runs only for odd `q`.
pub fn check_three_way(lf: &LocalField, cfg: &VerifyConfig) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("direct, mu_n-set and extension symbols agree");
    if lf.q().is_multiple_of(2) {
        return Ok(r);
    }
    sweep(lf, cfg, &mut r, |dc, a, b| {
        let report = crosscheck(dc, a, b)?;
        Ok(report.agree && report.direct.is_some() && report.muset.is_some() && report.extension.is_some())
    })?;
    Ok(r)
}

/// `(a, 1 - a)_n = 1` and `(a, -a)_n = 1` for `samples` random `a != 1` per
/// `n`, a third of them of the form `1 + pi^k u`.
pub fn check_steinberg(lf: &LocalField, cfg: &VerifyConfig, samples: usize) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("Steinberg relations");
    let mut rng = gen::rng(sub_seed(cfg, "steinberg"));
    let prec = lf.nmax();
    for n in cfg.ns(lf)? {
        let mut done = 0;
        while done < samples {
            let a = if rng.gen_bool(1.0 / 3.0) {
                let k = rng.gen_range(1..=3);
                let t = lf.k_mul(&lf.k_pi_pow(k), &gen::unit(lf, &mut rng, prec));
                lf.k_add(&lf.k_one(), &t)
            } else {
                gen::kelem(lf, &mut rng, cfg.vmax.max(1), prec)
            };
            if lf.k_sub(&lf.k_one(), &a).is_zero() {
                continue;
            }
            done += 1;
            let outcome = (|| -> Result<bool> {
                let neg = lf.k_neg(&a);
                Ok(steinberg_check(lf, &a, n)? && power_residue_symbol(lf, &a, &neg, n)?.is_one())
            })();
            r.check(outcome, || json!({ "n": n, "a": lf.format(&a) }));
        }
    }
    Ok(r)
}

/// Bimultiplicativity in each argument and antisymmetry of the direct
/// symbol, exhaustively over the sweep elements.
pub fn check_symbol_laws(lf: &LocalField, cfg: &VerifyConfig) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("direct symbol is bimultiplicative and antisymmetric");
    let k = &lf.residue;
    let prec = lf.nmax();
    let elems: Vec<(i64, FElem, KElem)> = (-cfg.vmax..=cfg.vmax)
        .flat_map(|v| k.units().map(move |u| (v, u)))
        .map(|(v, u)| (v, u, sweep_elem(lf, v, u, prec)))
        .collect();
    let ns = cfg.ns(lf)?;
    let chars: Vec<Vec<MuScalar>> = ns
        .iter()
        .map(|&n| {
            std::iter::once(Ok(MuScalar::one(n)))
                .chain(k.units().map(|x| power_residue_char(k, x, n)))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let agree = |x: FElem, y: FElem, z: FElem| {
        chars
            .iter()
            .all(|c| c[x as usize] == c[y as usize].mul(&c[z as usize]))
    };
    let tame: Vec<Vec<FElem>> = elems
        .iter()
        .map(|(_, _, a)| {
            elems
                .iter()
                .map(|(_, _, b)| tame_symbol(lf, a, b))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    for (i, (va, ua, a)) in elems.iter().enumerate() {
        for (j, (vb, ub, _)) in elems.iter().enumerate() {
            let ok = agree(1, tame[i][j], tame[j][i]);
            r.check(Ok(ok), || json!({ "law": "antisymmetry", "a": [va, ua], "b": [vb, ub] }));
        }
        for (j, (vb, ub, b)) in elems.iter().enumerate() {
            let ab = lf.k_mul(a, b);
            for (l, (vc, uc, c)) in elems.iter().enumerate() {
                let outcome = (|| -> Result<bool> {
                    let left = tame_symbol(lf, &ab, c)?;
                    let right = tame_symbol(lf, c, &ab)?;
                    Ok(agree(left, tame[i][l], tame[j][l]) && agree(right, tame[l][i], tame[l][j]))
                })();
                r.check(outcome, || {
                    json!({ "law": "bimultiplicativity", "a": [va, ua], "b": [vb, ub], "c": [vc, uc] })
                });
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let cfg = VerifyConfig {
            p: 5,
            vmax: 1,
            ..VerifyConfig::default()
        };
        let lf = cfg.field().unwrap();
        for r in [
            check_theorem(&lf, &cfg).unwrap(),
            check_three_way(&lf, &cfg).unwrap(),
            check_steinberg(&lf, &cfg, 50).unwrap(),
            check_symbol_laws(&lf, &cfg).unwrap(),
        ] {
            assert!(r.passed(), "{r:?}");
            assert!(r.cases > 0);
        }
    }
}
