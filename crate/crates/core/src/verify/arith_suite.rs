//! Residue-field identities: signs of multiplication maps, the power residue
//! character, `mu_n` encodings, transfer and norms.

use serde_json::json;

use super::PropertyResult;
use crate::arith::{
    divisors, mu_dlog, mu_embed, power_residue_char, zolotarev_sign, LocalField, MuScalar, Tower,
};
use crate::error::Result;
use crate::lattice::{FiniteModule, ModMap};
use crate::torsor::DetCtx;

/// The sign of `x -> a x` on `F_q` equals the quadratic character of `a`
/// (odd `q`; for even `q` there is nothing to compare and no case is run).
pub fn check_zolotarev(lf: &LocalField) -> PropertyResult {
    let mut r = PropertyResult::new("zolotarev sign = quadratic character");
    let k = &lf.residue;
    if k.q().is_multiple_of(2) {
        return r;
    }
    for a in k.units() {
        let outcome = (|| -> Result<bool> {
            let sign = zolotarev_sign(k, a)?;
            Ok(power_residue_char(k, a, 2)?.as_sign() == Some(sign))
        })();
        r.check(outcome, || json!({ "q": k.q(), "a": a }));
    }
    r
}

/// `chi(xy) = chi(x) chi(y)` for every `n | q - 1`.
pub fn check_char_homomorphism(lf: &LocalField) -> PropertyResult {
    let mut r = PropertyResult::new("power residue character is a homomorphism");
    let k = &lf.residue;
    for n in divisors(k.q() - 1) {
        let table: Vec<MuScalar> = k
            .units()
            .map(|x| power_residue_char(k, x, n).expect("units have characters"))
            .collect();
        for x in k.units() {
            for y in k.units() {
                let xy = k.mul(x, y);
                let ok = table[xy as usize - 1] == table[x as usize - 1].mul(&table[y as usize - 1]);
                r.check(Ok(ok), || json!({ "q": k.q(), "n": n, "x": x, "y": y }));
            }
        }
    }
    r
}

/// `mu_dlog(mu_embed(zeta^j)) = zeta^j` and the embedded roots are distinct.
pub fn check_embed_dlog(lf: &LocalField) -> PropertyResult {
    let mut r = PropertyResult::new("mu_embed and mu_dlog are inverse");
    let k = &lf.residue;
    for n in divisors(k.q() - 1) {
        for j in 0..n {
            let s = MuScalar::new(n, j as i64);
            let outcome = mu_embed(k, &s).and_then(|x| Ok(mu_dlog(k, x, n)? == s));
            r.check(outcome, || json!({ "q": k.q(), "n": n, "j": j }));
        }
    }
    r
}

/// `Δ` of multiplication by `a` on `F_q`, computed by orbit enumeration,
/// equals `a^((q-1)/n)`.
pub fn check_transfer(lf: &LocalField) -> PropertyResult {
    let mut r = PropertyResult::new("determinant of multiplication = power residue character");
    let k = &lf.residue;
    let t = FiniteModule::new(lf, &[1]);
    for n in divisors(k.q() - 1) {
        let dc = match DetCtx::new(lf.clone(), n) {
            Ok(dc) => dc,
            Err(e) => {
                r.check(Err(e), || json!({ "q": k.q(), "n": n }));
                continue;
            }
        };
        for a in k.units() {
            let outcome = (|| -> Result<bool> {
                let g = ModMap::new(&lf.ring, t.clone(), t.clone(), vec![vec![lf.ring.lift(a)]])?;
                Ok(dc.det_of_module_aut_brute(&g)? == power_residue_char(k, a, n)?)
            })();
            r.check(outcome, || json!({ "q": k.q(), "n": n, "a": a }));
        }
    }
    r
}

/// The determinant of multiplication by `x` on `F_{q^d}` over `F_q` equals
/// `x^((q^d - 1)/(q - 1))`, for every `d >= 2` with `q^d <= limit`.
pub fn check_norm(lf: &LocalField, limit: u64) -> PropertyResult {
    let mut r = PropertyResult::new("norm = determinant of multiplication");
    let q = lf.q();
    let mut d = 2u32;
    while q.checked_pow(d).is_some_and(|qd| qd <= limit) {
        match Tower::new(lf.p(), lf.f(), d) {
            Ok(t) => {
                for x in t.big.elements() {
                    let ok = t.mult_det(x) == t.norm(x);
                    r.check(Ok(ok), || json!({ "q": q, "d": d, "x": x }));
                }
            }
            Err(e) => r.check(Err(e), || json!({ "q": q, "d": d })),
        }
        d += 1;
    }
    r
}
