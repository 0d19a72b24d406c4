//! Lattice identities on random full-rank lattices: inclusions around sums
//! and intersections, the second isomorphism theorem, finiteness of
//! quotients, additivity of orbit counts and antisymmetry of relative
//! dimension.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Value};

use super::{gen, sub_seed, PropertyResult, VerifyConfig};
use crate::arith::{divisors, LocalField};
use crate::error::Result;
use crate::lattice::{
    lat_apply, lat_includes, lat_intersect, lat_sum, matrix, orbit_count, quotient_struct,
    rel_dim, KMatrix, Lattice,
};

fn show(lf: &LocalField, l: &Lattice) -> Value {
    json!(matrix::format_matrix(lf, l.basis()))
}

fn show_matrix(lf: &LocalField, f: &KMatrix) -> Value {
    json!(matrix::format_matrix(lf, f))
}

/// `A∩B ⊆ A ⊆ A+B` and `A∩B ⊆ B ⊆ A+B`, for `m <= 3` and `|v| <= 3`.
pub fn check_lattice_inclusions(lf: &LocalField, cfg: &VerifyConfig) -> PropertyResult {
    let mut r = PropertyResult::new("intersection and sum bracket both lattices");
    let mut rng = gen::rng(sub_seed(cfg, "inclusions"));
    for _ in 0..cfg.samples {
        let m = rng.gen_range(1..=3);
        let a = gen::lattice(lf, &mut rng, m, 3);
        let b = gen::lattice(lf, &mut rng, m, 3);
        let outcome = (|| -> Result<bool> {
            let meet = lat_intersect(lf, &a, &b)?;
            let sum = lat_sum(lf, &a, &b)?;
            Ok(lat_includes(lf, &a, &meet)?
                && lat_includes(lf, &b, &meet)?
                && lat_includes(lf, &sum, &a)?
                && lat_includes(lf, &sum, &b)?)
        })();
        r.check(outcome, || json!({ "a": show(lf, &a), "b": show(lf, &b) }));
    }
    r
}

/// `|A+B / A| = |B / A∩B|`.
pub fn check_second_isomorphism(lf: &LocalField, cfg: &VerifyConfig) -> PropertyResult {
    let mut r = PropertyResult::new("|A+B / A| = |B / A∩B|");
    let mut rng = gen::rng(sub_seed(cfg, "second-iso"));
    for _ in 0..cfg.samples {
        let m = rng.gen_range(1..=3);
        let a = gen::lattice(lf, &mut rng, m, 3);
        let b = gen::lattice(lf, &mut rng, m, 3);
        let outcome = (|| -> Result<bool> {
            let meet = lat_intersect(lf, &a, &b)?;
            let sum = lat_sum(lf, &a, &b)?;
            let top = quotient_struct(lf, &sum, &a)?.module;
            let bottom = quotient_struct(lf, &b, &meet)?.module;
            Ok(top.cardinality() == bottom.cardinality())
        })();
        r.check(outcome, || json!({ "a": show(lf, &a), "b": show(lf, &b) }));
    }
    r
}

/// For `f ∈ GL_m(K)` the quotients of `O^m + f O^m` by `O^m` and by `f O^m`
/// are finite, with lengths bounded by the poles of `f` and `f^{-1}`.
pub fn check_commensurability(lf: &LocalField, cfg: &VerifyConfig) -> PropertyResult {
    let mut r = PropertyResult::new("lattices are commensurable with bounded quotients");
    let mut rng = gen::rng(sub_seed(cfg, "commensurable"));
    let pole = |f: &KMatrix| -> i64 {
        f.iter()
            .flatten()
            .filter_map(|x| x.valuation())
            .map(|v| (-v).max(0))
            .max()
            .unwrap_or(0)
    };
    for _ in 0..cfg.samples {
        let m = rng.gen_range(1..=3);
        let f = gen::gl(lf, &mut rng, m, 3);
        let outcome = (|| -> Result<bool> {
            let v = Lattice::standard(lf, m);
            let fv = lat_apply(lf, &f, &v)?;
            let sum = lat_sum(lf, &v, &fv)?;
            let over_v = quotient_struct(lf, &sum, &v)?.module.length() as i64;
            let over_fv = quotient_struct(lf, &sum, &fv)?.module.length() as i64;
            let f_inv = matrix::inverse(lf, &f)?;
            let mi = m as i64;
            Ok(over_v <= mi * pole(&f) && over_fv <= mi * pole(&f_inv))
        })();
        r.check(outcome, || json!({ "f": show_matrix(lf, &f) }));
    }
    r
}

/// For nested `C ⊆ B ⊆ A` and every `d | q - 1`, the `mu_d`-orbit counts
/// satisfy `dim(A/B) + dim(B/C) ≡ dim(A/C) (mod d)`.
pub fn check_dim_additivity(lf: &LocalField, cfg: &VerifyConfig) -> PropertyResult {
    let mut r = PropertyResult::new("orbit counts are additive along nested triples");
    let mut rng = gen::rng(sub_seed(cfg, "dim-additivity"));
    let q = lf.q();
    for _ in 0..cfg.samples {
        let m = rng.gen_range(1..=3);
        let a = gen::lattice(lf, &mut rng, m, 2);
        let l1 = gen::lattice(lf, &mut rng, m, 2);
        let l2 = gen::lattice(lf, &mut rng, m, 2);
        let outcome = (|| -> Result<bool> {
            let b = lat_intersect(lf, &a, &l1)?;
            let c = lat_intersect(lf, &b, &l2)?;
            let ab = quotient_struct(lf, &a, &b)?.module.length();
            let bc = quotient_struct(lf, &b, &c)?.module.length();
            let ac = quotient_struct(lf, &a, &c)?.module.length();
            Ok(divisors(q - 1).into_iter().all(|d| {
                let diff = orbit_count(q, ab, d) + orbit_count(q, bc, d) - orbit_count(q, ac, d);
                (diff % BigInt::from(d)).is_zero()
            }))
        })();
        r.check(outcome, || {
            json!({ "a": show(lf, &a), "l1": show(lf, &l1), "l2": show(lf, &l2) })
        });
    }
    r
}

/// `[A|B] = -[B|A]` for every `n | q - 1`, and `[A|A] = 0`.
pub fn check_rel_dim_antisymmetry(lf: &LocalField, cfg: &VerifyConfig) -> PropertyResult {
    let mut r = PropertyResult::new("relative dimension is antisymmetric");
    let mut rng = gen::rng(sub_seed(cfg, "rel-dim"));
    for _ in 0..cfg.samples {
        let m = rng.gen_range(1..=3);
        let a = gen::lattice(lf, &mut rng, m, 3);
        let b = gen::lattice(lf, &mut rng, m, 3);
        let outcome = (|| -> Result<bool> {
            for n in divisors(lf.q() - 1) {
                let ab = rel_dim(lf, &a, &b, n)?;
                let ba = rel_dim(lf, &b, &a, n)?;
                if ab != -ba || !rel_dim(lf, &a, &a, n)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        r.check(outcome, || json!({ "a": show(lf, &a), "b": show(lf, &b) }));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for p in [3, 7] {
            let cfg = VerifyConfig {
                p,
                samples: 30,
                ..VerifyConfig::default()
            };
            let lf = cfg.field().unwrap();
            for r in [
                check_lattice_inclusions(&lf, &cfg),
                check_second_isomorphism(&lf, &cfg),
                check_commensurability(&lf, &cfg),
                check_dim_additivity(&lf, &cfg),
                check_rel_dim_antisymmetry(&lf, &cfg),
            ] {
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.cases, 30);
            }
        }
    }
}
