//! Identities of `Δ` on random finite free pointed `mu_n`-sets.

use rand::Rng;
use serde_json::json;

use super::{gen, sub_seed, PropertyResult, VerifyConfig};
use crate::muset::{
    aut_abelianize, aut_compose, aut_delta, aut_extend, aut_inverse, muset_product, perm_sign,
    MuSet, MuSetAut,
};

fn random_set(rng: &mut gen::TestRng, n: u64, tmax: usize) -> MuSet {
    MuSet::new(n, rng.gen_range(0..=tmax))
}

/// `Δ(f g) = Δ(f) Δ(g)`.
pub fn check_delta_homomorphism(cfg: &VerifyConfig, nmax: u64, tmax: usize) -> PropertyResult {
    let mut r = PropertyResult::new("delta is a homomorphism");
    let mut rng = gen::rng(sub_seed(cfg, "delta-hom"));
    for _ in 0..cfg.samples {
        let n = rng.gen_range(1..=nmax);
        let x = random_set(&mut rng, n, tmax);
        let f = MuSetAut::random(&x, &mut rng);
        let g = MuSetAut::random(&x, &mut rng);
        let outcome =
            aut_compose(&f, &g).map(|fg| aut_delta(&fg) == aut_delta(&f).mul(&aut_delta(&g)));
        r.check(outcome, || json!({ "f": f, "g": g }));
    }
    r
}

/// The abelianization `(Δ, sign)` is invariant under conjugation.
pub fn check_conjugation_invariance(cfg: &VerifyConfig, nmax: u64, tmax: usize) -> PropertyResult {
    let mut r = PropertyResult::new("abelianization is conjugation invariant");
    let mut rng = gen::rng(sub_seed(cfg, "conjugation"));
    for _ in 0..cfg.samples {
        let n = rng.gen_range(1..=nmax);
        let x = random_set(&mut rng, n, tmax);
        let f = MuSetAut::random(&x, &mut rng);
        let h = MuSetAut::random(&x, &mut rng);
        let outcome = aut_compose(&h, &f)
            .and_then(|hf| aut_compose(&hf, &aut_inverse(&h)))
            .map(|c| aut_abelianize(&c) == aut_abelianize(&f));
        r.check(outcome, || json!({ "f": f, "h": h }));
    }
    r
}

/// For `n = 2` the sign of the permutation of points equals `Δ`.
pub fn check_sign_lemma(cfg: &VerifyConfig, tmax: usize) -> PropertyResult {
    let mut r = PropertyResult::new("n = 2: permutation sign = delta");
    let mut rng = gen::rng(sub_seed(cfg, "sign-lemma"));
    for _ in 0..cfg.samples {
        let x = random_set(&mut rng, 2, tmax);
        let f = MuSetAut::random(&x, &mut rng);
        let ok = aut_delta(&f).as_sign() == Some(perm_sign(&f));
        r.check(Ok(ok), || json!({ "f": f }));
    }
    r
}

/// `Δ_{X×Y}(f × Id) = Δ_X(f)`.
pub fn check_product_lemma(cfg: &VerifyConfig, nmax: u64, tmax: usize) -> PropertyResult {
    let mut r = PropertyResult::new("delta of f x id = delta of f");
    let mut rng = gen::rng(sub_seed(cfg, "product-lemma"));
    for _ in 0..cfg.samples {
        let n = rng.gen_range(1..=nmax);
        let x = random_set(&mut rng, n, tmax);
        let y = random_set(&mut rng, n, tmax);
        let f = MuSetAut::random(&x, &mut rng);
        let outcome = aut_extend(&f, &y).and_then(|fy| {
            let xy = muset_product(&x, &y)?;
            Ok(fy.muset() == xy && aut_delta(&fy) == aut_delta(&f))
        });
        r.check(outcome, || json!({ "f": f, "y": y }));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass_on_default_seed() {
        let cfg = VerifyConfig {
            samples: 100,
            ..VerifyConfig::default()
        };
        for r in [
            check_delta_homomorphism(&cfg, 6, 20),
            check_conjugation_invariance(&cfg, 6, 20),
            check_sign_lemma(&cfg, 20),
            check_product_lemma(&cfg, 4, 5),
        ] {
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.cases, 100);
        }
    }
}
