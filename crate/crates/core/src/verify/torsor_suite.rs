//! Determinants of automorphisms of finite `O`-modules: filtration versus
//! enumeration, the classical determinant, multiplicativity and naturality
//! along short exact sequences.

use rand::Rng;
use serde_json::json;

use super::{gen, sub_seed, PropertyResult, VerifyConfig};
use crate::arith::{mu_dlog, LocalField, RElem};
use crate::error::{Error, Result};
use crate::lattice::{
    inclusion_map, induced_map, matrix, quotient_struct, FiniteModule, KMatrix, Lattice, ModMap,
};
use crate::torsor::{duality_contract, line_dual, DetCtx, MuLine};

fn random_relem(lf: &LocalField, rng: &mut gen::TestRng, e: u32) -> RElem {
    let m = lf.ring.pk(e);
    let mut x = RElem::ZERO;
    for c in x.0.iter_mut().take(lf.f() as usize) {
        *c = rng.gen_range(0..m);
    }
    x
}

/// A random automorphism of `t`: a well-defined endomorphism whose graded
/// pieces are invertible.
pub fn random_module_aut(lf: &LocalField, rng: &mut gen::TestRng, t: &FiniteModule) -> ModMap {
    let ring = &lf.ring;
    let e = t.exps();
    loop {
        let mat: Vec<Vec<RElem>> = (0..t.rank())
            .map(|l| {
                (0..t.rank())
                    .map(|j| {
                        let x = random_relem(lf, rng, e[l]);
                        ring.shift_up(&x, e[l].saturating_sub(e[j]), e[l])
                    })
                    .collect()
            })
            .collect();
        let g = ModMap::new(ring, t.clone(), t.clone(), mat).expect("entries kill the torsion");
        let top = e.iter().copied().max().unwrap_or(0);
        if (0..top).all(|i| lf.residue.det(&g.graded_piece(ring, i)) != 0) {
            return g;
        }
    }
}

fn label(g: &ModMap) -> serde_json::Value {
    json!({
        "exps": g.src.exps(),
        "matrix": g.mat.iter().map(|r| r.iter().map(|x| x.0[0]).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Fast (filtration) and brute-force (enumeration) determinants agree on
/// `O/pi^e` for `e <= emax` and on two small rank-two modules.
pub fn check_det_paths(
    lf: &LocalField,
    cfg: &VerifyConfig,
    emax: u32,
    per_module: usize,
) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("filtration determinant = enumerated determinant");
    let mut rng = gen::rng(sub_seed(cfg, "det-paths"));
    let mut shapes: Vec<Vec<u32>> = (1..=emax).map(|e| vec![e]).collect();
    shapes.push(vec![1, 1]);
    shapes.push(vec![2, 1]);
    for n in cfg.ns(lf)? {
        let dc = DetCtx::new(lf.clone(), n)?.with_bound(cfg.bound);
        for shape in &shapes {
            let t = FiniteModule::new(lf, shape);
            if t.size_within(cfg.bound).is_err() {
                r.rejected += per_module as u64;
                continue;
            }
            for _ in 0..per_module {
                let g = random_module_aut(lf, &mut rng, &t);
                let outcome = (|| Ok(dc.det_of_module_aut(&g)? == dc.det_of_module_aut_brute(&g)?))();
                r.check(outcome, || json!({ "n": n, "aut": label(&g) }));
            }
        }
    }
    Ok(r)
}

/// For `T = F_q^2` and `n = q - 1`, `Δ` is the usual determinant, checked on
/// all of `GL_2(F_q)`. Runs only for `q <= 5`.
pub fn check_classical_det(lf: &LocalField) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("n = q - 1: delta = classical determinant on GL_2");
    let k = &lf.residue;
    let q = k.q();
    if q > 5 {
        return Ok(r);
    }
    let dc = DetCtx::new(lf.clone(), q - 1)?;
    let t = FiniteModule::new(lf, &[1, 1]);
    let elems: Vec<u32> = k.elements().collect();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let det = k.sub(k.mul(a, d), k.mul(b, c));
                    if det == 0 {
                        continue;
                    }
                    let outcome = (|| -> Result<bool> {
                        let lift = |x| lf.ring.lift(x);
                        let g = ModMap::new(
                            &lf.ring,
                            t.clone(),
                            t.clone(),
                            vec![vec![lift(a), lift(b)], vec![lift(c), lift(d)]],
                        )?;
                        Ok(dc.det_of_module_aut_brute(&g)? == mu_dlog(k, det, q - 1)?)
                    })();
                    r.check(outcome, || json!({ "q": q, "matrix": [[a, b], [c, d]] }));
                }
            }
        }
    }
    Ok(r)
}

/// `Δ(g h) = Δ(g) Δ(h)` by enumeration, on random modules with at most
/// 2500 elements.
pub fn check_det_multiplicativity(lf: &LocalField, cfg: &VerifyConfig) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("delta is multiplicative on module automorphisms");
    let mut rng = gen::rng(sub_seed(cfg, "det-mult"));
    let ns = cfg.ns(lf)?;
    let ctxs: Vec<DetCtx> = ns
        .iter()
        .map(|&n| DetCtx::new(lf.clone(), n).map(|d| d.with_bound(cfg.bound)))
        .collect::<Result<_>>()?;
    for s in 0..cfg.samples {
        let dc = &ctxs[s % ctxs.len()];
        let t = loop {
            let rank = rng.gen_range(1..=3);
            let exps: Vec<u32> = (0..rank).map(|_| rng.gen_range(1..=3)).collect();
            let t = FiniteModule::new(lf, &exps);
            if t.size_within(2500.min(cfg.bound)).is_ok() {
                break t;
            }
        };
        let g = random_module_aut(lf, &mut rng, &t);
        let h = random_module_aut(lf, &mut rng, &t);
        let outcome = (|| -> Result<bool> {
            let gh = g.compose(&lf.ring, &h)?;
            let lhs = dc.det_of_module_aut_brute(&gh)?;
            Ok(lhs == dc.det_of_module_aut_brute(&g)?.mul(&dc.det_of_module_aut_brute(&h)?))
        })();
        r.check(outcome, || json!({ "n": dc.n(), "g": label(&g), "h": label(&h) }));
    }
    Ok(r)
}

/// A random short exact sequence `0 -> B/C -> A/C -> A/B -> 0` with
/// `A = O^m`, `C = pi^k O^m` and `B = C + O[g] v`, together with the
/// automorphism `g ∈ GL_m(O)`, which preserves all three lattices.
pub struct RandomSequence {
    pub a: Lattice,
    pub b: Lattice,
    pub c: Lattice,
    pub g: KMatrix,
}

pub fn random_sequence(lf: &LocalField, rng: &mut gen::TestRng, m: usize, k: i64) -> Result<RandomSequence> {
    let g = gen::gl_o(lf, rng, m);
    let v = gen::integral_vector(lf, rng, m);
    let mut gens: KMatrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { lf.k_pi_pow(k) } else { crate::arith::KElem::zero() })
                .collect()
        })
        .collect();
    let mut w = v;
    for _ in 0..m {
        for (row, wi) in gens.iter_mut().zip(&w) {
            row.push(*wi);
        }
        w = matrix::mul_vec(lf, &g, &w);
    }
    let b = Lattice::spanned_by(lf, &gens)?;
    Ok(RandomSequence {
        a: Lattice::standard(lf, m),
        b,
        c: Lattice::diagonal(lf, &vec![k; m]),
        g,
    })
}

/// `Δ(g_X) Δ(g_Z) = Δ(g_Y)` for the automorphisms a lattice automorphism
/// induces on a short exact sequence; the sequence is also checked to be
/// accepted by the exact-sequence isomorphism.
pub fn check_exact_naturality(lf: &LocalField, cfg: &VerifyConfig) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("determinants are multiplicative along exact sequences");
    let mut rng = gen::rng(sub_seed(cfg, "exact-naturality"));
    let ns = cfg.ns(lf)?;
    let ctxs: Vec<DetCtx> = ns
        .iter()
        .map(|&n| DetCtx::new(lf.clone(), n).map(|d| d.with_bound(cfg.bound)))
        .collect::<Result<_>>()?;
    for s in 0..4 * cfg.samples {
        if r.cases >= cfg.samples as u64 {
            break;
        }
        let dc = &ctxs[s % ctxs.len()];
        let m = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=2);
        let seq = random_sequence(lf, &mut rng, m, k)?;
        let outcome = (|| -> Result<bool> {
            if FiniteModule::new(lf, &vec![k as u32; m]).size_within(dc.bound()).is_err() {
                return Err(Error::Bound {
                    size: format!("q^{}", m as i64 * k),
                    bound: dc.bound(),
                });
            }
            let x = quotient_struct(lf, &seq.b, &seq.c)?;
            let y = quotient_struct(lf, &seq.a, &seq.c)?;
            let z = quotient_struct(lf, &seq.a, &seq.b)?;
            dc.exact_seq_iso(&inclusion_map(lf, &x, &y)?, &inclusion_map(lf, &y, &z)?)?;
            let gx = dc.det_of_module_aut_brute(&induced_map(lf, &x, &x, &seq.g)?)?;
            let gy = dc.det_of_module_aut_brute(&induced_map(lf, &y, &y, &seq.g)?)?;
            let gz = dc.det_of_module_aut_brute(&induced_map(lf, &z, &z, &seq.g)?)?;
            Ok(gx.mul(&gz) == gy)
        })();
        r.check(outcome, || {
            json!({
                "n": dc.n(),
                "b": matrix::format_matrix(lf, seq.b.basis()),
                "c": matrix::format_matrix(lf, seq.c.basis()),
                "g": matrix::format_matrix(lf, &seq.g),
            })
        });
    }
    Ok(r)
}

/// Contraction `L × L^∨ -> mu_n` is perfect: fixing either argument gives a
/// bijection onto `mu_n`.
pub fn check_duality_pairing(lf: &LocalField, cfg: &VerifyConfig) -> Result<PropertyResult> {
    let mut r = PropertyResult::new("duality contraction is a perfect pairing");
    for n in cfg.ns(lf)? {
        let l = MuLine::new(n, "L");
        let d = line_dual(&l);
        for e in 0..n {
            let outcome = (|| -> Result<bool> {
                let fixed = l.elem(crate::arith::MuScalar::new(n, e as i64))?;
                let mut hit = vec![false; n as usize];
                let mut back = vec![false; n as usize];
                for j in 0..n {
                    let g = d.elem(crate::arith::MuScalar::new(n, j as i64))?;
                    hit[duality_contract(&fixed, &g)?.exp() as usize] = true;
                    let other = l.elem(crate::arith::MuScalar::new(n, j as i64))?;
                    let fixed_dual = d.elem(crate::arith::MuScalar::new(n, e as i64))?;
                    back[duality_contract(&other, &fixed_dual)?.exp() as usize] = true;
                }
                Ok(hit.iter().chain(&back).all(|&h| h))
            })();
            r.check(outcome, || json!({ "n": n, "e": e }));
        }
    }
    Ok(r)
}
