//! Random generators for property runs. All randomness flows from a seeded
//! `ChaCha8Rng`, so runs are reproducible.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{KElem, LocalField, RElem};
use crate::lattice::{matrix, KMatrix, Lattice};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A unit of `O` whose residue is uniform in `F_q^×`, lifted with random
/// higher digits up to precision `prec`.
pub fn unit(lf: &LocalField, rng: &mut TestRng, prec: u32) -> KElem {
    let res = rng.gen_range(1..lf.q()) as u32;
    let mut raw = lf.ring.lift(res);
    let m = lf.ring.pk(prec.min(lf.nmax()));
    let p = lf.p();
    for c in raw.0.iter_mut().take(lf.f() as usize) {
        let high = rng.gen_range(0..(m / p).max(1));
        *c += high * p;
    }
    lf.k_from_raw(0, &raw, prec)
}

/// A residue-level unit: the coefficient-wise lift of a residue code.
pub fn residue_unit(lf: &LocalField, code: u32, prec: u32) -> KElem {
    lf.k_from_raw(0, &lf.ring.lift(code), prec)
}

/// `pi^v u` with `v` uniform in `[-vmax, vmax]`.
pub fn kelem(lf: &LocalField, rng: &mut TestRng, vmax: i64, prec: u32) -> KElem {
    let v = rng.gen_range(-vmax..=vmax);
    lf.k_mul(&lf.k_pi_pow(v), &unit(lf, rng, prec))
}

/// A random invertible matrix with entries of valuation in `[-vmax, vmax]`
/// (a quarter of the entries zero).
pub fn gl(lf: &LocalField, rng: &mut TestRng, m: usize, vmax: i64) -> KMatrix {
    loop {
        let a: KMatrix = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        if m > 1 && rng.gen_bool(0.25) {
                            KElem::zero()
                        } else {
                            kelem(lf, rng, vmax, lf.nmax())
                        }
                    })
                    .collect()
            })
            .collect();
        if matrix::inverse(lf, &a).is_ok() {
            return a;
        }
    }
}

/// A random element of `GL_m(O)`.
pub fn gl_o(lf: &LocalField, rng: &mut TestRng, m: usize) -> KMatrix {
    loop {
        let a: KMatrix = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let mut raw = RElem::ZERO;
                        for c in raw.0.iter_mut().take(lf.f() as usize) {
                            *c = rng.gen_range(0..lf.ring.pk(3.min(lf.nmax())));
                        }
                        lf.k_from_raw(0, &raw, lf.nmax())
                    })
                    .collect()
            })
            .collect();
        let residues: Vec<Vec<u32>> = a
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x.valuation() {
                        Some(0) => lf.ring.residue(x.unit()),
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        if lf.residue.det(&residues) != 0 {
            return a;
        }
    }
}

pub fn lattice(lf: &LocalField, rng: &mut TestRng, m: usize, vmax: i64) -> Lattice {
    Lattice::from_basis(lf, &gl(lf, rng, m, vmax)).expect("invertible basis")
}

/// A random integral vector.
pub fn integral_vector(lf: &LocalField, rng: &mut TestRng, m: usize) -> Vec<KElem> {
    (0..m)
        .map(|_| {
            if rng.gen_bool(0.2) {
                KElem::zero()
            } else {
                let v = rng.gen_range(0..3);
                lf.k_mul(&lf.k_pi_pow(v), &unit(lf, rng, lf.nmax()))
            }
        })
        .collect()
}
