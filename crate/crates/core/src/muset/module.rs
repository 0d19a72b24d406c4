//! Finite `O`-modules viewed as free pointed `mu_n`-sets, by enumeration.

use super::{MuSet, MuSetAut};
use crate::arith::{LocalField, MuCtx, RepRule};
use crate::error::{Error, Result};
use crate::lattice::{FiniteModule, ModElem, ModMap};

/// Orbit decomposition of a finite module under `mu_n ⊂ O^×`.
#[derive(Debug, Clone)]
pub struct ModuleMuSet {
    pub module: FiniteModule,
    pub set: MuSet,
    pub rule: RepRule,
    /// Orbit representatives, orbits ordered by their least element.
    pub reps: Vec<ModElem>,
    /// For each canonical element index: `(orbit, e)` with `x = zeta^e · rep`.
    /// The entry for zero is unused.
    pub place: Vec<(u32, u32)>,
}

impl ModuleMuSet {
    /// Orbit and exponent of a nonzero element.
    pub fn locate(&self, lf: &LocalField, x: &ModElem) -> Option<(usize, u64)> {
        if self.module.is_zero_elem(x) {
            return None;
        }
        let (o, e) = self.place[self.module.index(&lf.ring, x) as usize];
        Some((o as usize, e as u64))
    }
}

/// Enumerates the orbits of `T` and picks representatives by sorting each
/// orbit in the canonical element order.
pub fn module_as_muset(
    lf: &LocalField,
    mu: &MuCtx,
    rule: RepRule,
    module: &FiniteModule,
    bound: u64,
) -> Result<ModuleMuSet> {
    let ring = &lf.ring;
    let size = module.size_within(bound)? as usize;
    let n = mu.n();
    const UNSEEN: (u32, u32) = (u32::MAX, 0);
    let mut place = vec![UNSEEN; size];
    let mut reps = Vec::with_capacity((size - 1) / n as usize);
    for idx in 1..size {
        if place[idx] != UNSEEN {
            continue;
        }
        let x = module.element(ring, idx as u64);
        let mut orbit: Vec<(u64, u64)> = (0..n)
            .map(|j| (module.index(ring, &module.scale(ring, mu.teich(j), &x)), j))
            .collect();
        orbit.sort_unstable();
        let pick = match rule {
            RepRule::Least => 0,
            RepRule::SecondLeast => 1.min(orbit.len() - 1),
        };
        let (rep_idx, j0) = orbit[pick];
        let id = reps.len() as u32;
        for &(i, j) in &orbit {
            place[i as usize] = (id, ((j + n - j0) % n) as u32);
        }
        reps.push(module.element(ring, rep_idx));
    }
    let set = MuSet::new(n, reps.len());
    Ok(ModuleMuSet {
        module: module.clone(),
        set,
        rule,
        reps,
        place,
    })
}

/// An automorphism of `T` as an automorphism of its `mu_n`-set.
pub fn module_aut_as_musetaut(lf: &LocalField, t: &ModuleMuSet, g: &ModMap) -> Result<MuSetAut> {
    if g.src != t.module || g.dst != t.module {
        return Err(Error::Mismatch("module of the automorphism"));
    }
    let mut sigma = Vec::with_capacity(t.reps.len());
    let mut mu = Vec::with_capacity(t.reps.len());
    for r in &t.reps {
        let (o, e) = t.locate(lf, &g.apply(&lf.ring, r)).ok_or(Error::NotBijective)?;
        sigma.push(o);
        mu.push(e);
    }
    MuSetAut::new(t.set.n, sigma, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RElem;
    use crate::muset::aut_delta;

    fn mult(lf: &LocalField, t: &FiniteModule, a: u64) -> ModMap {
        ModMap::new(
            &lf.ring,
            t.clone(),
            t.clone(),
            vec![vec![RElem::from_u64(a)]],
        )
        .unwrap()
    }

    #[test]
    fn orbit_counts() {
        let lf = LocalField::new(7, 1).unwrap();
        let mu = MuCtx::new(&lf, 2).unwrap();
        let t1 = FiniteModule::new(&lf, &[1]);
        let t2 = FiniteModule::new(&lf, &[2]);
        assert_eq!(module_as_muset(&lf, &mu, RepRule::Least, &t1, 1000).unwrap().set.t, 3);
        assert_eq!(module_as_muset(&lf, &mu, RepRule::Least, &t2, 1000).unwrap().set.t, 24);
    }

    #[test]
    fn multiplication_by_three() {
        let lf = LocalField::new(7, 1).unwrap();
        let mu = MuCtx::new(&lf, 2).unwrap();
        let t = FiniteModule::new(&lf, &[1]);
        let x = module_as_muset(&lf, &mu, RepRule::Least, &t, 1000).unwrap();
        let f = module_aut_as_musetaut(&lf, &x, &mult(&lf, &t, 3)).unwrap();
        assert_eq!(aut_delta(&f).as_sign(), Some(-1));
    }

    #[test]
    fn non_bijective_maps_are_rejected() {
        let lf = LocalField::new(7, 1).unwrap();
        let mu = MuCtx::new(&lf, 2).unwrap();
        let t = FiniteModule::new(&lf, &[2]);
        let x = module_as_muset(&lf, &mu, RepRule::Least, &t, 1000).unwrap();
        assert_eq!(
            module_aut_as_musetaut(&lf, &x, &mult(&lf, &t, 7)),
            Err(Error::NotBijective)
        );
    }
}
