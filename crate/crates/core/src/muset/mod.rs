//! Finite free pointed `mu_n`-sets and their automorphisms.
//!
//! A set with `t` orbits has points `*` and `zeta^e · x_i` (`0 <= i < t`,
//! `e ∈ Z/n`). An automorphism `f` is stored as `(sigma, mu)` with
//! `f(x_i) = zeta^mu[i] · x_sigma(i)`; on points it acts by
//! `zeta^e x_i -> zeta^(e + mu[i]) x_sigma(i)`.

mod module;

pub use module::{module_as_muset, module_aut_as_musetaut, ModuleMuSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{permutation_sign, MuScalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuSet {
    pub n: u64,
    pub t: usize,
}

impl MuSet {
    pub fn new(n: u64, t: usize) -> Self {
        assert!(n > 0, "mu_0 is not a group");
        MuSet { n, t }
    }

    /// Number of points, marked point included.
    pub fn size(&self) -> usize {
        self.n as usize * self.t + 1
    }

    /// The one-point set.
    pub fn point(n: u64) -> Self {
        MuSet::new(n, 0)
    }

    /// Index of `zeta^e · x_i` among `0..size`; the marked point is `0`.
    pub fn point_index(&self, i: usize, e: u64) -> usize {
        1 + i * self.n as usize + (e % self.n) as usize
    }
}

/// Pointed cartesian product `X × Y` with the diagonal action.
///
/// Orbit representatives, in index order: `(x_i, *)`, then `(*, y_j)`, then
/// `(x_i, zeta^c y_j)` at index `t_X + t_Y + (i t_Y + j) n + c`.
pub fn muset_product(x: &MuSet, y: &MuSet) -> Result<MuSet> {
    if x.n != y.n {
        return Err(Error::Mismatch("n"));
    }
    Ok(MuSet::new(x.n, x.t + y.t + x.n as usize * x.t * y.t))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuSetAut {
    pub n: u64,
    pub sigma: Vec<usize>,
    pub mu: Vec<u64>,
}

impl MuSetAut {
    pub fn new(n: u64, sigma: Vec<usize>, mu: Vec<u64>) -> Result<Self> {
        if sigma.len() != mu.len() {
            return Err(Error::Mismatch("orbit counts"));
        }
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NotBijective);
            }
        }
        let mu = mu.into_iter().map(|m| m % n).collect();
        Ok(MuSetAut { n, sigma, mu })
    }

    pub fn identity(x: &MuSet) -> Self {
        MuSetAut {
            n: x.n,
            sigma: (0..x.t).collect(),
            mu: vec![0; x.t],
        }
    }

    pub fn random<R: Rng>(x: &MuSet, rng: &mut R) -> Self {
        let mut sigma: Vec<usize> = (0..x.t).collect();
        for i in (1..x.t).rev() {
            sigma.swap(i, rng.gen_range(0..=i));
        }
        let mu = (0..x.t).map(|_| rng.gen_range(0..x.n)).collect();
        MuSetAut { n: x.n, sigma, mu }
    }

    pub fn muset(&self) -> MuSet {
        MuSet::new(self.n, self.sigma.len())
    }

    /// Image of the point `zeta^e x_i`.
    pub fn apply(&self, i: usize, e: u64) -> (usize, u64) {
        (self.sigma[i], (e + self.mu[i]) % self.n)
    }
}

fn check_same(f: &MuSetAut, g: &MuSetAut) -> Result<()> {
    if f.n != g.n {
        return Err(Error::Mismatch("n"));
    }
    if f.sigma.len() != g.sigma.len() {
        return Err(Error::Mismatch("orbit counts"));
    }
    Ok(())
}

/// `f ∘ g`.
pub fn aut_compose(f: &MuSetAut, g: &MuSetAut) -> Result<MuSetAut> {
    check_same(f, g)?;
    let n = f.n;
    let sigma = g.sigma.iter().map(|&s| f.sigma[s]).collect();
    let mu = (0..g.sigma.len())
        .map(|i| (g.mu[i] + f.mu[g.sigma[i]]) % n)
        .collect();
    Ok(MuSetAut { n, sigma, mu })
}

pub fn aut_inverse(f: &MuSetAut) -> MuSetAut {
    let t = f.sigma.len();
    let mut sigma = vec![0; t];
    let mut mu = vec![0; t];
    for i in 0..t {
        let j = f.sigma[i];
        sigma[j] = i;
        mu[j] = (f.n - f.mu[i]) % f.n;
    }
    MuSetAut { n: f.n, sigma, mu }
}

/// `Δ(f) = zeta^(Σ mu[i])`.
pub fn aut_delta(f: &MuSetAut) -> MuScalar {
    let s = f.mu.iter().fold(0u64, |acc, &m| (acc + m) % f.n);
    MuScalar::new(f.n, s as i64)
}

/// Image in the abelianization `mu_n × Z/2`: `(Δ(f), sgn(sigma_f))`.
pub fn aut_abelianize(f: &MuSetAut) -> (MuScalar, i8) {
    (aut_delta(f), permutation_sign(&f.sigma))
}

/// `f × g` on `X × Y`, orbits indexed as in [`muset_product`].
pub fn aut_product(f: &MuSetAut, g: &MuSetAut, y: &MuSet) -> Result<MuSetAut> {
    if f.n != g.n || g.sigma.len() != y.t || y.n != f.n {
        return Err(Error::Mismatch("n or orbit counts"));
    }
    let n = f.n;
    let nu = n as usize;
    let (tx, ty) = (f.sigma.len(), y.t);
    let total = tx + ty + nu * tx * ty;
    let mut sigma = Vec::with_capacity(total);
    let mut mu = Vec::with_capacity(total);
    for i in 0..tx {
        sigma.push(f.sigma[i]);
        mu.push(f.mu[i]);
    }
    for j in 0..ty {
        sigma.push(tx + g.sigma[j]);
        mu.push(g.mu[j]);
    }
    // (x_i, zeta^c y_j) -> (zeta^a x_i', zeta^(c+b) y_j') = zeta^a (x_i', zeta^(c+b-a) y_j')
    for i in 0..tx {
        for j in 0..ty {
            for c in 0..n {
                let (i2, a) = (f.sigma[i], f.mu[i]);
                let (j2, b) = (g.sigma[j], g.mu[j]);
                let c2 = (c + b + n - a) % n;
                sigma.push(tx + ty + (i2 * ty + j2) * nu + c2 as usize);
                mu.push(a);
            }
        }
    }
    Ok(MuSetAut { n, sigma, mu })
}

/// `f × Id_Y`.
pub fn aut_extend(f: &MuSetAut, y: &MuSet) -> Result<MuSetAut> {
    aut_product(f, &MuSetAut::identity(y), y)
}

/// The permutation of the `n t + 1` points induced by `f`.
pub fn aut_to_permutation(f: &MuSetAut) -> Vec<usize> {
    let x = f.muset();
    let mut perm = vec![0; x.size()];
    for i in 0..x.t {
        for e in 0..x.n {
            let (j, e2) = f.apply(i, e);
            perm[x.point_index(i, e)] = x.point_index(j, e2);
        }
    }
    perm
}

/// Sign of the permutation of points, by cycle parity.
pub fn perm_sign(f: &MuSetAut) -> i8 {
    permutation_sign(&aut_to_permutation(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_examples() {
        let f = MuSetAut::new(3, vec![0], vec![1]).unwrap();
        let g = MuSetAut::new(3, vec![0], vec![2]).unwrap();
        assert_eq!(aut_compose(&f, &g).unwrap().mu, vec![0]);
        let (a, b, c, d) = (1, 2, 3, 4);
        let n = 7;
        let f = MuSetAut::new(n, vec![1, 0], vec![a, b]).unwrap();
        let g = MuSetAut::new(n, vec![1, 0], vec![c, d]).unwrap();
        let h = aut_compose(&f, &g).unwrap();
        assert_eq!(h.sigma, vec![0, 1]);
        assert_eq!(h.mu, vec![c + b, d + a]);
        assert_eq!(
            aut_compose(&f, &aut_inverse(&f)).unwrap(),
            MuSetAut::identity(&f.muset())
        );
    }

    #[test]
    fn delta_examples() {
        let x = MuSet::new(3, 2);
        assert!(aut_delta(&MuSetAut::identity(&x)).is_one());
        let f = MuSetAut::new(3, vec![1, 0], vec![1, 2]).unwrap();
        assert!(aut_delta(&f).is_one());
        let g = MuSetAut::new(2, vec![0], vec![1]).unwrap();
        assert_eq!(aut_delta(&g).as_sign(), Some(-1));
    }

    #[test]
    fn abelianization_examples() {
        let x = MuSet::new(5, 3);
        let (d, s) = aut_abelianize(&MuSetAut::identity(&x));
        assert!(d.is_one());
        assert_eq!(s, 1);
        let swap = MuSetAut::new(5, vec![1, 0, 2], vec![0, 0, 0]).unwrap();
        assert_eq!(aut_abelianize(&swap).1, -1);
    }

    #[test]
    fn product_orbit_count() {
        let x = MuSet::new(2, 1);
        assert_eq!(muset_product(&x, &x).unwrap().t, 4);
        let y = MuSet::new(3, 4);
        assert_eq!(muset_product(&y, &MuSet::point(3)).unwrap(), y);
    }

    #[test]
    fn permutation_signs() {
        let swap = MuSetAut::new(2, vec![0], vec![1]).unwrap();
        assert_eq!(perm_sign(&swap), -1);
        let f = MuSetAut::new(2, vec![1, 0], vec![0, 0]).unwrap();
        assert_eq!(perm_sign(&f), 1);
        assert_eq!(perm_sign(&MuSetAut::identity(&MuSet::new(2, 5))), 1);
    }

    #[test]
    fn rejects_non_permutations() {
        assert_eq!(MuSetAut::new(2, vec![0, 0], vec![0, 0]), Err(Error::NotBijective));
    }
}
