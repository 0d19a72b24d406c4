//! Determinant lines of finite `O`-modules and the canonical isomorphisms
//! between them, each evaluated on canonical base points as an element of
//! `mu_n`.
//!
//! The base point of `det(T)` is the tensor product of the orbit
//! representatives of `T`. Within an orbit the canonical order is decided by
//! the leading digit alone (multiplying by a Teichmüller root of unity
//! multiplies the leading digit and leaves lower digits zero), so the
//! exponent of an element relative to its representative is a table lookup.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use super::line::MuLine;
use crate::arith::{power_residue_char, LocalField, MuCtx, MuScalar, RepRule};
use crate::error::{Error, Result};
use crate::lattice::{FiniteModule, ModElem, ModMap};
use crate::muset::{aut_delta, module_as_muset, module_aut_as_musetaut, MuSet};

/// Default enumeration bound on module cardinalities.
pub const DEFAULT_BOUND: u64 = 100_000;

/// Everything needed to evaluate determinant-line scalars: the field, `mu_n`,
/// the base-point rule and the enumeration bound.
pub struct DetCtx {
    lf: LocalField,
    mu: MuCtx,
    rule: RepRule,
    bound: u64,
    cache: Mutex<HashMap<(ModMap, ModMap), MuScalar>>,
}

impl fmt::Debug for DetCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DetCtx")
            .field("p", &self.lf.p())
            .field("f", &self.lf.f())
            .field("n", &self.mu.n())
            .field("rule", &self.rule)
            .field("bound", &self.bound)
            .finish()
    }
}

impl DetCtx {
    pub fn new(lf: LocalField, n: u64) -> Result<Self> {
        let mu = MuCtx::new(&lf, n)?;
        Ok(DetCtx {
            lf,
            mu,
            rule: RepRule::Least,
            bound: DEFAULT_BOUND,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_rule(mut self, rule: RepRule) -> Self {
        self.rule = rule;
        self.cache = Mutex::new(HashMap::new());
        self
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn lf(&self) -> &LocalField {
        &self.lf
    }

    pub fn mu(&self) -> &MuCtx {
        &self.mu
    }

    pub fn n(&self) -> u64 {
        self.mu.n()
    }

    pub fn rule(&self) -> RepRule {
        self.rule
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn scalar(&self, e: i64) -> MuScalar {
        MuScalar::new(self.n(), e)
    }

    /// `det(T)` as a labelled line.
    pub fn det_line(&self, t: &FiniteModule) -> MuLine {
        MuLine::new(self.n(), format!("det(O/pi^{:?})", t.exps()))
    }

    /// The `e` with `x = zeta^e · rep(x)`, or `None` for zero.
    pub fn rho_elem(&self, t: &FiniteModule, x: &ModElem) -> Option<u64> {
        t.leading_digit(&self.lf.ring, x)
            .map(|(_, _, d)| self.mu.orbit_exp(d, self.rule))
    }

    /// The representative of the orbit of a nonzero `x`.
    pub fn rep_of(&self, t: &FiniteModule, x: &ModElem) -> Option<ModElem> {
        let e = self.rho_elem(t, x)?;
        let back = self.mu.teich((self.n() - e) % self.n());
        Some(t.scale(&self.lf.ring, back, x))
    }

    /// `Δ` of an automorphism, through the `pi`-adic filtration: the product
    /// over `i` of the `(q-1)/n`-th powers of the determinants of the induced
    /// maps on `pi^i T / pi^(i+1) T`.
    pub fn det_of_module_aut(&self, g: &ModMap) -> Result<MuScalar> {
        if g.src != g.dst {
            return Err(Error::Mismatch("source and target modules"));
        }
        let top = g.src.exps().iter().copied().max().unwrap_or(0);
        let field = &self.lf.residue;
        let mut acc = MuScalar::one(self.n());
        for i in 0..top {
            let d = field.det(&g.graded_piece(&self.lf.ring, i));
            if d == 0 {
                return Err(Error::NotBijective);
            }
            acc = acc.mul(&power_residue_char(field, d, self.n())?);
        }
        Ok(acc)
    }

    /// `Δ` of an automorphism, by enumerating orbits.
    pub fn det_of_module_aut_brute(&self, g: &ModMap) -> Result<MuScalar> {
        if g.src != g.dst {
            return Err(Error::Mismatch("source and target modules"));
        }
        let set = module_as_muset(&self.lf, &self.mu, self.rule, &g.src, self.bound)?;
        Ok(aut_delta(&module_aut_as_musetaut(&self.lf, &set, g)?))
    }

    /// The `c` with `⊗ g(reps of S) = zeta^c · ⊗ reps of T` for an
    /// isomorphism `g : S -> T`.
    ///
    /// Isomorphic modules in normal form share their coordinates, and the
    /// canonical base points depend only on those coordinates, so `c` is the
    /// determinant of `g` read as an automorphism.
    pub fn det_iso_scalar(&self, g: &ModMap) -> Result<MuScalar> {
        if g.src.exps() != g.dst.exps() {
            return Err(Error::NotBijective);
        }
        let as_aut = ModMap {
            src: g.src.clone(),
            dst: g.src.clone(),
            mat: g.mat.clone(),
        };
        self.det_of_module_aut(&as_aut)
    }

    /// The scalar `s` with `base(X) ⊗ base(Z) -> zeta^s · base(Y)` under the
    /// canonical isomorphism `det(X) ⊗ det(Z) ≅ det(Y)` of a short exact
    /// sequence `0 -> X -i-> Y -p-> Z -> 0`.
    ///
    /// Two steps: the orbits of `Y` split into those of `i(X)` and those of
    /// `Y//X`, giving `det(Y) ≅ det(X) ⊗ det(Y//X)`; then
    /// [`fiber_iso`] identifies `det(Z)` with `det(Y//X)` along `p`.
    pub fn exact_seq_iso(&self, i: &ModMap, p: &ModMap) -> Result<MuScalar> {
        if i.dst != p.src {
            return Err(Error::Mismatch("modules of the sequence"));
        }
        let key = (i.clone(), p.clone());
        if let Some(s) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(*s);
        }
        let s = self.exact_seq_uncached(i, p)?;
        self.cache.lock().expect("cache poisoned").insert(key, s);
        Ok(s)
    }

    fn exact_seq_uncached(&self, i: &ModMap, p: &ModMap) -> Result<MuScalar> {
        let ring = &self.lf.ring;
        let (x, y, z) = (&i.src, &i.dst, &p.dst);
        let n = self.n();
        for j in 0..x.rank() {
            if !z.is_zero_elem(&p.apply(ring, &i.apply(ring, &x.generator(j)))) {
                return Err(Error::NotExact("the composite is not zero".into()));
            }
        }
        if x.length() + z.length() != y.length() {
            return Err(Error::NotExact("cardinalities do not multiply".into()));
        }
        let size_y = y.size_within(self.bound)?;
        // Step 1: orbits of X inside Y.
        let mut s1 = 0u64;
        for xe in x.elements(ring, self.bound)?.skip(1) {
            if self.rho_elem(x, &xe) != Some(0) {
                continue;
            }
            let ye = i.apply(ring, &xe);
            let r = self
                .rho_elem(y, &ye)
                .ok_or_else(|| Error::NotExact("the first map is not injective".into()))?;
            s1 = (s1 + r) % n;
        }
        // Step 2: the orbits of Y//X over Z.
        let mut kernel_orbits = 0u64;
        let mut z_ids: HashMap<u64, usize> = HashMap::new();
        let mut images = Vec::new();
        for ye in y.elements(ring, self.bound)?.skip(1) {
            if self.rho_elem(y, &ye) != Some(0) {
                continue;
            }
            let ze = p.apply(ring, &ye);
            match self.rho_elem(z, &ze) {
                None => kernel_orbits += 1,
                Some(c) => {
                    let back = self.mu.teich((n - c) % n);
                    let rep_idx = z.index(ring, &z.scale(ring, back, &ze));
                    let next = z_ids.len();
                    let id = *z_ids.entry(rep_idx).or_insert(next);
                    images.push(Some((id, c)));
                }
            }
        }
        let size_x = x.size_within(self.bound)?;
        if 1 + n * kernel_orbits != size_x {
            return Err(Error::NotExact(
                "the kernel of the second map differs from the image of the first".into(),
            ));
        }
        let t_z = ((size_y / size_x - 1) / n) as usize;
        let s2 = fiber_iso(
            &MuSet::new(n, images.len()),
            &MuSet::new(n, t_z),
            &images,
        )?;
        Ok(self.scalar(s1 as i64).mul(&s2))
    }
}

/// The canonical isomorphism `det(Z) ≅ det(Y)` along an equivariant
/// surjection `f : Y -> Z` whose fibers over non-marked points have
/// cardinality `≡ 1 (mod n)` and with `f^{-1}(*) = {*}`.
///
/// `images[k]` is `f(y_k)` as `Some((orbit, e))` meaning `zeta^e z_orbit`
/// (`None` for the marked point). Each orbit `L` of `Z` is identified with
/// the tensor product of the orbits `M_1, ..., M_r` above it through
/// `l -> f_1^{-1}(l) ⊗ ... ⊗ f_r^{-1}(l)`; the result `s` satisfies
/// `base(Z) -> zeta^s · base(Y)`.
pub fn fiber_iso(y: &MuSet, z: &MuSet, images: &[Option<(usize, u64)>]) -> Result<MuScalar> {
    if y.n != z.n || images.len() != y.t {
        return Err(Error::Mismatch("n or orbit counts"));
    }
    let n = y.n;
    let mut fiber = vec![0u64; z.t];
    let mut s = 0u64;
    for img in images {
        let (o, e) = img.ok_or_else(|| {
            Error::Fiber("a non-marked point maps to the marked point".into())
        })?;
        if o >= z.t {
            return Err(Error::Fiber(format!("orbit {o} out of range")));
        }
        fiber[o] += 1;
        s = (s + n - e % n) % n;
    }
    if let Some(o) = fiber.iter().position(|&c| c == 0) {
        return Err(Error::Fiber(format!("orbit {o} has an empty fiber")));
    }
    if let Some(o) = fiber.iter().position(|&c| c % n != 1 % n) {
        return Err(Error::Fiber(format!(
            "the fiber over orbit {o} has {} points, not 1 mod {n}",
            fiber[o]
        )));
    }
    Ok(MuScalar::new(n, s as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RElem;

    fn ctx(p: u64, n: u64) -> DetCtx {
        DetCtx::new(LocalField::new(p, 1).unwrap(), n).unwrap()
    }

    fn scalar_map(c: &DetCtx, exps: &[u32], a: u64) -> ModMap {
        let t = FiniteModule::new(c.lf(), exps);
        let r = t.rank();
        let mat = (0..r)
            .map(|l| (0..r).map(|j| RElem::from_u64(if l == j { a } else { 0 })).collect())
            .collect();
        ModMap::new(&c.lf().ring, t.clone(), t, mat).unwrap()
    }

    #[test]
    fn multiplication_by_three_mod_seven() {
        let c = ctx(7, 2);
        let g = scalar_map(&c, &[1], 3);
        assert_eq!(c.det_of_module_aut(&g).unwrap().as_sign(), Some(-1));
        assert_eq!(c.det_of_module_aut_brute(&g).unwrap().as_sign(), Some(-1));
    }

    #[test]
    fn multiplication_by_three_mod_forty_nine() {
        let c = ctx(7, 2);
        let g = scalar_map(&c, &[2], 3);
        assert!(c.det_of_module_aut(&g).unwrap().is_one());
        assert!(c.det_of_module_aut_brute(&g).unwrap().is_one());
    }

    #[test]
    fn identity_has_trivial_determinant() {
        let c = ctx(13, 4);
        let g = scalar_map(&c, &[1, 2], 1);
        assert!(c.det_of_module_aut(&g).unwrap().is_one());
        assert!(c.det_iso_scalar(&g).unwrap().is_one());
    }

    #[test]
    fn fiber_iso_bijective_and_trivial_cases() {
        let y = MuSet::new(3, 2);
        let imgs = [Some((1, 0)), Some((0, 2))];
        // base(Z) = z_0 ⊗ z_1 = (zeta^-2 y_1) ⊗ y_0
        assert_eq!(fiber_iso(&y, &y, &imgs).unwrap().exp(), 1);
        let one = MuSet::new(1, 3);
        let imgs = [Some((0, 0)), Some((0, 0)), Some((0, 0))];
        assert!(fiber_iso(&one, &MuSet::new(1, 1), &imgs).unwrap().is_one());
        let bad = [Some((0, 0)), Some((0, 0))];
        assert!(matches!(
            fiber_iso(&MuSet::new(2, 2), &MuSet::new(2, 1), &bad),
            Err(Error::Fiber(_))
        ));
    }

    #[test]
    fn degenerate_exact_sequences() {
        let c = ctx(7, 2);
        let lf = c.lf();
        let zero = FiniteModule::new(lf, &[]);
        let t = FiniteModule::new(lf, &[2]);
        let g = scalar_map(&c, &[2], 3);
        let from_zero = ModMap::new(&lf.ring, zero.clone(), t.clone(), vec![vec![]]).unwrap();
        let to_zero = ModMap::new(&lf.ring, t.clone(), zero.clone(), vec![]).unwrap();
        // X = 0: det(Z) ≅ det(Y) along the isomorphism Y -> Z is inverse to g.
        let s = c.exact_seq_iso(&from_zero, &g).unwrap();
        assert_eq!(s, c.det_iso_scalar(&g).unwrap().inv());
        let s = c.exact_seq_iso(&g, &to_zero).unwrap();
        assert_eq!(s, c.det_iso_scalar(&g).unwrap());
    }

    #[test]
    fn non_exact_sequences_are_rejected() {
        let c = ctx(7, 2);
        let lf = c.lf();
        let x = FiniteModule::new(lf, &[1]);
        let y = FiniteModule::new(lf, &[2]);
        let i = ModMap::new(&lf.ring, x.clone(), y.clone(), vec![vec![RElem::from_u64(7)]]).unwrap();
        let p = ModMap::new(&lf.ring, y, x, vec![vec![RElem::from_u64(7)]]).unwrap();
        assert!(matches!(c.exact_seq_iso(&i, &p), Err(Error::NotExact(_))));
    }
}
