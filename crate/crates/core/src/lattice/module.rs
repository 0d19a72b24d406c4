//! Finite `O`-modules `⊕ O/pi^e_i` and `O`-linear maps between them.
//!
//! An element is a vector of ring elements, coordinate `i` reduced modulo
//! `p^e_i`. Elements are ordered canonically: coordinates in order, and within
//! a coordinate the `p`-adic digits lowest first, each digit compared by its
//! residue code. The canonical index of an element is its rank in this order.

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{FElem, LocalField, RElem, RingCtx};
use crate::error::{Error, Result};

pub type ModElem = Vec<RElem>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModule {
    exps: Vec<u32>,
    q: u64,
}

impl FiniteModule {
    /// `⊕ O/pi^e_i`, summands in the given order; zero exponents are dropped.
    pub fn new(lf: &LocalField, exps: &[u32]) -> Self {
        let exps: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        FiniteModule { exps, q: lf.q() }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    /// Length as an `O`-module, i.e. `log_q` of the cardinality.
    pub fn length(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn cardinality(&self) -> BigUint {
        let mut c = BigUint::one();
        for _ in 0..self.length() {
            c *= self.q;
        }
        c
    }

    /// Cardinality if it does not exceed `bound`.
    pub fn size_within(&self, bound: u64) -> Result<u64> {
        let mut c: u64 = 1;
        for _ in 0..self.length() {
            c = match c.checked_mul(self.q) {
                Some(x) if x <= bound => x,
                _ => {
                    return Err(Error::Bound {
                        size: self.cardinality().to_string(),
                        bound,
                    })
                }
            };
        }
        if c > bound {
            return Err(Error::Bound {
                size: c.to_string(),
                bound,
            });
        }
        Ok(c)
    }

    pub fn zero(&self) -> ModElem {
        vec![RElem::ZERO; self.rank()]
    }

    /// The `j`-th standard generator.
    pub fn generator(&self, j: usize) -> ModElem {
        let mut x = self.zero();
        x[j] = RElem::from_u64(1);
        x
    }

    /// The element with canonical index `idx`.
    pub fn element(&self, ring: &RingCtx, mut idx: u64) -> ModElem {
        let q = self.q;
        let mut out = self.zero();
        for (i, &e) in self.exps.iter().enumerate().rev() {
            let mut digits = vec![0 as FElem; e as usize];
            for d in digits.iter_mut().rev() {
                *d = (idx % q) as FElem;
                idx /= q;
            }
            let mut acc = RElem::ZERO;
            for (k, &d) in digits.iter().enumerate() {
                let lifted = ring.shift_up(&ring.lift(d), k as u32, e);
                acc = ring.add(&acc, &lifted, e);
            }
            out[i] = acc;
        }
        out
    }

    /// Canonical index of an element.
    pub fn index(&self, ring: &RingCtx, x: &ModElem) -> u64 {
        let q = self.q;
        let mut idx = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            for k in 0..e {
                idx = idx * q + ring.digit(&x[i], k) as u64;
            }
        }
        idx
    }

    /// All elements in canonical order.
    pub fn elements<'a>(
        &'a self,
        ring: &'a RingCtx,
        bound: u64,
    ) -> Result<impl Iterator<Item = ModElem> + 'a> {
        let size = self.size_within(bound)?;
        Ok((0..size).map(move |i| self.element(ring, i)))
    }

    pub fn is_zero_elem(&self, x: &ModElem) -> bool {
        x.iter().all(RElem::is_zero)
    }

    /// Position and value of the leading digit: the lowest nonzero digit of
    /// the first nonzero coordinate.
    pub fn leading_digit(&self, ring: &RingCtx, x: &ModElem) -> Option<(usize, u32, FElem)> {
        for (i, &e) in self.exps.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let v = ring.val(&x[i], e);
            return Some((i, v, ring.digit(&x[i], v)));
        }
        None
    }

    /// Multiplication by a scalar of `O` given modulo a high power of `p`.
    pub fn scale(&self, ring: &RingCtx, c: &RElem, x: &ModElem) -> ModElem {
        self.exps
            .iter()
            .zip(x)
            .map(|(&e, xi)| ring.mul(c, xi, e))
            .collect()
    }

    pub fn add(&self, ring: &RingCtx, x: &ModElem, y: &ModElem) -> ModElem {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| ring.add(&x[i], &y[i], e))
            .collect()
    }
}

/// An `O`-linear map `⊕ O/pi^e_j -> ⊕ O/pi^e'_l` given by a matrix whose
/// `(l, j)` entry is the `l`-th coordinate of the image of the `j`-th
/// generator. Entries satisfy `v(g_lj) >= e'_l - e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMap {
    pub src: FiniteModule,
    pub dst: FiniteModule,
    pub mat: Vec<Vec<RElem>>,
}

impl ModMap {
    pub fn new(
        ring: &RingCtx,
        src: FiniteModule,
        dst: FiniteModule,
        mat: Vec<Vec<RElem>>,
    ) -> Result<Self> {
        if mat.len() != dst.rank() || mat.iter().any(|r| r.len() != src.rank()) {
            return Err(Error::Mismatch("map dimensions"));
        }
        let mut reduced = mat;
        for (l, row) in reduced.iter_mut().enumerate() {
            let el = dst.exps[l];
            for (j, g) in row.iter_mut().enumerate() {
                *g = ring.reduce(g, el);
                let ej = src.exps[j];
                if ej < el && ring.val(g, el) < el - ej {
                    return Err(Error::IllDefined(format!(
                        "entry ({l}, {j}) does not kill pi^{ej}"
                    )));
                }
            }
        }
        Ok(ModMap {
            src,
            dst,
            mat: reduced,
        })
    }

    pub fn identity(ring: &RingCtx, t: &FiniteModule) -> Self {
        let r = t.rank();
        let mat = (0..r)
            .map(|l| {
                (0..r)
                    .map(|j| if l == j { ring.one() } else { RElem::ZERO })
                    .collect()
            })
            .collect();
        ModMap {
            src: t.clone(),
            dst: t.clone(),
            mat,
        }
    }

    pub fn apply(&self, ring: &RingCtx, x: &ModElem) -> ModElem {
        self.mat
            .iter()
            .zip(self.dst.exps())
            .map(|(row, &e)| {
                let mut acc = RElem::ZERO;
                for (g, xj) in row.iter().zip(x) {
                    if g.is_zero() || xj.is_zero() {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(g, xj, e), e);
                }
                acc
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &RingCtx, other: &ModMap) -> Result<ModMap> {
        if other.dst != self.src {
            return Err(Error::Mismatch("composable modules"));
        }
        let cols: Vec<ModElem> = (0..other.src.rank())
            .map(|j| self.apply(ring, &other.apply(ring, &other.src.generator(j))))
            .collect();
        let mat = (0..self.dst.rank())
            .map(|l| cols.iter().map(|c| c[l]).collect())
            .collect();
        ModMap::new(ring, other.src.clone(), self.dst.clone(), mat)
    }

    /// Residues of the induced map on `pi^i T / pi^(i+1) T`, restricted to the
    /// summands with `e > i` (only meaningful for endomorphisms).
    pub fn graded_piece(&self, ring: &RingCtx, i: u32) -> Vec<Vec<FElem>> {
        let idx: Vec<usize> = (0..self.src.rank())
            .filter(|&j| self.src.exps[j] > i)
            .collect();
        idx.iter()
            .map(|&l| idx.iter().map(|&j| ring.residue(&self.mat[l][j])).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_order() {
        for (p, f) in [(7, 1), (3, 2)] {
            let lf = LocalField::new(p, f).unwrap();
            let t = FiniteModule::new(&lf, &[2, 1]);
            let size = t.size_within(1 << 20).unwrap();
            assert_eq!(size, lf.q().pow(3));
            for i in 0..size {
                let x = t.element(&lf.ring, i);
                assert_eq!(t.index(&lf.ring, &x), i);
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        let lf = LocalField::new(7, 1).unwrap();
        let t = FiniteModule::new(&lf, &[3, 3]);
        assert!(matches!(t.size_within(100_000), Err(Error::Bound { .. })));
        assert_eq!(t.cardinality(), BigUint::from(117_649u64));
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let lf = LocalField::new(7, 1).unwrap();
        let small = FiniteModule::new(&lf, &[1]);
        let big = FiniteModule::new(&lf, &[2]);
        let bad = ModMap::new(&lf.ring, small.clone(), big.clone(), vec![vec![RElem::from_u64(1)]]);
        assert!(matches!(bad, Err(Error::IllDefined(_))));
        let good = ModMap::new(&lf.ring, small, big, vec![vec![RElem::from_u64(7)]]).unwrap();
        assert_eq!(good.apply(&lf.ring, &vec![RElem::from_u64(3)]), vec![RElem::from_u64(21)]);
    }
}
