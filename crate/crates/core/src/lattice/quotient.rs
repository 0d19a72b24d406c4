//! Quotients `A / C` of nested lattices and the maps they inherit.

use num_bigint::BigInt;

use super::hnf::{lat_intersect, Lattice};
use super::matrix::{self, KMatrix};
use super::module::{FiniteModule, ModElem, ModMap};
use super::snf::smith;
use crate::arith::{KElem, LocalField};
use crate::error::{Error, Result};

/// `A / C ≅ ⊕ O/pi^e_i` for `C ⊆ A`, with explicit projection and lift.
///
/// If `H_A^{-1} H_C` has Smith form `U M V = D`, the projection sends
/// `a ∈ A` to `U H_A^{-1} a mod pi^e` and the lift sends the `i`-th generator
/// to the `i`-th column of `H_A U^{-1}`. Because the bases are canonical,
/// the model depends only on `A` and `C` as sets.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub top: Lattice,
    pub bottom: Lattice,
    pub module: FiniteModule,
    /// `r × m` matrix over `K`.
    pub proj: KMatrix,
    /// `m × r` matrix over `K`.
    pub lift: KMatrix,
}

/// The quotient `A / C`; fails unless `C ⊆ A`.
pub fn quotient_struct(lf: &LocalField, a: &Lattice, c: &Lattice) -> Result<Quotient> {
    if a.rank() != c.rank() {
        return Err(Error::Mismatch("lattice ranks"));
    }
    let ha_inv = a.basis_inverse(lf)?;
    let m = matrix::mul(lf, &ha_inv, c.basis());
    if !matrix::is_integral(&m)? {
        return Err(Error::NotContained(
            "the second lattice is not contained in the first".into(),
        ));
    }
    let s = smith(lf, &m)?;
    let keep: Vec<usize> = (0..s.exps.len()).filter(|&i| s.exps[i] > 0).collect();
    let exps: Vec<u32> = keep.iter().map(|&i| s.exps[i]).collect();
    let u_rows: KMatrix = keep.iter().map(|&i| s.u[i].clone()).collect();
    let proj = matrix::mul(lf, &u_rows, &ha_inv);
    let u_inv_cols: KMatrix = s
        .u_inv
        .iter()
        .map(|row| keep.iter().map(|&i| row[i]).collect())
        .collect();
    let lift = matrix::mul(lf, a.basis(), &u_inv_cols);
    Ok(Quotient {
        top: a.clone(),
        bottom: c.clone(),
        module: FiniteModule::new(lf, &exps),
        proj,
        lift,
    })
}

impl Quotient {
    /// Image of a vector of the top lattice.
    pub fn project(&self, lf: &LocalField, x: &[KElem]) -> Result<ModElem> {
        let y = matrix::mul_vec(lf, &self.proj, x);
        y.iter()
            .zip(self.module.exps())
            .map(|(yi, &e)| lf.k_to_ring(yi, e))
            .collect()
    }

    /// A preimage in the top lattice of a module element.
    pub fn lift_elem(&self, lf: &LocalField, x: &ModElem) -> Vec<KElem> {
        let coords: Vec<KElem> = x
            .iter()
            .map(|xi| lf.k_from_ring(xi, lf.nmax()))
            .collect();
        matrix::mul_vec(lf, &self.lift, &coords)
    }
}

/// The map `A/C -> A'/C'` induced by `f` with `f(A) ⊆ A'` and `f(C) ⊆ C'`.
pub fn induced_map(lf: &LocalField, src: &Quotient, dst: &Quotient, f: &KMatrix) -> Result<ModMap> {
    let g = matrix::mul(lf, &dst.proj, &matrix::mul(lf, f, &src.lift));
    let mut mat = Vec::with_capacity(dst.module.rank());
    for (l, row) in g.iter().enumerate() {
        let el = dst.module.exps()[l];
        let mut out = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let ej = src.module.exps()[j];
            if let Some(v) = x.valuation() {
                if v < el as i64 - ej as i64 {
                    return Err(Error::IllDefined(format!(
                        "the map does not send the source into the target (entry ({l}, {j}))"
                    )));
                }
            }
            out.push(lf.k_to_ring(x, el).map_err(|e| match e {
                Error::NotContained(s) => Error::IllDefined(s),
                other => other,
            })?);
        }
        mat.push(out);
    }
    ModMap::new(&lf.ring, src.module.clone(), dst.module.clone(), mat)
}

/// The map `A/C -> A'/C'` induced by the identity, for `A ⊆ A'`, `C ⊆ C'`.
pub fn inclusion_map(lf: &LocalField, src: &Quotient, dst: &Quotient) -> Result<ModMap> {
    induced_map(lf, src, dst, &matrix::identity(lf, src.top.rank()))
}

/// Lengths of `A / A∩B` and `B / A∩B`.
pub fn rel_lengths(lf: &LocalField, a: &Lattice, b: &Lattice) -> Result<(u32, u32)> {
    let ab = lat_intersect(lf, a, b)?;
    Ok((
        quotient_struct(lf, a, &ab)?.module.length(),
        quotient_struct(lf, b, &ab)?.module.length(),
    ))
}

/// Number of `mu_n`-orbits of a module of length `d`: `(q^d - 1)/n`.
pub fn orbit_count(q: u64, d: u32, n: u64) -> BigInt {
    (BigInt::from(q).pow(d) - 1) / BigInt::from(n)
}

/// Relative dimension `[A|B] = dim(A/A∩B) - dim(B/A∩B)`, where `dim` counts
/// `mu_n`-orbits.
pub fn rel_dim(lf: &LocalField, a: &Lattice, b: &Lattice, n: u64) -> Result<BigInt> {
    let (d1, d2) = rel_lengths(lf, a, b)?;
    Ok(orbit_count(lf.q(), d1, n) - orbit_count(lf.q(), d2, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_elem;
    use crate::lattice::hnf::lat_sum;

    fn q7() -> LocalField {
        LocalField::new(7, 1).unwrap()
    }

    fn mat(lf: &LocalField, rows: &[&[&str]]) -> KMatrix {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_elem(lf, s, lf.nmax()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn cyclic_quotient() {
        let lf = q7();
        let q = quotient_struct(&lf, &Lattice::standard(&lf, 1), &Lattice::diagonal(&lf, &[1])).unwrap();
        assert_eq!(q.module.exps(), &[1]);
        assert_eq!(q.module.size_within(1000).unwrap(), 7);
    }

    #[test]
    fn diagonal_quotient() {
        let lf = q7();
        let q = quotient_struct(&lf, &Lattice::standard(&lf, 2), &Lattice::diagonal(&lf, &[1, 2])).unwrap();
        assert_eq!(q.module.exps(), &[1, 2]);
        assert_eq!(q.module.size_within(1000).unwrap(), 343);
    }

    #[test]
    fn non_diagonal_quotient() {
        let lf = q7();
        let c = Lattice::from_basis(&lf, &mat(&lf, &[&["7", "7"], &["0", "7"]])).unwrap();
        let q = quotient_struct(&lf, &Lattice::standard(&lf, 2), &c).unwrap();
        assert_eq!(q.module.exps(), &[1, 1]);
    }

    #[test]
    fn containment_is_checked() {
        let lf = q7();
        let r = quotient_struct(&lf, &Lattice::diagonal(&lf, &[1]), &Lattice::standard(&lf, 1));
        assert!(matches!(r, Err(Error::NotContained(_))));
    }

    #[test]
    fn projection_kills_the_bottom_lattice() {
        let lf = q7();
        let a = Lattice::from_basis(&lf, &mat(&lf, &[&["3", "1/7"], &["pi^2", "5"]])).unwrap();
        let c = Lattice::from_basis(&lf, &mat(&lf, &[&["49", "7"], &["0", "pi^3*2"]])).unwrap();
        let c = lat_intersect(&lf, &a, &c).unwrap();
        let q = quotient_struct(&lf, &a, &c).unwrap();
        for j in 0..2 {
            let col: Vec<KElem> = c.basis().iter().map(|r| r[j]).collect();
            assert!(q.module.is_zero_elem(&q.project(&lf, &col).unwrap()));
        }
        // lift followed by projection is the identity
        for i in 0..q.module.size_within(1 << 20).unwrap().min(500) {
            let x = q.module.element(&lf.ring, i);
            let back = q.project(&lf, &q.lift_elem(&lf, &x)).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn relative_dimension() {
        let lf = q7();
        let o = Lattice::standard(&lf, 1);
        let p = Lattice::diagonal(&lf, &[1]);
        assert_eq!(rel_dim(&lf, &o, &p, 2).unwrap(), BigInt::from(3));
        assert_eq!(rel_dim(&lf, &p, &o, 2).unwrap(), BigInt::from(-3));
        assert_eq!(rel_dim(&lf, &o, &o, 2).unwrap(), BigInt::from(0));
    }

    #[test]
    fn second_isomorphism_theorem() {
        let lf = q7();
        let a = Lattice::from_basis(&lf, &mat(&lf, &[&["3", "1/7"], &["pi^2", "5"]])).unwrap();
        let b = Lattice::diagonal(&lf, &[1, -1]);
        let s = lat_sum(&lf, &a, &b).unwrap();
        let i = lat_intersect(&lf, &a, &b).unwrap();
        let l1 = quotient_struct(&lf, &s, &a).unwrap().module.length();
        let l2 = quotient_struct(&lf, &b, &i).unwrap().module.length();
        assert_eq!(l1, l2);
    }
}
