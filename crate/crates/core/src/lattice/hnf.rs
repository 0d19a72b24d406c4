//! Full-rank `O`-lattices in `K^m` in canonical Hermite normal form.

use serde::{Deserialize, Serialize};

use super::matrix::{self, KMatrix};
use crate::arith::{KElem, LocalField};
use crate::error::{Error, Result};

/// A full-rank lattice `H · O^m`, where `H` is the canonical upper-triangular
/// basis: diagonal entries are exactly `pi^k_i`, entries below the diagonal
/// vanish and the entry in row `i` above the diagonal is the canonical
/// representative of its class modulo `pi^k_i O`.
///
/// Two bases span the same lattice iff their canonical forms are equal, so
/// `Eq` and `Hash` compare lattices as sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    h: KMatrix,
}

/// Serialized form: the canonical basis as a matrix of element strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub basis: Vec<Vec<String>>,
}

impl Lattice {
    /// The standard lattice `O^m`.
    pub fn standard(lf: &LocalField, m: usize) -> Self {
        Lattice {
            h: matrix::identity(lf, m),
        }
    }

    /// The lattice spanned by the columns of `basis` (square, invertible).
    pub fn from_basis(lf: &LocalField, basis: &KMatrix) -> Result<Self> {
        let m = basis.len();
        if m == 0 || basis.iter().any(|r| r.len() != m) {
            return Err(Error::Invalid("a lattice basis must be a square matrix".into()));
        }
        Ok(Lattice {
            h: hermite(lf, basis.clone())?,
        })
    }

    /// The lattice spanned by the columns of an `m × k` generator matrix of
    /// full row rank.
    pub fn spanned_by(lf: &LocalField, gens: &KMatrix) -> Result<Self> {
        let m = gens.len();
        if m == 0 || gens.iter().any(|r| r.len() < m || r.len() != gens[0].len()) {
            return Err(Error::Invalid("generators must form an m × k matrix with k >= m".into()));
        }
        Ok(Lattice {
            h: hermite(lf, gens.clone())?,
        })
    }

    /// `diag(pi^k_1, ..., pi^k_m) · O^m`.
    pub fn diagonal(lf: &LocalField, exps: &[i64]) -> Self {
        let d: Vec<KElem> = exps.iter().map(|&k| lf.k_pi_pow(k)).collect();
        Lattice {
            h: matrix::diagonal(&d),
        }
    }

    pub fn rank(&self) -> usize {
        self.h.len()
    }

    /// The canonical basis; its columns span the lattice.
    pub fn basis(&self) -> &KMatrix {
        &self.h
    }

    /// Exponents of the diagonal of the canonical basis.
    pub fn diagonal_exps(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.h[i][i].raw_val()).collect()
    }

    /// Inverse of the canonical basis.
    pub fn basis_inverse(&self, lf: &LocalField) -> Result<KMatrix> {
        matrix::inverse(lf, &self.h)
    }

    /// Dual lattice `{y : y^T x ∈ O for all x}` under the standard pairing.
    pub fn dual(&self, lf: &LocalField) -> Result<Self> {
        let inv = self.basis_inverse(lf)?;
        Ok(Lattice {
            h: hermite(lf, matrix::transpose(&inv))?,
        })
    }

    pub fn to_json(&self, lf: &LocalField) -> LatticeJson {
        LatticeJson {
            basis: matrix::format_matrix(lf, &self.h),
        }
    }

    pub fn from_json(lf: &LocalField, json: &LatticeJson, prec: u32) -> Result<Self> {
        Self::from_basis(lf, &matrix::parse_matrix(lf, &json.basis, prec)?)
    }
}

fn check_rank(a: &Lattice, b: &Lattice) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::Mismatch("lattice ranks"));
    }
    Ok(())
}

/// `A + B`.
pub fn lat_sum(lf: &LocalField, a: &Lattice, b: &Lattice) -> Result<Lattice> {
    check_rank(a, b)?;
    let gens: KMatrix = a
        .h
        .iter()
        .zip(&b.h)
        .map(|(ra, rb)| ra.iter().chain(rb).copied().collect())
        .collect();
    Ok(Lattice {
        h: hermite(lf, gens)?,
    })
}

/// `A ∩ B = (A^* + B^*)^*`.
pub fn lat_intersect(lf: &LocalField, a: &Lattice, b: &Lattice) -> Result<Lattice> {
    check_rank(a, b)?;
    if a == b {
        return Ok(a.clone());
    }
    lat_sum(lf, &a.dual(lf)?, &b.dual(lf)?)?.dual(lf)
}

/// Whether the vector `x` lies in `A`.
pub fn lat_contains(lf: &LocalField, a: &Lattice, x: &[KElem]) -> Result<bool> {
    if x.len() != a.rank() {
        return Err(Error::Mismatch("vector length"));
    }
    let y = matrix::mul_vec(lf, &a.basis_inverse(lf)?, x);
    matrix::is_integral(&vec![y])
}

/// Whether `B ⊆ A`.
pub fn lat_includes(lf: &LocalField, a: &Lattice, b: &Lattice) -> Result<bool> {
    check_rank(a, b)?;
    let t = matrix::mul(lf, &a.basis_inverse(lf)?, &b.h);
    matrix::is_integral(&t)
}

/// `f(A)` for an invertible `f`.
pub fn lat_apply(lf: &LocalField, f: &KMatrix, a: &Lattice) -> Result<Lattice> {
    if f.len() != a.rank() || f.iter().any(|r| r.len() != a.rank()) {
        return Err(Error::Mismatch("matrix size"));
    }
    matrix::inverse(lf, f)?;
    Lattice::from_basis(lf, &matrix::mul(lf, f, &a.h))
}

/// Canonical Hermite form of the lattice spanned by the columns of `a`
/// (`m` rows, at least `m` columns, full row rank).
///
/// Rows are cleared bottom-up; the pivot of a row is a remaining column of
/// minimal valuation, ties broken by the smallest column index.
pub(crate) fn hermite(lf: &LocalField, mut a: KMatrix) -> Result<KMatrix> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    let mut active: Vec<usize> = (0..k).collect();
    let mut pivots = vec![0usize; m];
    let mut exps = vec![0i64; m];
    for i in (0..m).rev() {
        let (v, best) = active
            .iter()
            .filter_map(|&c| a[i][c].valuation().map(|v| (v, c)))
            .min()
            .ok_or(Error::Singular)?;
        let s = lf.k_inv(&lf.k_unit_part(&a[i][best])?)?;
        for row in a.iter_mut().take(i) {
            row[best] = lf.k_mul(&row[best], &s);
        }
        a[i][best] = lf.k_pi_pow(v);
        for &c in &active {
            if c == best {
                continue;
            }
            if a[i][c].is_zero() {
                a[i][c] = KElem::zero();
                continue;
            }
            let factor = lf.k_div(&a[i][c], &a[i][best])?;
            for row in a.iter_mut().take(i) {
                let t = lf.k_mul(&factor, &row[best]);
                row[c] = lf.k_sub(&row[c], &t);
            }
            a[i][c] = KElem::zero();
        }
        active.retain(|&c| c != best);
        pivots[i] = best;
        exps[i] = v;
    }
    let mut h: KMatrix = (0..m)
        .map(|r| {
            (0..m)
                .map(|j| if r > j { KElem::zero() } else { a[r][pivots[j]] })
                .collect()
        })
        .collect();
    for j in 0..m {
        for i in (0..j).rev() {
            let x = h[i][j];
            let rep = lf.k_canonical_mod(&x, exps[i])?;
            let diff = lf.k_sub(&x, &rep);
            if !diff.is_zero() {
                let c = lf.k_div(&diff, &h[i][i])?;
                for r in 0..i {
                    let t = lf.k_mul(&c, &h[r][i]);
                    h[r][j] = lf.k_sub(&h[r][j], &t);
                }
            }
            h[i][j] = rep;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_elem;

    fn q7() -> LocalField {
        LocalField::new(7, 1).unwrap()
    }

    fn mat(lf: &LocalField, rows: &[&[&str]]) -> KMatrix {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_elem(lf, s, lf.nmax()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn standard_lattices() {
        let lf = q7();
        let o2 = Lattice::standard(&lf, 2);
        assert_eq!(lat_sum(&lf, &o2, &o2).unwrap(), o2);
        assert_eq!(lat_intersect(&lf, &o2, &o2).unwrap(), o2);
    }

    #[test]
    fn nested_ideals() {
        let lf = q7();
        let o = Lattice::standard(&lf, 1);
        let b = Lattice::diagonal(&lf, &[1]);
        assert_eq!(lat_sum(&lf, &o, &b).unwrap(), o);
        assert_eq!(lat_intersect(&lf, &o, &b).unwrap(), b);
    }

    #[test]
    fn diagonal_pair() {
        let lf = q7();
        let a = Lattice::standard(&lf, 2);
        let b = Lattice::diagonal(&lf, &[1, -1]);
        assert_eq!(lat_intersect(&lf, &a, &b).unwrap(), Lattice::diagonal(&lf, &[1, 0]));
        assert_eq!(lat_sum(&lf, &a, &b).unwrap(), Lattice::diagonal(&lf, &[0, -1]));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let lf = q7();
        let b1 = mat(&lf, &[&["7", "7"], &["0", "7"]]);
        let b2 = mat(&lf, &[&["7", "14"], &["0", "7"]]);
        let b3 = mat(&lf, &[&["7", "0"], &["0", "49"]]);
        let l1 = Lattice::from_basis(&lf, &b1).unwrap();
        let l2 = Lattice::from_basis(&lf, &b2).unwrap();
        let l3 = Lattice::from_basis(&lf, &b3).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1, Lattice::diagonal(&lf, &[1, 1]));
        assert_ne!(l1, l3);
        let mixed = mat(&lf, &[&["3", "1/7"], &["pi^2", "5"]]);
        let l = Lattice::from_basis(&lf, &mixed).unwrap();
        let unimodular = mat(&lf, &[&["1", "2"], &["3", "4"]]);
        let moved = matrix::mul(&lf, &mixed, &unimodular);
        assert_eq!(Lattice::from_basis(&lf, &moved).unwrap(), l);
    }

    #[test]
    fn membership() {
        let lf = q7();
        let b = Lattice::diagonal(&lf, &[1, 0]);
        let x = vec![lf.k_from_int(7, 10), lf.k_from_int(3, 10)];
        let y = vec![lf.k_from_int(1, 10), lf.k_from_int(3, 10)];
        assert!(lat_contains(&lf, &b, &x).unwrap());
        assert!(!lat_contains(&lf, &b, &y).unwrap());
    }

    #[test]
    fn unimodular_maps_fix_the_standard_lattice() {
        let lf = q7();
        let f = mat(&lf, &[&["2", "1"], &["1", "1"]]);
        let o2 = Lattice::standard(&lf, 2);
        assert_eq!(lat_apply(&lf, &f, &o2).unwrap(), o2);
        assert_eq!(lat_apply(&lf, &matrix::identity(&lf, 2), &o2).unwrap(), o2);
    }

    #[test]
    fn json_round_trip() {
        let lf = q7();
        let b = mat(&lf, &[&["3", "1/7"], &["pi^2", "5"]]);
        let l = Lattice::from_basis(&lf, &b).unwrap();
        let json = serde_json::to_string(&l.to_json(&lf)).unwrap();
        let back: LatticeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Lattice::from_json(&lf, &back, lf.nmax()).unwrap(), l);
    }
}
