//! Smith normal form over `O` with a tracked left transform.

use super::matrix::{identity, KMatrix};
use crate::arith::{KElem, LocalField};
use crate::error::{Error, Result};

/// `U · M · V = diag(pi^e_1, ..., pi^e_m)` with `U, V ∈ GL_m(O)`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Nondecreasing exponents of the invariant factors.
    pub exps: Vec<u32>,
    pub u: KMatrix,
    pub u_inv: KMatrix,
}

/// Smith form of an integral invertible matrix. The pivot at each step is an
/// entry of minimal valuation in the remaining block, ties broken by row and
/// then by column index.
pub fn smith(lf: &LocalField, m: &KMatrix) -> Result<Smith> {
    let r = m.len();
    let mut a = m.clone();
    let mut u = identity(lf, r);
    let mut u_inv = identity(lf, r);
    let mut exps = Vec::with_capacity(r);
    for k in 0..r {
        let (v, pr, pc) = (k..r)
            .flat_map(|i| (k..r).map(move |j| (i, j)))
            .filter_map(|(i, j)| a[i][j].valuation().map(|v| (v, i, j)))
            .min()
            .ok_or(Error::Singular)?;
        if v < 0 {
            return Err(Error::NotContained("matrix is not integral".into()));
        }
        if pr != k {
            a.swap(pr, k);
            u.swap(pr, k);
            for row in u_inv.iter_mut() {
                row.swap(pr, k);
            }
        }
        if pc != k {
            for row in a.iter_mut() {
                row.swap(pc, k);
            }
        }
        let unit = lf.k_unit_part(&a[k][k])?;
        let s = lf.k_inv(&unit)?;
        for j in 0..r {
            a[k][j] = lf.k_mul(&a[k][j], &s);
            u[k][j] = lf.k_mul(&u[k][j], &s);
        }
        for row in u_inv.iter_mut() {
            row[k] = lf.k_mul(&row[k], &unit);
        }
        a[k][k] = lf.k_pi_pow(v);
        for b in k + 1..r {
            if a[b][k].is_zero() {
                a[b][k] = KElem::zero();
                continue;
            }
            let c = lf.k_div(&a[b][k], &a[k][k])?;
            for j in k + 1..r {
                let t = lf.k_mul(&c, &a[k][j]);
                a[b][j] = lf.k_sub(&a[b][j], &t);
            }
            for j in 0..r {
                let t = lf.k_mul(&c, &u[k][j]);
                u[b][j] = lf.k_sub(&u[b][j], &t);
            }
            for row in u_inv.iter_mut() {
                let t = lf.k_mul(&c, &row[b]);
                row[k] = lf.k_add(&row[k], &t);
            }
            a[b][k] = KElem::zero();
        }
        for j in k + 1..r {
            a[k][j] = KElem::zero();
        }
        exps.push(v as u32);
    }
    Ok(Smith { exps, u, u_inv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_elem;
    use crate::lattice::matrix::{approx_eq, mul};

    fn mat(lf: &LocalField, rows: &[&[&str]]) -> KMatrix {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_elem(lf, s, lf.nmax()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn invariant_factors() {
        let lf = LocalField::new(7, 1).unwrap();
        let cases: [(&[&[&str]], Vec<u32>); 3] = [
            (&[&["7", "7"], &["0", "7"]], vec![1, 1]),
            (&[&["7", "0"], &["0", "49"]], vec![1, 2]),
            (&[&["49", "1"], &["0", "7"]], vec![0, 3]),
        ];
        for (rows, exps) in cases {
            let m = mat(&lf, rows);
            let s = smith(&lf, &m).unwrap();
            assert_eq!(s.exps, exps);
            assert!(approx_eq(&lf, &mul(&lf, &s.u, &s.u_inv), &identity(&lf, 2)));
        }
    }
}
