//! Norms `F_{q^d} -> F_q` realized as determinants of multiplication maps.

use super::field::{pow_mod, FElem, FieldCtx};
use crate::error::{Error, Result};

/// A tower `F_q ⊂ F_{q^d}` with an explicit `F_q`-basis `1, b, ..., b^{d-1}` of
/// the top field, `b` the canonical generator of `F_{q^d}^×`.
#[derive(Debug, Clone)]
pub struct Tower {
    pub small: FieldCtx,
    pub big: FieldCtx,
    d: u32,
    /// Image of the small field's polynomial variable.
    theta: FElem,
    embed: Vec<FElem>,
    /// Inverse of the F_p-matrix whose columns are `theta^i b^k`.
    coord_inv: Vec<Vec<u64>>,
}

impl Tower {
    pub fn new(p: u64, f: u32, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDegree(d));
        }
        let small = FieldCtx::new(p, f)?;
        let big = FieldCtx::new(p, f * d)?;
        let q = small.q();
        let poly = small.defining_poly();
        let eval = |y: FElem| {
            let mut acc: FElem = 0;
            for &c in poly.iter().rev() {
                acc = big.add(big.mul(acc, y), c as FElem);
            }
            acc
        };
        let theta = big
            .elements()
            .find(|&y| big.pow(y, q) == y && eval(y) == 0)
            .ok_or_else(|| Error::Invalid("no embedding of the residue field".into()))?;
        let embed: Vec<FElem> = small
            .elements()
            .map(|a| {
                let mut acc: FElem = 0;
                for &c in small.coeffs(a).iter().rev() {
                    acc = big.add(big.mul(acc, theta), c as FElem);
                }
                acc
            })
            .collect();
        let b = big.generator();
        let fu = f as usize;
        let du = d as usize;
        let dim = fu * du;
        let mut cols = Vec::with_capacity(dim);
        for k in 0..du {
            for i in 0..fu {
                let e = big.mul(big.pow(theta, i as u64), big.pow(b, k as u64));
                cols.push(big.coeffs(e));
            }
        }
        let mat: Vec<Vec<u64>> = (0..dim).map(|r| (0..dim).map(|c| cols[c][r]).collect()).collect();
        let coord_inv = invert_mod_p(&mat, p)
            .ok_or_else(|| Error::Invalid("powers of the generator are not a basis".into()))?;
        Ok(Tower {
            small,
            big,
            d,
            theta,
            embed,
            coord_inv,
        })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn theta(&self) -> FElem {
        self.theta
    }

    pub fn embed(&self, a: FElem) -> FElem {
        self.embed[a as usize]
    }

    pub fn restrict(&self, y: FElem) -> Option<FElem> {
        self.embed.iter().position(|&e| e == y).map(|i| i as FElem)
    }

    /// Coordinates of `y` in the basis `b^k`, as small-field elements.
    pub fn coordinates(&self, y: FElem) -> Vec<FElem> {
        let p = self.small.p();
        let v = self.big.coeffs(y);
        let sol: Vec<u64> = self
            .coord_inv
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| a * b % p).sum::<u64>() % p)
            .collect();
        let fu = self.small.degree() as usize;
        sol.chunks(fu).map(|c| self.small.from_coeffs(c)).collect()
    }

    /// Determinant over `F_q` of multiplication by `x` on `F_{q^d}`.
    pub fn mult_det(&self, x: FElem) -> FElem {
        let b = self.big.generator();
        let du = self.d as usize;
        let columns: Vec<Vec<FElem>> = (0..du)
            .map(|k| self.coordinates(self.big.mul(x, self.big.pow(b, k as u64))))
            .collect();
        let mat: Vec<Vec<FElem>> = (0..du).map(|r| (0..du).map(|c| columns[c][r]).collect()).collect();
        self.small.det(&mat)
    }

    /// `x^((q^d - 1)/(q - 1))`, restricted to the small field.
    pub fn norm(&self, x: FElem) -> FElem {
        let e = (self.big.q() - 1) / (self.small.q() - 1);
        self.restrict(self.big.pow(x, e))
            .expect("norms lie in the base field")
    }
}

/// Determinant of multiplication by `x ∈ F_{q^d}` over `F_q`.
pub fn norm_check(p: u64, f: u32, d: u32, x: FElem) -> Result<FElem> {
    let t = Tower::new(p, f, d)?;
    if x as u64 >= t.big.q() {
        return Err(Error::Invalid(format!("{x} is not an element of F_{}", t.big.q())));
    }
    Ok(t.mult_det(x))
}

fn invert_mod_p(mat: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u64>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let inv = |x: u64| pow_mod(x, p - 2, p);
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(piv, col);
        let s = inv(a[col][col]);
        for c in 0..2 * n {
            a[col][c] = a[col][c] * s % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..2 * n {
                    a[r][c] = (a[r][c] + p * p - factor * a[col][c]) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
