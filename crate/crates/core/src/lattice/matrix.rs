//! Dense matrices over `K`, stored row-major.

use crate::arith::{parse_elem, KElem, LocalField};
use crate::error::{Error, Result};

pub type KMatrix = Vec<Vec<KElem>>;

pub fn identity(lf: &LocalField, m: usize) -> KMatrix {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { lf.k_one() } else { KElem::zero() })
                .collect()
        })
        .collect()
}

/// Diagonal matrix with the given entries.
pub fn diagonal(entries: &[KElem]) -> KMatrix {
    let m = entries.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { entries[i] } else { KElem::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &KMatrix) -> KMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mul(lf: &LocalField, a: &KMatrix, b: &KMatrix) -> KMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut acc = KElem::zero();
                    for (k, x) in row.iter().enumerate() {
                        if x.is_exact_zero() || b[k][j].is_exact_zero() {
                            continue;
                        }
                        acc = lf.k_add(&acc, &lf.k_mul(x, &b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(lf: &LocalField, a: &KMatrix, x: &[KElem]) -> Vec<KElem> {
    a.iter()
        .map(|row| {
            let mut acc = KElem::zero();
            for (y, z) in row.iter().zip(x) {
                if y.is_exact_zero() || z.is_exact_zero() {
                    continue;
                }
                acc = lf.k_add(&acc, &lf.k_mul(y, z));
            }
            acc
        })
        .collect()
}

/// Inverse by Gauss–Jordan elimination. In each column the pivot is an entry
/// of minimal valuation, ties broken by the smallest row index.
pub fn inverse(lf: &LocalField, a: &KMatrix) -> Result<KMatrix> {
    let m = a.len();
    let mut w: KMatrix = a.clone();
    let mut inv = identity(lf, m);
    for col in 0..m {
        let piv = (col..m)
            .filter_map(|r| w[r][col].valuation().map(|v| (v, r)))
            .min()
            .map(|(_, r)| r)
            .ok_or(Error::Singular)?;
        w.swap(piv, col);
        inv.swap(piv, col);
        let s = lf.k_inv(&w[col][col])?;
        for c in 0..m {
            w[col][c] = lf.k_mul(&w[col][c], &s);
            inv[col][c] = lf.k_mul(&inv[col][c], &s);
        }
        for r in 0..m {
            if r == col || w[r][col].is_zero() {
                continue;
            }
            let factor = w[r][col];
            for c in 0..m {
                let t = lf.k_mul(&factor, &w[col][c]);
                w[r][c] = lf.k_sub(&w[r][c], &t);
                let t = lf.k_mul(&factor, &inv[col][c]);
                inv[r][c] = lf.k_sub(&inv[r][c], &t);
            }
            w[r][col] = KElem::zero();
        }
    }
    Ok(inv)
}

/// Entrywise equality up to the available precision.
pub fn approx_eq(lf: &LocalField, a: &KMatrix, b: &KMatrix) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(ra, rb)| {
            ra.len() == rb.len() && ra.iter().zip(rb).all(|(x, y)| lf.k_approx_eq(x, y))
        })
}

/// Whether every entry lies in `O`.
pub fn is_integral(a: &KMatrix) -> Result<bool> {
    for x in a.iter().flatten() {
        match x.valuation() {
            Some(v) if v < 0 => return Ok(false),
            Some(_) => {}
            None if x.raw_val() < 0 => {
                return Err(Error::Precision(format!(
                    "entry known only modulo pi^{}",
                    x.raw_val()
                )))
            }
            None => {}
        }
    }
    Ok(true)
}

pub fn parse_matrix(lf: &LocalField, rows: &[Vec<String>], prec: u32) -> Result<KMatrix> {
    let m = rows.len();
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse("expected a non-empty square matrix".into()));
    }
    rows.iter()
        .map(|r| r.iter().map(|s| parse_elem(lf, s, prec)).collect())
        .collect()
}

pub fn format_matrix(lf: &LocalField, a: &KMatrix) -> Vec<Vec<String>> {
    a.iter()
        .map(|r| r.iter().map(|x| lf.format(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q7() -> LocalField {
        LocalField::new(7, 1).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let lf = q7();
        let rows = vec![
            vec!["pi".to_string(), "3".to_string()],
            vec!["1/7".to_string(), "pi^2*2".to_string()],
        ];
        let a = parse_matrix(&lf, &rows, 12).unwrap();
        let ai = inverse(&lf, &a).unwrap();
        assert!(approx_eq(&lf, &mul(&lf, &a, &ai), &identity(&lf, 2)));
        assert!(approx_eq(&lf, &mul(&lf, &ai, &a), &identity(&lf, 2)));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let lf = q7();
        let rows = vec![
            vec!["1".to_string(), "2".to_string()],
            vec!["2".to_string(), "4".to_string()],
        ];
        let a = parse_matrix(&lf, &rows, 10).unwrap();
        assert_eq!(inverse(&lf, &a), Err(Error::Singular));
    }
}
