//! The central extension `1 -> mu_n -> GL~_m(K) -> GL_m(K) -> 1` as a
//! normalized 2-cocycle relative to the canonical base points of
//! `(V+|f V+)`, with `V+ = O^m`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::reldet::{kappa, rho};
use crate::arith::{KElem, MuScalar};
use crate::error::{Error, Result};
use crate::lattice::{lat_apply, matrix, rel_dim, KMatrix, Lattice};
use crate::torsor::DetCtx;

fn standard(dc: &DetCtx, f: &KMatrix) -> Lattice {
    Lattice::standard(dc.lf(), f.len())
}

/// `c(f, g)`: the scalar of
/// `iota_g^f : (V+|fV+) ⊗ (V+|gV+) -> (V+|fV+) ⊗ (fV+|fgV+) -> (V+|fgV+)`,
/// the first arrow `id ⊗ rho_f`, the second the contraction.
pub fn cocycle(dc: &DetCtx, f: &KMatrix, g: &KMatrix) -> Result<MuScalar> {
    let lf = dc.lf();
    if f.len() != g.len() {
        return Err(Error::Mismatch("matrix sizes"));
    }
    let v = standard(dc, f);
    let gv = lat_apply(lf, g, &v)?;
    let fv = lat_apply(lf, f, &v)?;
    let fg = matrix::mul(lf, f, g);
    let fgv = lat_apply(lf, &fg, &v)?;
    let r = rho(dc, f, &v, &gv)?;
    let k = kappa(dc, &v, &fv, &fgv)?;
    Ok(r.mul(&k))
}

/// `(f, s)` with `s = zeta^exp · base(V+|fV+)`.
#[derive(Debug, Clone)]
pub struct ExtElem {
    pub f: KMatrix,
    pub s: MuScalar,
}

impl ExtElem {
    pub fn identity(dc: &DetCtx, m: usize) -> Self {
        ExtElem {
            f: matrix::identity(dc.lf(), m),
            s: MuScalar::one(dc.n()),
        }
    }

    /// The canonical lift `(f, base)`.
    pub fn lift(dc: &DetCtx, f: &KMatrix) -> Self {
        ExtElem {
            f: f.clone(),
            s: MuScalar::one(dc.n()),
        }
    }

    /// The central element `(Id, mu)`.
    pub fn central(dc: &DetCtx, m: usize, mu: MuScalar) -> Self {
        ExtElem {
            f: matrix::identity(dc.lf(), m),
            s: mu,
        }
    }

    pub fn approx_eq(&self, dc: &DetCtx, other: &ExtElem) -> bool {
        self.s == other.s && matrix::approx_eq(dc.lf(), &self.f, &other.f)
    }
}

/// `(f, s) · (g, t) = (fg, iota_g^f(s ⊗ t))`.
pub fn ext_mul(dc: &DetCtx, x: &ExtElem, y: &ExtElem) -> Result<ExtElem> {
    let c = cocycle(dc, &x.f, &y.f)?;
    Ok(ExtElem {
        f: matrix::mul(dc.lf(), &x.f, &y.f),
        s: x.s.mul(&y.s).mul(&c),
    })
}

pub fn ext_inverse(dc: &DetCtx, x: &ExtElem) -> Result<ExtElem> {
    let fi = matrix::inverse(dc.lf(), &x.f)?;
    let c = cocycle(dc, &x.f, &fi)?;
    Ok(ExtElem {
        f: fi,
        s: x.s.mul(&c).inv(),
    })
}

/// `{f, g} = [f~, g~] ∈ mu_n` for commuting `f, g`: `c(f, g) / c(g, f)`.
pub fn comm_symbol(dc: &DetCtx, f: &KMatrix, g: &KMatrix) -> Result<MuScalar> {
    let lf = dc.lf();
    if f.len() != g.len() {
        return Err(Error::Mismatch("matrix sizes"));
    }
    if !matrix::approx_eq(lf, &matrix::mul(lf, f, g), &matrix::mul(lf, g, f)) {
        return Err(Error::NotCommuting);
    }
    Ok(cocycle(dc, f, g)?.div(&cocycle(dc, g, f)?))
}

/// `{a, b}` for `a, b ∈ K^× = GL_1(K)`.
pub fn comm_symbol_scalar(dc: &DetCtx, a: &KElem, b: &KElem) -> Result<MuScalar> {
    comm_symbol(dc, &vec![vec![*a]], &vec![vec![*b]])
}

/// `[O|aO]` as an exact integer.
pub fn rel_dim_scalar(dc: &DetCtx, a: &KElem) -> Result<BigInt> {
    let lf = dc.lf();
    let o = Lattice::standard(lf, 1);
    let ao = lat_apply(lf, &vec![vec![*a]], &o)?;
    rel_dim(lf, &o, &ao, dc.n())
}

/// `<a, b> = (-1)^([O|aO][O|bO]) {a, b}`.
///
/// For odd `n` the sign is read through the `(q-1)/n`-th power map, where
/// `-1` goes to `1`; the exponent is then always even for odd `q` anyway.
pub fn corrected_symbol(dc: &DetCtx, a: &KElem, b: &KElem) -> Result<MuScalar> {
    let sym = comm_symbol_scalar(dc, a, b)?;
    let odd = (rel_dim_scalar(dc, a)? * rel_dim_scalar(dc, b)?).is_odd();
    Ok(match (odd, MuScalar::minus_one(dc.n())) {
        (true, Some(m)) => sym.mul(&m),
        _ => sym,
    })
}
