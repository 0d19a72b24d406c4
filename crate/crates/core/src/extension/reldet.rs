//! Relative determinant lines `(A|B) = det(A/A∩B) ⊗ det(B/A∩B)^∨`,
//! functoriality `rho_f` and the contraction `kappa`.

use super::super::torsor::{line_dual, line_tensor, DetCtx, MuLine};
use crate::arith::MuScalar;
use crate::error::Result;
use crate::lattice::{
    inclusion_map, induced_map, lat_apply, lat_includes, lat_intersect, quotient_struct, KMatrix,
    Lattice, Quotient,
};

/// `(A|B)`, based at `base det(A/A∩B) ⊗ dual-base det(B/A∩B)`.
#[derive(Debug, Clone)]
pub struct RelDet {
    pub a: Lattice,
    pub b: Lattice,
    pub meet: Lattice,
    /// `A / A∩B`.
    pub upper: Quotient,
    /// `B / A∩B`.
    pub lower: Quotient,
    pub line: MuLine,
}

pub fn reldet(dc: &DetCtx, a: &Lattice, b: &Lattice) -> Result<RelDet> {
    let lf = dc.lf();
    let meet = lat_intersect(lf, a, b)?;
    let upper = quotient_struct(lf, a, &meet)?;
    let lower = quotient_struct(lf, b, &meet)?;
    let line = if upper.module.is_zero() && lower.module.is_zero() {
        MuLine::unit(dc.n())
    } else {
        line_tensor(
            &dc.det_line(&upper.module),
            &line_dual(&dc.det_line(&lower.module)),
        )?
    };
    Ok(RelDet {
        a: a.clone(),
        b: b.clone(),
        meet,
        upper,
        lower,
        line,
    })
}

impl RelDet {
    /// Whether `(B|A)` is the dual of this line with matching base points:
    /// its two factors are the same determinant lines, swapped.
    pub fn is_dual_of(&self, other: &RelDet) -> bool {
        self.a == other.b
            && self.b == other.a
            && self.upper.module == other.lower.module
            && self.lower.module == other.upper.module
    }
}

/// The scalar of `rho_f : (A|B) -> (fA|fB)` on base points.
///
/// `rho_f = tau_f ⊗ psi_f`: `tau_f` is `det` of the isomorphism
/// `A/A∩B -> fA/fA∩fB` induced by `f`; `psi_f` is the inverse transpose of the
/// corresponding map on `B/A∩B`, which contributes the inverse scalar.
pub fn rho(dc: &DetCtx, f: &KMatrix, a: &Lattice, b: &Lattice) -> Result<MuScalar> {
    let lf = dc.lf();
    let src = reldet(dc, a, b)?;
    let fa = lat_apply(lf, f, a)?;
    let fb = lat_apply(lf, f, b)?;
    let dst = reldet(dc, &fa, &fb)?;
    let tau = dc.det_iso_scalar(&induced_map(lf, &src.upper, &dst.upper, f)?)?;
    let psi = dc.det_iso_scalar(&induced_map(lf, &src.lower, &dst.lower, f)?)?;
    Ok(tau.div(&psi))
}

/// `kappa` for `A ⊇ B ⊇ C`: `det(A/B) ⊗ det(B/C) -> det(A/C)` from the exact
/// sequence `B/C -> A/C -> A/B`.
pub fn kappa_descending(dc: &DetCtx, a: &Lattice, b: &Lattice, c: &Lattice) -> Result<MuScalar> {
    let lf = dc.lf();
    let x = quotient_struct(lf, b, c)?;
    let y = quotient_struct(lf, a, c)?;
    let z = quotient_struct(lf, a, b)?;
    dc.exact_seq_iso(&inclusion_map(lf, &x, &y)?, &inclusion_map(lf, &y, &z)?)
}

/// `kappa` for `A ⊆ B ⊆ C`: the dual of the descending case for `C ⊇ B ⊇ A`.
pub fn kappa_ascending(dc: &DetCtx, a: &Lattice, b: &Lattice, c: &Lattice) -> Result<MuScalar> {
    Ok(kappa_descending(dc, c, b, a)?.inv())
}

/// The scalar of `(A|B) -> (A|D) ⊗ (D|B)` for `D ⊆ A∩B`, through `A∩B`:
/// `(A|B) = (A|A∩B) ⊗ (A∩B|B)`, then contract each factor against `D`.
fn split_through(dc: &DetCtx, a: &Lattice, b: &Lattice, d: &Lattice) -> Result<MuScalar> {
    let meet = lat_intersect(dc.lf(), a, b)?;
    let down = kappa_descending(dc, a, &meet, d)?;
    let up = kappa_ascending(dc, d, &meet, b)?;
    Ok(down.mul(&up))
}

/// General contraction `(A|B) ⊗ (B|C) -> (A|C)` through `D = A∩B∩C`:
/// split each factor through `D`, contract `(D|B) ⊗ (B|D)` by duality and
/// reassemble `(A|D) ⊗ (D|C)` into `(A|C)`.
pub fn kappa_general(dc: &DetCtx, a: &Lattice, b: &Lattice, c: &Lattice) -> Result<MuScalar> {
    let lf = dc.lf();
    let d = lat_intersect(lf, &lat_intersect(lf, a, b)?, c)?;
    let ab = split_through(dc, a, b, &d)?;
    let bc = split_through(dc, b, c, &d)?;
    let ac = split_through(dc, a, c, &d)?;
    Ok(ab.mul(&bc).div(&ac))
}

/// The contraction `kappa : (A|B) ⊗ (B|C) -> (A|C)` on base points.
pub fn kappa(dc: &DetCtx, a: &Lattice, b: &Lattice, c: &Lattice) -> Result<MuScalar> {
    let lf = dc.lf();
    if a == b || b == c || a == c {
        // Unit constraints and duality.
        return Ok(MuScalar::one(dc.n()));
    }
    if lat_includes(lf, a, b)? && lat_includes(lf, b, c)? {
        return kappa_descending(dc, a, b, c);
    }
    if lat_includes(lf, b, a)? && lat_includes(lf, c, b)? {
        return kappa_ascending(dc, a, b, c);
    }
    kappa_general(dc, a, b, c)
}
