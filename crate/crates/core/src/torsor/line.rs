//! Trivialized `mu_n`-lines: every element is `zeta^e · base`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::MuScalar;
use crate::error::{Error, Result};

/// A `mu_n`-torsor with a designated base element, labelled by the
/// construction that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MuLine {
    pub n: u64,
    pub label: String,
}

impl MuLine {
    pub fn new(n: u64, label: impl Into<String>) -> Self {
        MuLine {
            n,
            label: label.into(),
        }
    }

    /// `mu_n` itself, based at `1`.
    pub fn unit(n: u64) -> Self {
        MuLine::new(n, "mu")
    }

    pub fn base(&self) -> TorsorElem {
        TorsorElem {
            line: self.clone(),
            exp: MuScalar::one(self.n),
        }
    }

    pub fn elem(&self, exp: MuScalar) -> Result<TorsorElem> {
        if exp.n() != self.n {
            return Err(Error::Mismatch("n"));
        }
        Ok(TorsorElem {
            line: self.clone(),
            exp,
        })
    }
}

impl fmt::Display for MuLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `zeta^exp · base(line)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsorElem {
    pub line: MuLine,
    pub exp: MuScalar,
}

impl TorsorElem {
    /// `zeta^k · self`.
    pub fn act(&self, s: &MuScalar) -> Self {
        TorsorElem {
            line: self.line.clone(),
            exp: self.exp.mul(s),
        }
    }
}

/// `L ⊗ M`, based at the class of `(base_L, base_M)`.
pub fn line_tensor(l: &MuLine, m: &MuLine) -> Result<MuLine> {
    if l.n != m.n {
        return Err(Error::Mismatch("n"));
    }
    Ok(MuLine::new(l.n, format!("({l} ⊗ {m})")))
}

/// `l ⊗ m`; `(zeta^a b_L, zeta^b b_M) ~ zeta^(a+b) (b_L ⊗ b_M)`.
pub fn elem_tensor(l: &TorsorElem, m: &TorsorElem) -> Result<TorsorElem> {
    Ok(TorsorElem {
        line: line_tensor(&l.line, &m.line)?,
        exp: l.exp.mul(&m.exp),
    })
}

/// `L^∨`, the equivariant maps `L -> mu_n`, based at the map sending `base_L`
/// to `1`.
pub fn line_dual(l: &MuLine) -> MuLine {
    MuLine::new(l.n, format!("{l}^∨"))
}

/// `g(l)` for `l ∈ L` and `g ∈ L^∨`.
pub fn duality_contract(l: &TorsorElem, g: &TorsorElem) -> Result<MuScalar> {
    if g.line != line_dual(&l.line) {
        return Err(Error::Mismatch("dual line"));
    }
    Ok(l.exp.mul(&g.exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_normalization() {
        let l = MuLine::new(6, "L");
        let d = line_dual(&l);
        assert!(duality_contract(&l.base(), &d.base()).unwrap().is_one());
        let z = MuScalar::new(6, 1);
        assert_eq!(duality_contract(&l.base().act(&z), &d.base()).unwrap(), z);
        assert!(duality_contract(&l.base(), &l.base()).is_err());
    }

    #[test]
    fn left_nested_association() {
        let (l, m, p) = (MuLine::new(4, "L"), MuLine::new(4, "M"), MuLine::new(4, "P"));
        let left = elem_tensor(&elem_tensor(&l.base(), &m.base()).unwrap(), &p.base()).unwrap();
        let right = elem_tensor(&l.base(), &elem_tensor(&m.base(), &p.base()).unwrap()).unwrap();
        assert_eq!(left.exp, right.exp);
        assert!(left.exp.is_one());
    }
}
