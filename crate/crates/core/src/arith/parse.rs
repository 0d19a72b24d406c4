//! Element grammar shared by the library and the command line.
//!
//! ```text
//! elem  := "0" | ["-"] body
//! body  := pi ["*" unit] | unit
//! pi    := "pi" ["^" int]
//! unit  := int ["/" int] | "[" int ("," int)* "]"
//! ```
//!
//! A coefficient list `[c0, c1, ...]` denotes `c0 + c1 x + ...` where `x` is
//! the root of the lifted defining polynomial (only meaningful for `f > 1`).

use super::padic::{KElem, LocalField};
use crate::error::{Error, Result};

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}")))
}

fn parse_unit(lf: &LocalField, s: &str, prec: u32) -> Result<KElem> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated coefficient list {s:?}")))?;
        let coeffs = inner
            .split(',')
            .map(parse_int)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() > lf.f() as usize {
            return Err(Error::Parse(format!(
                "coefficient list {s:?} longer than the residue degree {}",
                lf.f()
            )));
        }
        let e = lf.k_from_coeffs(0, &coeffs, prec);
        if e.is_exact_zero() {
            return Err(Error::Parse("zero coefficient list".into()));
        }
        return Ok(e);
    }
    if let Some((a, b)) = s.split_once('/') {
        let (a, b) = (parse_int(a)?, parse_int(b)?);
        if a == 0 {
            return Err(Error::Parse("zero numerator".into()));
        }
        return lf
            .k_from_ratio(a, b, prec)
            .map_err(|_| Error::Parse(format!("zero denominator in {s:?}")));
    }
    let a = parse_int(s)?;
    if a == 0 {
        return Err(Error::Parse("zero unit".into()));
    }
    Ok(lf.k_from_int(a, prec))
}

/// Parses an element of `K` at relative precision `prec`.
pub fn parse_elem(lf: &LocalField, s: &str, prec: u32) -> Result<KElem> {
    let s = s.trim();
    if s == "0" {
        return Ok(KElem::zero());
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if rest.trim_start().starts_with("pi") => (true, rest.trim_start()),
        _ => (false, s),
    };
    let value = if let Some(rest) = body.strip_prefix("pi") {
        let (exp_part, unit_part) = match rest.split_once('*') {
            Some((e, u)) => (e, Some(u)),
            None => (rest, None),
        };
        let k = match exp_part.trim() {
            "" => 1,
            e => {
                let e = e
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("expected '^' in {s:?}")))?;
                parse_int(e)?
            }
        };
        let unit = match unit_part {
            Some(u) => parse_unit(lf, u, prec)?,
            None => lf.k_from_int(1, prec),
        };
        lf.k_mul(&lf.k_pi_pow(k), &unit)
    } else {
        parse_unit(lf, body, prec)?
    };
    Ok(if neg { lf.k_neg(&value) } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let lf = LocalField::new(7, 1).unwrap();
        let a = parse_elem(&lf, "3", 4).unwrap();
        assert_eq!((a.valuation(), a.unit().0[0]), (Some(0), 3));
        let b = parse_elem(&lf, "pi^2*3", 4).unwrap();
        assert_eq!((b.valuation(), b.unit().0[0]), (Some(2), 3));
        let c = parse_elem(&lf, "1/7", 4).unwrap();
        assert_eq!(c.valuation(), Some(-1));
        let d = parse_elem(&lf, "-pi", 4).unwrap();
        assert_eq!((d.valuation(), d.unit().0[0]), (Some(1), 7 * 7 * 7 * 7 - 1));
        let e = parse_elem(&lf, "1/3", 2).unwrap();
        assert_eq!(e.unit().0[0], 33);
        assert!(parse_elem(&lf, "0", 4).unwrap().is_exact_zero());
        assert!(parse_elem(&lf, "pi^x", 4).is_err());
        assert!(parse_elem(&lf, "3/0", 4).is_err());
        assert!(parse_elem(&lf, "[1,2]", 4).is_err());
    }

    #[test]
    fn coefficient_lists() {
        let lf = LocalField::new(3, 2).unwrap();
        let a = parse_elem(&lf, "pi^-1*[1,2]", 5).unwrap();
        assert_eq!(a.valuation(), Some(-1));
        assert_eq!(&a.unit().0[..2], &[1, 2]);
        let b = parse_elem(&lf, "[3,6]", 5).unwrap();
        assert_eq!(b.valuation(), Some(1));
    }

    #[test]
    fn display_round_trip() {
        for (p, f) in [(7, 1), (3, 2)] {
            let lf = LocalField::new(p, f).unwrap();
            for s in ["3", "pi^2*5", "pi^-3*2", "pi*1"] {
                let a = parse_elem(&lf, s, 6).unwrap();
                let again = parse_elem(&lf, &lf.format(&a), 6).unwrap();
                assert_eq!(a, again);
            }
        }
    }
}
