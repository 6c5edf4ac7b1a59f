//! A small expression syntax for polynomial form literals, used by the CLI
//! job files.
//!
//! Grammar, per simplex: terms joined by `+`/`-`, each term a product of
//! whitespace-separated factors: a rational constant (`3`, `-5/2`),
//! barycentric coordinates `t0..tk` with optional exponent (`t1^2`),
//! differentials `dt0..dtk` (wedged in the order written), and coefficient
//! ring generator names. `t0`/`dt0` are eliminated via t0 = 1 - t1 - ... - tk.
//! Example on a 2-simplex: `1/2 t1 dt1 dt2 u - t0^2 dt2 dt1 u`.

use super::{PLForm, PolyForm};
use crate::coeff::Ring;
use crate::linalg::Rat;
use crate::simplicial::Complex;
use num_traits::One;
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("bad factor `{0}`")]
    BadFactor(String),
    #[error("coordinate index {0} out of range for a {1}-simplex")]
    IndexRange(usize, usize),
    #[error("term `{0}` has degree {1}, expected {2}")]
    DegreeMismatch(String, usize, usize),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("form is not face-compatible: {0}")]
    NotCompatible(String),
}

/// Parse one polynomial form of the given total degree on the k-simplex.
pub fn parse_poly_form(
    src: &str,
    k: usize,
    degree: usize,
    ring: &Ring,
) -> Result<PolyForm, ParseError> {
    let mut out = PolyForm::zero(k, degree);
    let src = src.trim();
    if src.is_empty() || src == "0" {
        return Ok(out);
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in src.chars() {
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                terms.push((neg, cur.trim().to_string()));
            }
            cur = String::new();
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    for (neg, term) in terms {
        let mut acc = PolyForm::one(k, ring);
        if neg {
            acc = acc.neg();
        }
        for factor in term.split_whitespace().flat_map(|f| f.split('*')) {
            if factor.is_empty() {
                continue;
            }
            acc = acc.wedge(&parse_factor(factor, k, ring)?, ring);
        }
        if acc.is_zero() {
            continue;
        }
        if acc.degree != degree {
            return Err(ParseError::DegreeMismatch(term, acc.degree, degree));
        }
        out = out.add(&acc);
    }
    Ok(out)
}

fn parse_factor(f: &str, k: usize, ring: &Ring) -> Result<PolyForm, ParseError> {
    if let Some(rest) = f.strip_prefix("dt") {
        let i: usize = rest
            .parse()
            .map_err(|_| ParseError::BadFactor(f.to_string()))?;
        if i > k {
            return Err(ParseError::IndexRange(i, k));
        }
        return Ok(PolyForm::differential(k, i, ring));
    }
    if let Some(rest) = f.strip_prefix('t') {
        if rest.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| {
                    ParseError::BadFactor(f.to_string())
                })?),
                None => (rest, 1),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| ParseError::BadFactor(f.to_string()))?;
            if i > k {
                return Err(ParseError::IndexRange(i, k));
            }
            let t = PolyForm::coordinate(k, i, ring);
            let mut acc = PolyForm::one(k, ring);
            for _ in 0..exp {
                acc = acc.wedge(&t, ring);
            }
            return Ok(acc);
        }
    }
    if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        let r = match f.split_once('/') {
            Some((n, d)) => {
                let n = crate::linalg::Int::from_str(n)
                    .map_err(|_| ParseError::BadFactor(f.to_string()))?;
                let d = crate::linalg::Int::from_str(d)
                    .map_err(|_| ParseError::BadFactor(f.to_string()))?;
                Rat::new(n, d)
            }
            None => Rat::from_integer(
                crate::linalg::Int::from_str(f)
                    .map_err(|_| ParseError::BadFactor(f.to_string()))?,
            ),
        };
        return Ok(PolyForm::constant(k, ring.one_q().scale(&r)));
    }
    // a coefficient ring generator
    if let Some(g) = ring.gen_by_name(f) {
        let gen = &ring.gens[g];
        let mut coords = BTreeMap::new();
        coords.insert(g, Rat::one());
        return Ok(PolyForm::constant(
            k,
            crate::coeff::QValue { degree: gen.degree, coords },
        ));
    }
    Err(ParseError::BadFactor(f.to_string()))
}

/// Parse a PL form from per-cell expressions (missing cells are zero) and
/// check face compatibility.
pub fn parse_pl_form(
    ring: &Ring,
    base: &Complex,
    degree: usize,
    comps: &BTreeMap<String, String>,
) -> Result<PLForm, ParseError> {
    let mut out = PLForm::zero(ring, base, degree);
    for (name, src) in comps {
        let cell = base
            .cell_by_name(name)
            .ok_or_else(|| ParseError::UnknownCell(name.clone()))?;
        out.set(cell, parse_poly_form(src, cell.0, degree, ring)?);
    }
    out.validate().map_err(ParseError::NotCompatible)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::linalg::rat;
    use crate::simplicial::builtins;

    #[test]
    fn parses_basic_expressions() {
        let ring = coeff::poly_even(2);
        let f = parse_poly_form("1/2 t1 dt1 dt2 - t2^2 dt2 dt1", 2, 2, &ring)
            .unwrap();
        let g = PolyForm::coordinate(2, 1, &ring)
            .scale(&rat(1, 2))
            .wedge(&PolyForm::differential(2, 1, &ring), &ring)
            .wedge(&PolyForm::differential(2, 2, &ring), &ring);
        let t2 = PolyForm::coordinate(2, 2, &ring);
        let h = t2
            .wedge(&t2, &ring)
            .wedge(&PolyForm::differential(2, 2, &ring), &ring)
            .wedge(&PolyForm::differential(2, 1, &ring), &ring)
            .neg();
        assert_eq!(f, g.add(&h));
        // generator coefficients and t0 elimination
        let u = parse_poly_form("t0 dt1 u1", 1, 3, &ring).unwrap();
        assert_eq!(u.degree, 3);
        assert!(!u.is_zero());
        assert!(parse_poly_form("dt1", 1, 2, &ring).is_err());
        assert!(parse_poly_form("dt5", 1, 1, &ring).is_err());
    }

    #[test]
    fn parses_pl_form_with_compatibility_check() {
        let ring = coeff::integers();
        let s1 = builtins::circle();
        let mut comps = BTreeMap::new();
        comps.insert("e".to_string(), "6 t1 t0 dt1".to_string());
        let f = parse_pl_form(&ring, &s1, 1, &comps).unwrap();
        assert!(f.d().is_zero());
        // t1 restricts to 1 at a vertex, but the vertex component is zero
        let mut bad = BTreeMap::new();
        bad.insert("e".to_string(), "t1".to_string());
        assert!(parse_pl_form(&ring, &s1, 0, &bad).is_err());
    }
}
