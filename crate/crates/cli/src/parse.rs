//! Literal grammars: rings `Z | Q | Z/<m> | Zp:<p>:<k> | Qp:<p>:<k>`,
//! groups `sympl:<n>:<ring> | matrix:<ring>:[[..],..] | cocycle:<file>:<m>:<N>:<m'>`,
//! points `(z1,...,zN;t)`, and cell boxes `ball(c,j) x ...`.

use padic_heis::calculus::parse_rational_text;
use padic_heis::exact::PadicScalar;
use padic_heis::heis::{CocycleTable, HeisGroup, HeisPoint};
use padic_heis::rings::{BilinearForm, RingDescriptor, RingElem};
use padic_heis::{Error, Result};

pub fn parse_ring(text: &str) -> Result<RingDescriptor> {
    let t = text.trim();
    match t {
        "Z" => return Ok(RingDescriptor::integers()),
        "Q" => return Ok(RingDescriptor::rationals()),
        _ => {}
    }
    if let Some(m) = t.strip_prefix("Z/") {
        let m: u64 = m
            .parse()
            .map_err(|_| Error::ParseError(format!("bad modulus in {t:?}")))?;
        if m < 1 {
            return Err(Error::ParseError("modulus must be at least 1".into()));
        }
        return Ok(RingDescriptor::modular(m));
    }
    for (prefix, integral) in [("Zp:", true), ("Qp:", false)] {
        if let Some(rest) = t.strip_prefix(prefix) {
            let (p, k) = rest
                .split_once(':')
                .ok_or_else(|| Error::ParseError(format!("expected {prefix}<p>:<k>")))?;
            let p: u64 = p
                .parse()
                .map_err(|_| Error::ParseError(format!("bad prime in {t:?}")))?;
            let k: u32 = k
                .parse()
                .map_err(|_| Error::ParseError(format!("bad precision in {t:?}")))?;
            return if integral {
                RingDescriptor::padic_integers(p, k)
            } else {
                RingDescriptor::padic(p, k)
            };
        }
    }
    Err(Error::ParseError(format!(
        "unknown ring literal {t:?} (expected Z, Q, Z/<m>, Zp:<p>:<k>, Qp:<p>:<k>)"
    )))
}

/// A ring-element literal: a rational embedded into the ring, or the
/// canonical p-adic text form for p-adic rings.
pub fn parse_elem(text: &str, ring: &RingDescriptor) -> Result<RingElem> {
    let t = text.trim();
    if t.starts_with("p:") {
        let scalar = PadicScalar::parse(t)?;
        return ring.from_padic(scalar);
    }
    ring.from_rational(&parse_rational_text(t)?)
}

/// `(z1,...,zN;t)`.
pub fn parse_point(text: &str, group: &HeisGroup) -> Result<HeisPoint> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::ParseError(format!("expected (z1,...,zN;t), got {t:?}")))?;
    let (zpart, tpart) = inner
        .rsplit_once(';')
        .ok_or_else(|| Error::ParseError(format!("missing `;` in point {t:?}")))?;
    let z: Vec<RingElem> = zpart
        .split(',')
        .map(|c| parse_elem(c, group.base_ring()))
        .collect::<Result<_>>()?;
    let tv = parse_elem(tpart, group.codomain_ring())?;
    group.point(z, tv)
}

pub fn format_point(p: &HeisPoint) -> String {
    p.to_string()
}

/// Group literals:
/// - `sympl:<n>:<ring>` — H_n over the ring (N = 2n, symplectic form)
/// - `matrix:<ring>:[[a,b],[c,d]]` — bilinear form from a matrix
/// - `cocycle:<file>:<m>:<N>:<m'>` — 2-cocycle table from a file of
///   `w|z|value` lines over (Z/m)^N with values in Z/m'
pub fn parse_group(text: &str) -> Result<HeisGroup> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("sympl:") {
        let (n, ring) = rest
            .split_once(':')
            .ok_or_else(|| Error::ParseError("expected sympl:<n>:<ring>".into()))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::ParseError(format!("bad n in {t:?}")))?;
        let ring = parse_ring(ring)?;
        return Ok(HeisGroup::bilinear(padic_heis::rings::standard_symplectic(
            n, &ring,
        )?));
    }
    if let Some(rest) = t.strip_prefix("matrix:") {
        let (ring_text, matrix_text) = rest
            .split_once(":[")
            .ok_or_else(|| Error::ParseError("expected matrix:<ring>:[[..],..]".into()))?;
        let ring = parse_ring(ring_text)?;
        let matrix_text = format!("[{matrix_text}");
        let rows = parse_matrix(&matrix_text)?;
        let dim = rows.len();
        let mut entries = Vec::new();
        for row in &rows {
            if row.len() != dim {
                return Err(Error::ParseError("matrix must be square".into()));
            }
            for v in row {
                entries.push(ring.from_rational(v)?);
            }
        }
        return Ok(HeisGroup::bilinear(BilinearForm::from_matrix(
            ring, dim, entries,
        )?));
    }
    if let Some(rest) = t.strip_prefix("cocycle:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::ParseError(
                "expected cocycle:<file>:<m>:<N>:<m'>".into(),
            ));
        }
        let text = std::fs::read_to_string(parts[0])
            .map_err(|e| Error::ParseError(format!("cannot read {:?}: {e}", parts[0])))?;
        let m: u64 = parts[1]
            .parse()
            .map_err(|_| Error::ParseError("bad m".into()))?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| Error::ParseError("bad N".into()))?;
        let mv: u64 = parts[3]
            .parse()
            .map_err(|_| Error::ParseError("bad m'".into()))?;
        let table = CocycleTable::parse(&text, m, n, mv)?;
        return Ok(HeisGroup::cocycle(table));
    }
    Err(Error::ParseError(format!(
        "unknown group literal {t:?} (expected sympl:, matrix:, or cocycle:)"
    )))
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<padic_heis::exact::Rational>>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::ParseError("matrix must be bracketed".into()))?;
    let mut rows = Vec::new();
    let mut depth = 0i32;
    let mut row_start = None;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => {
                depth += 1;
                if depth == 1 {
                    row_start = Some(i + 1);
                }
            }
            ']' => {
                depth -= 1;
                if depth == 0 {
                    let start = row_start
                        .take()
                        .ok_or_else(|| Error::ParseError("unbalanced matrix brackets".into()))?;
                    let row: Vec<padic_heis::exact::Rational> = inner[start..i]
                        .split(',')
                        .map(parse_rational_text)
                        .collect::<Result<_>>()?;
                    rows.push(row);
                }
            }
            _ => {}
        }
    }
    if depth != 0 || rows.is_empty() {
        return Err(Error::ParseError("malformed matrix literal".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_literals() {
        assert_eq!(parse_ring("Z").unwrap(), RingDescriptor::integers());
        assert_eq!(parse_ring("Q").unwrap(), RingDescriptor::rationals());
        assert_eq!(parse_ring("Z/9").unwrap(), RingDescriptor::modular(9));
        assert_eq!(
            parse_ring("Zp:3:8").unwrap(),
            RingDescriptor::padic_integers(3, 8).unwrap()
        );
        assert_eq!(
            parse_ring("Qp:5:10").unwrap(),
            RingDescriptor::padic(5, 10).unwrap()
        );
        assert!(parse_ring("R").is_err());
    }

    #[test]
    fn group_and_point_literals() {
        let g = parse_group("sympl:1:Z").unwrap();
        assert_eq!(g.dim(), 2);
        let a = parse_point("(1,0;0)", &g).unwrap();
        let b = parse_point("(0,1;0)", &g).unwrap();
        let c = g.mul(&a, &b).unwrap();
        assert_eq!(format_point(&c), "(1,1;1)");
    }

    #[test]
    fn matrix_group_literal() {
        let g = parse_group("matrix:Z/5:[[0,1],[-1,0]]").unwrap();
        assert_eq!(g.dim(), 2);
        assert!(g.form().unwrap().is_antisymmetric());
        assert!(parse_group("matrix:Z:[[0,1]]").is_err());
    }
}
