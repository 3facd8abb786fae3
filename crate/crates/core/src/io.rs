//! Facet-list and cochain text formats.
//!
//! Facet list: one facet per line as whitespace-separated vertex ids, `#`
//! starts a comment. Cochain: a `dim=<i>` line followed by one cell per line.

use crate::complex::{Cochain, Complex};
use crate::error::{Error, Result};
use std::fmt::Write;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(n, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((n + 1, l))
    })
}

fn parse_ids(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|e| Error::Parse { line, msg: format!("bad vertex id {t:?}: {e}") }))
        .collect()
}

pub fn parse_facets(text: &str) -> Result<Complex> {
    let mut facets = Vec::new();
    let mut size = None;
    for (line, l) in content_lines(text) {
        let ids = parse_ids(line, l)?;
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse { line, msg: "repeated vertex in facet".into() });
        }
        match size {
            None => size = Some(ids.len()),
            Some(s) if s != ids.len() => {
                return Err(Error::MixedDimensions { expected: s, found: ids.len(), line: Some(line) })
            }
            _ => {}
        }
        facets.push(sorted);
    }
    Complex::from_facets(facets)
}

pub fn write_facets(x: &Complex) -> Result<String> {
    if !x.is_pure() {
        return Err(Error::NotPure);
    }
    let mut out = String::new();
    for f in x.facets() {
        write_ids(&mut out, f);
    }
    Ok(out)
}

fn write_ids(out: &mut String, ids: &[u32]) {
    for (j, v) in ids.iter().enumerate() {
        if j > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

pub fn parse_cochain(x: &Complex, text: &str) -> Result<Cochain> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing dim=<i> header".into() })?;
    let dim: usize = header
        .strip_prefix("dim=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or(Error::Parse { line, msg: format!("expected dim=<i>, found {header:?}") })?;
    if dim > x.dim() {
        return Err(Error::Parse { line, msg: format!("dimension {dim} exceeds complex dimension {}", x.dim()) });
    }
    let mut a = x.zero_cochain(dim);
    for (line, l) in lines {
        let mut ids = parse_ids(line, l)?;
        ids.sort_unstable();
        if ids.len() != dim + 1 {
            return Err(Error::Parse { line, msg: format!("expected {} vertices, found {}", dim + 1, ids.len()) });
        }
        let k = x.find(dim, &ids).ok_or(Error::Parse { line, msg: format!("{ids:?} is not a cell") })?;
        a.bits.set(k, true);
    }
    Ok(a)
}

pub fn write_cochain(x: &Complex, a: &Cochain) -> String {
    let mut out = format!("dim={}\n", a.dim);
    for k in a.bits.iter_ones() {
        write_ids(&mut out, x.cell(a.dim, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::rp2_six_vertex;

    #[test]
    fn facet_round_trip() {
        let x = rp2_six_vertex();
        let s = write_facets(&x).unwrap();
        assert_eq!(s.lines().count(), 10);
        let y = parse_facets(&s).unwrap();
        assert_eq!(write_facets(&y).unwrap(), s);
    }

    #[test]
    fn comments_and_errors() {
        let x = parse_facets("# tri\n2 1 0  # one\n\n").unwrap();
        assert_eq!(x.f_vector(), vec![3, 3, 1]);
        match parse_facets("0 1 2\n1 2\n") {
            Err(Error::MixedDimensions { line: Some(2), .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_facets("0 x 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_facets("# nothing\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn cochain_round_trip() {
        let x = rp2_six_vertex();
        let a = x.cochain_from_cells(1, [[0u32, 1], [3, 5], [2, 4]]).unwrap();
        let s = write_cochain(&x, &a);
        assert_eq!(parse_cochain(&x, &s).unwrap(), a);
        assert!(matches!(parse_cochain(&x, "dim=1\n0 9\n"), Err(Error::Parse { line: 2, .. })));
    }
}
