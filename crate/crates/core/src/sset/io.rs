//! Text format for simplicial sets and maps.
//!
//! ```text
//! sset <name>
//! cell <id> dim <d> faces [(<id>,degen <d-1> {..}), ...]
//!
//! smap <src> <dst>
//! send <id> -> (<id>, degen <d> {..})
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Cell ids need not be
//! dense; they are renumbered in increasing order on load.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::{CellSpec, Simplex, SimplicialSet, SsetError};
use crate::delta::Operator;

pub fn print_sset(x: &SimplicialSet) -> String {
    let mut out = String::new();
    writeln!(out, "sset {}", x.name()).unwrap();
    for c in 0..x.num_cells() {
        let faces: Vec<String> = x.faces(c).iter().map(|f| format!("{f}")).collect();
        writeln!(out, "cell {} dim {} faces [{}]", c, x.cell_dim(c), faces.join(", ")).unwrap();
    }
    out
}

pub fn print_smap(f: &SimplicialMap) -> String {
    let mut out = String::new();
    writeln!(out, "smap {} {}", f.source().name(), f.target().name()).unwrap();
    for (c, s) in f.images().iter().enumerate() {
        writeln!(out, "send {} -> ({}, {})", c, s.cell, s.degen.encode_degen()).unwrap();
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> SsetError {
    SsetError::Parse {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parse `(<id>,<degen-encoding>)`, returning the raw id and the operator.
fn parse_pair(s: &str, line: usize) -> Result<(usize, Operator), SsetError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| perr(line, format!("expected (id,degen ...), found {s:?}")))?;
    let (id, op) = inner
        .split_once(',')
        .ok_or_else(|| perr(line, format!("missing comma in {s:?}")))?;
    let id: usize = id.trim().parse().map_err(|_| perr(line, format!("bad cell id {id:?}")))?;
    let op: Operator = op.trim().parse().map_err(|e| perr(line, format!("{e}")))?;
    if !op.is_degeneracy() {
        return Err(perr(line, "expected a degeneracy operator"));
    }
    Ok((id, op))
}

/// Split a bracketed list of parenthesized pairs at top-level commas.
fn split_pairs(s: &str, line: usize) -> Result<Vec<&str>, SsetError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| perr(line, "faces must be a bracketed list"))?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(perr(line, "unbalanced brackets"));
        }
    }
    if !inner[start..].trim().is_empty() {
        out.push(&inner[start..]);
    }
    Ok(out)
}

/// Line number, dimension and faces of a cell as read.
type RawCell = (usize, usize, Vec<(usize, Operator)>);

pub fn parse_sset(text: &str) -> Result<SimplicialSet, SsetError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty document"))?;
    let name = header
        .strip_prefix("sset")
        .ok_or_else(|| perr(ln, "expected `sset <name>`"))?
        .trim()
        .to_string();
    let mut raw: BTreeMap<usize, RawCell> = BTreeMap::new();
    for (ln, l) in lines {
        let rest = l.strip_prefix("cell").ok_or_else(|| perr(ln, "expected `cell`"))?;
        let mut parts = rest.trim().splitn(4, char::is_whitespace);
        let id: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(ln, "bad cell id"))?;
        if parts.next() != Some("dim") {
            return Err(perr(ln, "expected `dim`"));
        }
        let dim: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(ln, "bad dimension"))?;
        let faces_part = parts
            .next()
            .and_then(|t| t.trim().strip_prefix("faces"))
            .ok_or_else(|| perr(ln, "expected `faces [...]`"))?;
        let faces = split_pairs(faces_part, ln)?
            .into_iter()
            .map(|p| parse_pair(p, ln))
            .collect::<Result<Vec<_>, _>>()?;
        if raw.insert(id, (ln, dim, faces)).is_some() {
            return Err(perr(ln, format!("duplicate cell id {id}")));
        }
    }
    let dense: BTreeMap<usize, usize> = raw.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut specs = Vec::with_capacity(raw.len());
    for (_, (ln, dim, faces)) in raw {
        let faces = faces
            .into_iter()
            .map(|(id, op)| {
                dense
                    .get(&id)
                    .map(|&c| Simplex::new(c, op))
                    .ok_or_else(|| perr(ln, format!("face refers to missing cell {id}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        specs.push(CellSpec { dim, faces });
    }
    SimplicialSet::new(name, specs)
}

/// Parse a map between two already loaded sets. Ids refer to dense cell numbers.
pub fn parse_smap(
    text: &str,
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
) -> Result<SimplicialMap, SsetError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty document"))?;
    if !header.starts_with("smap") {
        return Err(perr(ln, "expected `smap <src> <dst>`"));
    }
    let mut images: Vec<Option<Simplex>> = vec![None; source.num_cells()];
    for (ln, l) in lines {
        let rest = l.strip_prefix("send").ok_or_else(|| perr(ln, "expected `send`"))?;
        let (id, img) = rest.split_once("->").ok_or_else(|| perr(ln, "expected `->`"))?;
        let id: usize = id.trim().parse().map_err(|_| perr(ln, "bad cell id"))?;
        let (cell, op) = parse_pair(img, ln)?;
        let slot = images
            .get_mut(id)
            .ok_or_else(|| perr(ln, format!("source has no cell {id}")))?;
        *slot = Some(Simplex::new(cell, op));
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(c, s)| s.ok_or_else(|| perr(0, format!("no image for cell {c}"))))
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(source, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{sphere, standard_simplex};

    #[test]
    fn round_trip() {
        for x in [standard_simplex(2), sphere(2).unwrap()] {
            let text = print_sset(&x);
            let y = parse_sset(&text).unwrap();
            assert_eq!(x, y);
            assert_eq!(print_sset(&y), text);
        }
    }

    #[test]
    fn sparse_ids() {
        let text = "sset c\ncell 10 dim 0 faces []\ncell 20 dim 1 faces [(10,degen 0 {}), (10,degen 0 {})]\n";
        let x = parse_sset(text).unwrap();
        assert_eq!(x.counts(), vec![1, 1]);
        assert_eq!(x, sphere(1).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_sset("sset x\ncell 0 dim 1 faces []").is_err());
        assert!(parse_sset("poset x").is_err());
        assert!(parse_sset("sset x\ncell 0 dim 0 faces []\ncell 0 dim 0 faces []").is_err());
    }

    #[test]
    fn map_round_trip() {
        let d = Arc::new(standard_simplex(1));
        let s = Arc::new(sphere(1).unwrap());
        let f = SimplicialMap::new(
            d.clone(),
            s.clone(),
            vec![Simplex::cell(0, 0), Simplex::cell(0, 0), Simplex::cell(1, 1)],
        )
        .unwrap();
        let g = parse_smap(&print_smap(&f), d, s).unwrap();
        assert!(f.same_as(&g));
    }
}
