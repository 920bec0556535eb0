//! Text formats for posets and monotone maps.
//!
//! ```text
//! poset <name>
//! elem <id>
//! rel <a> <= <b>
//! ```
//!
//! Covering relations suffice; the closure is taken on load. A map file holds the
//! source and target posets followed by
//!
//! ```text
//! pmap <src> <dst>
//! send <a> -> <b>
//! ```

use std::fmt::Write;
use std::sync::Arc;

use super::{FinPoset, MonotoneMap, PosetError};

fn perr(line: usize, msg: impl Into<String>) -> PosetError {
    PosetError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn print_poset(p: &FinPoset) -> String {
    let mut out = String::new();
    writeln!(out, "poset {}", p.name()).unwrap();
    for n in p.names() {
        writeln!(out, "elem {n}").unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "rel {} <= {}", p.element_name(a), p.element_name(b)).unwrap();
    }
    out
}

pub fn print_pmap(f: &MonotoneMap) -> String {
    let mut out = print_poset(f.source());
    out.push_str(&print_poset(f.target()));
    writeln!(out, "pmap {} {}", f.source().name(), f.target().name()).unwrap();
    for a in 0..f.source().len() {
        writeln!(
            out,
            "send {} -> {}",
            f.source().element_name(a),
            f.target().element_name(f.at(a))
        )
        .unwrap();
    }
    out
}

/// Split into documents, each starting with a `poset` or `pmap` header.
fn documents(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut docs: Vec<Vec<(usize, &str)>> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if l.starts_with("poset ") || l == "poset" || l.starts_with("pmap") || docs.is_empty() {
            docs.push(Vec::new());
        }
        docs.last_mut().unwrap().push((i + 1, l));
    }
    docs
}

fn parse_poset_lines(lines: &[(usize, &str)]) -> Result<FinPoset, PosetError> {
    let (ln, header) = lines.first().ok_or_else(|| perr(0, "empty document"))?;
    let name = header
        .strip_prefix("poset")
        .ok_or_else(|| perr(*ln, "expected `poset <name>`"))?
        .trim()
        .to_string();
    let mut names: Vec<String> = Vec::new();
    let mut rels = Vec::new();
    for &(ln, l) in &lines[1..] {
        if let Some(e) = l.strip_prefix("elem ") {
            let e = e.trim().to_string();
            if names.contains(&e) {
                return Err(perr(ln, format!("duplicate element {e}")));
            }
            names.push(e);
        } else if let Some(r) = l.strip_prefix("rel ") {
            let (a, b) = r.split_once("<=").ok_or_else(|| perr(ln, "expected `rel a <= b`"))?;
            let find = |s: &str| {
                names
                    .iter()
                    .position(|n| n == s.trim())
                    .ok_or_else(|| perr(ln, format!("unknown element {}", s.trim())))
            };
            rels.push((find(a)?, find(b)?));
        } else {
            return Err(perr(ln, format!("unexpected line {l:?}")));
        }
    }
    FinPoset::from_relations(name, names, &rels)
}

pub fn parse_poset(text: &str) -> Result<FinPoset, PosetError> {
    let docs = documents(text);
    if docs.len() != 1 {
        return Err(perr(0, format!("expected one poset document, found {}", docs.len())));
    }
    parse_poset_lines(&docs[0])
}

pub fn parse_pmap(text: &str) -> Result<MonotoneMap, PosetError> {
    let docs = documents(text);
    if docs.len() != 3 {
        return Err(perr(0, "expected source poset, target poset and pmap section"));
    }
    let src = Arc::new(parse_poset_lines(&docs[0])?);
    let dst = Arc::new(parse_poset_lines(&docs[1])?);
    let section = &docs[2];
    let (ln, header) = section[0];
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "pmap" {
        return Err(perr(ln, "expected `pmap <src> <dst>`"));
    }
    if parts[1] != src.name() || parts[2] != dst.name() {
        return Err(perr(ln, "pmap names do not match the posets"));
    }
    let mut map = vec![None; src.len()];
    for &(ln, l) in &section[1..] {
        let rest = l.strip_prefix("send ").ok_or_else(|| perr(ln, "expected `send a -> b`"))?;
        let (a, b) = rest.split_once("->").ok_or_else(|| perr(ln, "expected `->`"))?;
        let a = src
            .index_of(a.trim())
            .ok_or_else(|| perr(ln, format!("unknown source element {}", a.trim())))?;
        let b = dst
            .index_of(b.trim())
            .ok_or_else(|| perr(ln, format!("unknown target element {}", b.trim())))?;
        map[a] = Some(b);
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(a, b)| b.ok_or_else(|| perr(0, format!("no image for {}", src.element_name(a)))))
        .collect::<Result<Vec<_>, _>>()?;
    MonotoneMap::new(src, dst, map)
}
