//! Line-oriented text exchange format, DOT export, and small parsers for
//! the command-line front end.
//!
//! A lattice file:
//!
//! ```text
//! # comments and blank lines are ignored
//! name M3
//! size 5
//! covers 0-1 0-2 0-3 1-4 2-4 3-4
//! label 1 a1
//! dims 0 1 1 1 2
//! ```
//!
//! `covers` may repeat; pairs are `lower-upper`. `label` takes the rest of
//! the line. `dims` is optional and lists one number per element.

use crate::congruence::Congruence;
use crate::diagram::{build_in, Diagram, DiagramKind, IndexPoset};
use crate::error::{LatticeError, Result};
use crate::order::{FiniteLattice, FinitePoset};
use crate::support::{PairMap, PartialFunctionPoset};
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct ParsedLattice {
    pub name: Option<String>,
    pub lattice: FiniteLattice,
    pub dims: Option<Vec<usize>>,
}

fn perr(line: usize, msg: impl Into<String>) -> LatticeError {
    LatticeError::Parse { line, msg: msg.into() }
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, got `{tok}`")))
}

fn pair(line: usize, tok: &str) -> Result<(usize, usize)> {
    let (a, b) = tok.split_once('-').ok_or_else(|| perr(line, format!("expected `a-b`, got `{tok}`")))?;
    Ok((num(line, a)?, num(line, b)?))
}

/// Non-blank, non-comment lines with 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

#[derive(Default)]
struct PosetFields {
    name: Option<String>,
    size: Option<usize>,
    covers: Vec<(usize, usize)>,
    labels: Vec<(usize, usize, String)>,
    dims: Option<Vec<usize>>,
}

impl PosetFields {
    /// Consumes one line if it is a poset field; `Ok(false)` otherwise.
    fn take(&mut self, line: usize, key: &str, rest: &str) -> Result<bool> {
        match key {
            "name" => self.name = Some(rest.to_string()),
            "size" => {
                if self.size.is_some() {
                    return Err(perr(line, "duplicate `size`"));
                }
                self.size = Some(num(line, rest)?);
            }
            "covers" => {
                for tok in rest.split_whitespace() {
                    self.covers.push(pair(line, tok)?);
                }
            }
            "label" => {
                let (i, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                self.labels.push((line, num(line, i)?, text.trim().to_string()));
            }
            "dims" => self.dims = Some(rest.split_whitespace().map(|t| num(line, t)).collect::<Result<_>>()?),
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self, line: usize) -> Result<(Option<String>, FinitePoset, Option<Vec<usize>>)> {
        let size = self.size.ok_or_else(|| perr(line, "missing `size`"))?;
        let mut p = FinitePoset::from_covers(size, &self.covers)?;
        if !self.labels.is_empty() {
            let mut labels: Vec<String> = (0..size).map(|i| i.to_string()).collect();
            for (l, i, text) in self.labels {
                if i >= size {
                    return Err(perr(l, format!("label index {i} out of range")));
                }
                labels[i] = text;
            }
            p = p.with_labels(labels)?;
        }
        if let Some(d) = &self.dims {
            if d.len() != size {
                return Err(perr(line, format!("`dims` has {} entries for size {size}", d.len())));
            }
        }
        Ok((self.name, p, self.dims))
    }
}

fn split_key(l: &str) -> (&str, &str) {
    let (k, r) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
    (k, r.trim())
}

/// Parses and validates a lattice file.
pub fn parse_lattice(text: &str) -> Result<ParsedLattice> {
    let mut f = PosetFields::default();
    let mut last = 0;
    for (line, l) in content_lines(text) {
        let (k, r) = split_key(l);
        if !f.take(line, k, r)? {
            return Err(perr(line, format!("unknown field `{k}`")));
        }
        last = line;
    }
    let (name, p, dims) = f.finish(last)?;
    Ok(ParsedLattice { name, lattice: crate::order::validate_lattice(p)?, dims })
}

fn write_poset_fields(out: &mut String, p: &FinitePoset) {
    let _ = writeln!(out, "size {}", p.size());
    for chunk in p.covers().chunks(12) {
        let toks: Vec<String> = chunk.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let _ = writeln!(out, "covers {}", toks.join(" "));
    }
    if let Some(labels) = p.labels() {
        for (i, s) in labels.iter().enumerate() {
            let _ = writeln!(out, "label {i} {s}");
        }
    }
}

pub fn write_lattice(l: &FiniteLattice, name: Option<&str>, dims: Option<&[usize]>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        let _ = writeln!(out, "name {n}");
    }
    write_poset_fields(&mut out, l.poset());
    if let Some(d) = dims {
        let toks: Vec<String> = d.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "dims {}", toks.join(" "));
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram, bottom up, one `rank=same` group per height.
pub fn to_dot(p: &FinitePoset, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle];");
    let h = p.heights();
    let top = h.iter().copied().max().unwrap_or(0);
    for r in 0..=top {
        let ids: Vec<String> = (0..p.size()).filter(|&i| h[i] == r).map(|i| format!("n{i}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    for i in 0..p.size() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(&p.label(i)));
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// `{0 1} {2} {3 4}`.
pub fn write_blocks(c: &Congruence) -> String {
    let parts: Vec<String> = c
        .block_list()
        .iter()
        .map(|b| {
            let items: Vec<String> = b.iter().map(usize::to_string).collect();
            format!("{{{}}}", items.join(" "))
        })
        .collect();
    parts.join(" ")
}

/// A diagram file:
///
/// ```text
/// diagram lattice
/// index in 3
/// node 0
/// size 2
/// covers 0-1
/// end
/// ...
/// map 0 1 : 0 3
/// ```
///
/// `index in n` selects `I_n`; otherwise give `index size k`,
/// `index covers ...` and optional `index label p text`. Maps are needed
/// on covering pairs of the index; the rest are composed.
pub fn write_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    let kind = match d.kind() {
        DiagramKind::Lattice => "lattice",
        DiagramKind::Semilattice => "semilattice",
    };
    let _ = writeln!(out, "diagram {kind}");
    let ip = d.index();
    match ip.ground() {
        Some(n) if build_in(n).map(|r| (0..r.size()).all(|p| r.subset(p) == ip.subset(p))).unwrap_or(false) => {
            let _ = writeln!(out, "index in {n}");
        }
        _ => {
            let p = ip.poset();
            let _ = writeln!(out, "index size {}", p.size());
            let toks: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}-{b}")).collect();
            if !toks.is_empty() {
                let _ = writeln!(out, "index covers {}", toks.join(" "));
            }
            if let Some(labels) = p.labels() {
                for (i, s) in labels.iter().enumerate() {
                    let _ = writeln!(out, "index label {i} {s}");
                }
            }
        }
    }
    for (p, node) in d.nodes().iter().enumerate() {
        let _ = writeln!(out, "node {p}");
        write_poset_fields(&mut out, node.poset());
        out.push_str("end\n");
    }
    for &(p, q) in ip.poset().covers() {
        let toks: Vec<String> = d.map(p, q).iter().map(usize::to_string).collect();
        let _ = writeln!(out, "map {p} {q} : {}", toks.join(" "));
    }
    out
}

pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let lines = content_lines(text);
    let mut it = lines.into_iter().peekable();
    let kind = match it.next() {
        Some((_, "diagram lattice")) => DiagramKind::Lattice,
        Some((_, "diagram semilattice")) => DiagramKind::Semilattice,
        Some((line, _)) => return Err(perr(line, "expected `diagram lattice` or `diagram semilattice`")),
        None => return Err(perr(0, "empty diagram file")),
    };
    let mut index_in: Option<usize> = None;
    let mut index_fields = PosetFields::default();
    let mut nodes: Vec<(usize, FiniteLattice)> = Vec::new();
    let mut maps = Vec::new();
    let mut last = 1;
    while let Some((line, l)) = it.next() {
        last = line;
        let (k, r) = split_key(l);
        match k {
            "index" => {
                let (k2, r2) = split_key(r);
                if k2 == "in" {
                    index_in = Some(num(line, r2)?);
                } else if !index_fields.take(line, k2, r2)? {
                    return Err(perr(line, format!("unknown index field `{k2}`")));
                }
            }
            "node" => {
                let p = num(line, r)?;
                let mut f = PosetFields::default();
                let mut closed = false;
                for (line2, l2) in it.by_ref() {
                    last = line2;
                    if l2 == "end" {
                        closed = true;
                        break;
                    }
                    let (k2, r2) = split_key(l2);
                    if !f.take(line2, k2, r2)? {
                        return Err(perr(line2, format!("unknown node field `{k2}`")));
                    }
                }
                if !closed {
                    return Err(perr(last, format!("node {p} has no `end`")));
                }
                let (_, poset, _) = f.finish(last)?;
                nodes.push((p, crate::order::validate_lattice(poset)?));
            }
            "map" => {
                let (head, tail) = r.split_once(':').ok_or_else(|| perr(line, "expected `map p q : images`"))?;
                let pq: Vec<usize> = head.split_whitespace().map(|t| num(line, t)).collect::<Result<_>>()?;
                if pq.len() != 2 {
                    return Err(perr(line, "expected two index elements before `:`"));
                }
                let img: Vec<usize> = tail.split_whitespace().map(|t| num(line, t)).collect::<Result<_>>()?;
                maps.push(((pq[0], pq[1]), img));
            }
            _ => return Err(perr(line, format!("unknown field `{k}`"))),
        }
    }
    let index = match index_in {
        Some(n) => build_in(n)?,
        None => IndexPoset::new(index_fields.finish(last)?.1),
    };
    nodes.sort_by_key(|(p, _)| *p);
    if nodes.len() != index.size() || nodes.iter().enumerate().any(|(i, (p, _))| i != *p) {
        return Err(perr(last, format!("expected nodes 0..{} exactly once", index.size())));
    }
    Diagram::new(kind, index, nodes.into_iter().map(|(_, l)| l).collect(), maps)
}

/// Pair-map table, one line per pair: `b c : a1 a2 ...`. Pairs not listed
/// map to the empty set.
pub fn parse_pair_map(kappa: usize, text: &str) -> Result<PairMap> {
    let mut f = PairMap::empty(kappa)?;
    for (line, l) in content_lines(text) {
        let (head, tail) = l.split_once(':').ok_or_else(|| perr(line, "expected `b c : items`"))?;
        let bc: Vec<usize> = head.split_whitespace().map(|t| num(line, t)).collect::<Result<_>>()?;
        if bc.len() != 2 {
            return Err(perr(line, "expected two elements before `:`"));
        }
        let items: Vec<usize> = tail.split_whitespace().map(|t| num(line, t)).collect::<Result<_>>()?;
        f.set(bc[0], bc[1], &items).map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(f)
}

/// `1,_,0`: one entry per argument, `_` where undefined.
pub fn parse_partial_function(pf: &PartialFunctionPoset, tok: &str) -> Result<usize> {
    let vals: Vec<Option<usize>> = tok
        .split(',')
        .map(|t| match t.trim() {
            "_" => Ok(None),
            s => s.parse().map(Some).map_err(|_| LatticeError::InvalidParameter(format!("bad entry `{s}` in `{tok}`"))),
        })
        .collect::<Result<_>>()?;
    pf.encode(&vals)
}

pub fn format_partial_function(pf: &PartialFunctionPoset, u: usize) -> String {
    let parts: Vec<String> = pf.decode(u).iter().map(|v| v.map_or("_".to_string(), |x| x.to_string())).collect();
    parts.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fig_cel, m_n};
    use crate::diagram::build_a_diagram;
    use crate::order::are_isomorphic;

    #[test]
    fn lattice_round_trip() {
        for l in [m_n(3).unwrap(), fig_cel()] {
            let text = write_lattice(&l, Some("x"), Some(&vec![0; l.size()]));
            let back = parse_lattice(&text).unwrap();
            assert_eq!(back.name.as_deref(), Some("x"));
            assert_eq!(back.lattice.covers(), l.covers());
            assert_eq!(back.lattice.labels(), l.labels());
            assert!(are_isomorphic(&back.lattice, &l));
        }
    }

    #[test]
    fn lattice_errors() {
        assert!(matches!(parse_lattice("size 2\ncovers 0-x\n"), Err(LatticeError::Parse { line: 2, .. })));
        assert!(matches!(parse_lattice("covers 0-1\n"), Err(LatticeError::Parse { .. })));
        assert!(matches!(parse_lattice("size 2\nfoo\n"), Err(LatticeError::Parse { line: 2, .. })));
        // two minimal elements
        assert!(matches!(parse_lattice("size 3\ncovers 0-2 1-2\n"), Err(LatticeError::NotALattice { .. })));
    }

    #[test]
    fn dot_ranks() {
        let d = to_dot(m_n(3).unwrap().poset(), "M3");
        assert!(d.contains("rankdir=BT"));
        assert!(d.contains("{ rank=same; n1; n2; n3; }"));
        assert!(d.contains("n0 -> n1;"));
    }

    #[test]
    fn diagram_round_trip() {
        let a = build_a_diagram(3).unwrap();
        let text = write_diagram(&a);
        let b = parse_diagram(&text).unwrap();
        assert_eq!(b.index().size(), a.index().size());
        for p in 0..a.index().size() {
            for q in 0..a.index().size() {
                if a.index().leq(p, q) {
                    assert_eq!(a.map(p, q), b.map(p, q));
                }
            }
        }
        assert!(parse_diagram(&text.replace("end\n", "")).is_err());
    }

    #[test]
    fn small_parsers() {
        let f = parse_pair_map(4, "0 1 : 2 3\n# x\n1 2 :\n").unwrap();
        assert!(f.contains(1, 0, 3));
        assert_eq!(f.get(1, 2), 0);
        assert!(parse_pair_map(3, "0 0 : 1").is_err());
        let pf = PartialFunctionPoset::new(3, 2).unwrap();
        let u = parse_partial_function(&pf, "1,_,0").unwrap();
        assert_eq!(format_partial_function(&pf, u), "1,_,0");
        assert!(parse_partial_function(&pf, "2,_,0").is_err());
    }
}
