//! Text formats: edge lists, adjacency matrices, node-map files, and DOT
//! export.
//!
//! Edge-list format, one declaration per line:
//!   - `# ...` comment
//!   - `node <id>` declares an isolated node
//!   - `<u> -- <v>` symmetric edge
//!   - `<u> -> <v>` directed arc
//!
//! Duplicate declarations are idempotent and self-loops are rejected. Node
//! indices follow first appearance, so an exported list re-parses to an
//! identical system.
//!
//! Matrix format: first line `n`, then `n` rows of `n` space-separated 0/1
//! entries; row `i` holds the out-arcs of node `i`; labels are `v0..v(n-1)`.
//!
//! Map format, one line per source node: `<src-id> => <dst-id>` or
//! `<src-id> => !` for a deleted node. Every source node must be listed.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::reduction;
use crate::system::{NodeId, System, SystemBuilder};
use crate::transform::NodeMap;

pub fn parse_edge_list(text: &str) -> Result<System> {
    let mut b = SystemBuilder::new();
    let mut declarations = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = t.split_whitespace().collect();
        let mapped = match tokens.as_slice() {
            ["node", id] => b.ensure_node(id).map(|_| ()),
            [u, "--", v] => b.add_symmetric_edge(u, v),
            [u, "->", v] => b.add_arc(u, v),
            _ => Err(Error::Parse {
                line,
                msg: format!("unrecognized declaration `{t}`"),
            }),
        };
        mapped.map_err(|e| at_line(line, e))?;
        declarations += 1;
    }
    if declarations == 0 {
        return Err(Error::Parse {
            line: 0,
            msg: "empty graph file: no node or edge declarations".to_string(),
        });
    }
    Ok(b.build())
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            msg: other.to_string(),
        },
    }
}

/// Canonical edge-list text: every node declared in index order, then
/// symmetric edges, then one-way arcs.
pub fn write_edge_list(s: &System) -> String {
    let mut out = String::new();
    for v in s.nodes() {
        out.push_str("node ");
        out.push_str(s.label(v));
        out.push('\n');
    }
    for (u, v) in s.symmetric_edges() {
        out.push_str(&format!("{} -- {}\n", s.label(u), s.label(v)));
    }
    for (u, v) in s.asymmetric_arcs() {
        out.push_str(&format!("{} -> {}\n", s.label(u), s.label(v)));
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<System> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, first) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty matrix file".to_string(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected node count, found `{first}`"),
    })?;
    let mut b = SystemBuilder::new();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for l in &labels {
        b.ensure_node(l)?;
    }
    for i in 0..n {
        let (line, row) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: format!("expected {n} matrix rows, found {i}"),
        })?;
        let entries: Vec<&str> = row.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("row has {} entries, expected {n}", entries.len()),
            });
        }
        for (j, e) in entries.iter().enumerate() {
            match *e {
                "0" => {}
                "1" => {
                    if i == j {
                        return Err(Error::Parse {
                            line,
                            msg: format!("self-loop on node v{i}"),
                        });
                    }
                    b.add_arc(&labels[i], &labels[j])?;
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("matrix entry must be 0 or 1, found `{other}`"),
                    })
                }
            }
        }
    }
    if let Some((line, extra)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: format!("unexpected trailing content `{extra}`"),
        });
    }
    Ok(b.build())
}

pub fn write_matrix(s: &System) -> String {
    let n = s.node_count();
    let mut out = format!("{n}\n");
    for i in s.nodes() {
        let row: Vec<&str> = s
            .nodes()
            .map(|j| if s.has_arc(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_node_map(text: &str, source: &System, target: &System) -> Result<NodeMap> {
    let mut pairs: Vec<(String, Option<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = t.split_whitespace().collect();
        match tokens.as_slice() {
            [src, "=>", "!"] => pairs.push((src.to_string(), None)),
            [src, "=>", dst] => pairs.push((src.to_string(), Some(dst.to_string()))),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `<src> => <dst>` or `<src> => !`, found `{t}`"),
                })
            }
        }
    }
    let borrowed: Vec<(&str, Option<&str>)> = pairs
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_deref()))
        .collect();
    NodeMap::from_pairs(source, target, &borrowed)
}

pub fn write_node_map(map: &NodeMap) -> String {
    let mut out = String::new();
    for v in map.source().nodes() {
        match map.image(v) {
            Some(w) => out.push_str(&format!(
                "{} => {}\n",
                map.source().label(v),
                map.target().label(w)
            )),
            None => out.push_str(&format!("{} => !\n", map.source().label(v))),
        }
    }
    out
}

/// Hex SHA-256 of the canonical edge-list text.
pub fn system_digest(s: &System) -> String {
    let mut h = Sha256::new();
    h.update(write_edge_list(s).as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// DOT export. Symmetric edges render undirected, arcs directed; subsumed
/// nodes are dashed and edges lying on a chordless k-cycle are bold.
pub fn export_dot(s: &System) -> String {
    let subsumed: Vec<NodeId> = {
        let mut ys: Vec<NodeId> = reduction::subsumed_pairs(s).into_iter().map(|(y, _)| y).collect();
        ys.dedup();
        ys
    };
    let cycles = reduction::chordless_cycles(s, 4, s.node_count(), 10_000);
    let mut bold: Vec<(NodeId, NodeId)> = Vec::new();
    for c in &cycles.cycles {
        for (u, v) in c.edges() {
            let e = if u < v { (u, v) } else { (v, u) };
            if !bold.contains(&e) {
                bold.push(e);
            }
        }
    }
    let mut out = String::from("digraph G {\n");
    for v in s.nodes() {
        if subsumed.contains(&v) {
            out.push_str(&format!("  \"{}\" [style=dashed];\n", s.label(v)));
        } else {
            out.push_str(&format!("  \"{}\";\n", s.label(v)));
        }
    }
    for (u, v) in s.symmetric_edges() {
        if bold.contains(&(u, v)) {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [dir=none, style=bold];\n",
                s.label(u),
                s.label(v)
            ));
        } else {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [dir=none];\n",
                s.label(u),
                s.label(v)
            ));
        }
    }
    for (u, v) in s.asymmetric_arcs() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", s.label(u), s.label(v)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trips() {
        let text = "b -- a\nnode q\na -> c\n# note\nb -- a\n";
        let s = parse_edge_list(text).unwrap();
        assert_eq!(s.node_count(), 4);
        let again = parse_edge_list(&write_edge_list(&s)).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn empty_edge_list_is_a_parse_error() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_edge_list("# only a comment\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn malformed_lines_carry_line_numbers() {
        match parse_edge_list("a -- b\na -!- b\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_edge_list("a -- a\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 1);
                assert!(msg.contains("self-loop"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn matrix_round_trips_and_rejects_junk() {
        let text = "3\n0 1 0\n1 0 1\n0 0 0\n";
        let s = parse_matrix(text).unwrap();
        assert_eq!(s.node_count(), 3);
        assert_eq!(write_matrix(&s), text);
        let again = parse_matrix(&write_matrix(&s)).unwrap();
        assert_eq!(s, again);
        assert!(parse_matrix("2\n0 1\n1 2\n").is_err());
        assert!(parse_matrix("2\n0 1\n").is_err());
        assert!(parse_matrix("1\n1\n").is_err());
    }

    #[test]
    fn empty_matrix_is_an_empty_system() {
        let s = parse_matrix("0\n").unwrap();
        assert_eq!(s.node_count(), 0);
        assert_eq!(write_matrix(&s), "0\n");
    }

    #[test]
    fn digest_is_stable_and_structure_sensitive() {
        let a = parse_edge_list("a -- b\n").unwrap();
        let b = parse_edge_list("a -- b\n").unwrap();
        let c = parse_edge_list("a -> b\n").unwrap();
        assert_eq!(system_digest(&a), system_digest(&b));
        assert_ne!(system_digest(&a), system_digest(&c));
    }
}
