//! Canonical fixture systems, shipped as edge-list files and embedded here.
//!
//! The mixed nine-node system `f1` is the recurring worked example: nine
//! symmetric ties plus the one-way arcs `a -> c` and `h -> g`; `f2` adds the
//! symmetric tie `h -- i`.

use crate::io::{parse_edge_list, parse_node_map};
use crate::system::System;
use crate::transform::NodeMap;

pub const MIXED9_EDGES: &str = include_str!("../fixtures/mixed9.edges");
pub const MIXED9_JOINED_EDGES: &str = include_str!("../fixtures/mixed9_joined.edges");
pub const ISOLATED_PAIR_EDGES: &str = include_str!("../fixtures/isolated_pair.edges");
pub const TIED_PAIR_EDGES: &str = include_str!("../fixtures/tied_pair.edges");
pub const PAIR_IDENTITY_MAP: &str = include_str!("../fixtures/pair_identity.map");
pub const ONEWAY_CHAIN_EDGES: &str = include_str!("../fixtures/oneway_chain.edges");
pub const ONEWAY_FORK_EDGES: &str = include_str!("../fixtures/oneway_fork.edges");
pub const DIAMOND_EDGES: &str = include_str!("../fixtures/diamond.edges");
pub const DIAMOND_PLUS_EDGES: &str = include_str!("../fixtures/diamond_plus.edges");
pub const TRIANGLE_PENDANT_EDGES: &str = include_str!("../fixtures/triangle_pendant.edges");
pub const C4_EDGES: &str = include_str!("../fixtures/c4.edges");
pub const BRIDGED_TRIANGLES_EDGES: &str = include_str!("../fixtures/bridged_triangles.edges");

fn parse(text: &str) -> System {
    parse_edge_list(text).expect("fixture files are well-formed")
}

/// Mixed nine-node worked example.
pub fn mixed9() -> System {
    parse(MIXED9_EDGES)
}

/// `f1` plus the symmetric tie `h -- i`, which joins two separated regions.
pub fn mixed9_joined() -> System {
    parse(MIXED9_JOINED_EDGES)
}

/// Two isolated points.
pub fn isolated_pair() -> System {
    parse(ISOLATED_PAIR_EDGES)
}

/// A single symmetric tie.
pub fn tied_pair() -> System {
    parse(TIED_PAIR_EDGES)
}

/// The monotone continuous map between them that fails to preserve
/// separation.
pub fn pair_identity_map() -> NodeMap {
    parse_node_map(PAIR_IDENTITY_MAP, &isolated_pair(), &tied_pair()).expect("fixture map is well-formed")
}

/// One-way chain `x -> y -> z`.
pub fn oneway_chain() -> System {
    parse(ONEWAY_CHAIN_EDGES)
}

/// One source feeding both ends: `y -> x`, `y -> z`.
pub fn oneway_fork() -> System {
    parse(ONEWAY_FORK_EDGES)
}

/// Four-cycle with `x` and `z` opposite.
pub fn diamond() -> System {
    parse(DIAMOND_EDGES)
}

/// The diamond plus the diagonal `x -- z`; the endpoints of the diagonal
/// have identical singleton closures.
pub fn diamond_plus() -> System {
    parse(DIAMOND_PLUS_EDGES)
}

/// Triangle `p, x, y` with pendant `z` on `y`: the probe for the
/// triadic-addition continuity claim.
pub fn triangle_pendant() -> System {
    parse(TRIANGLE_PENDANT_EDGES)
}

/// Plain chordless four-cycle.
pub fn c4() -> System {
    parse(C4_EDGES)
}

/// Two triangles joined by one bridge edge.
pub fn bridged_triangles() -> System {
    parse(BRIDGED_TRIANGLES_EDGES)
}
