//! Subsumption, reduction to an irreducible core, and chordless k-cycles.
//!
//! A node is subsumed when its singleton region sits inside another node's
//! region; subsumed nodes add nothing to the closed-set structure and can be
//! deleted. Iterating that deletion to a fixpoint leaves a system in which
//! every singleton is closed. Chordless cycles of length at least four are
//! the structural residue this process cannot dissolve.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::closure::{self, guard_exponential};
use crate::error::Result;
use crate::system::{NodeId, NodeSet, System};

/// All ordered pairs `(y, x)` with `region({y}) ⊆ region({x})` and `y != x`,
/// i.e. `y` is subsumed by `x`. Canonical order: by subsumed index, then
/// subsumer index.
pub fn subsumed_pairs(s: &System) -> Vec<(NodeId, NodeId)> {
    let regions: Vec<NodeSet> = s
        .nodes()
        .map(|v| closure::region(s, &s.set_from_ids([v])).expect("own set"))
        .collect();
    let mut out = Vec::new();
    for y in s.nodes() {
        for x in s.nodes() {
            if y != x && regions[y.index()].is_subset(&regions[x.index()]) {
                out.push((y, x));
            }
        }
    }
    out
}

/// True when every singleton set is closed.
pub fn is_irreducible(s: &System) -> bool {
    s.nodes().all(|v| {
        let single = s.set_from_ids([v]);
        closure::closure(s, &single).expect("own set") == single
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub deleted: String,
    pub subsumer: String,
}

/// Full record of a reduction run: each deletion with the subsumer that
/// justified it, the irreducible core system, and the surviving nodes as a
/// set over the original ground set.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub core: System,
    pub core_nodes: NodeSet,
}

/// Deletes the least-index subsumed node (tie-break: least subsumer) and its
/// relationships, recomputing subsumption each round, until every singleton
/// is closed. Deterministic and fully traced.
pub fn reduce(s: &System) -> ReductionTrace {
    reduce_by(s, |_pairs| 0)
}

/// Reduction with an arbitrary choice of which subsumed node goes next;
/// `pick` receives the canonical subsumption pair list of the current round.
/// Exists so order-independence of the core can be tested empirically.
pub fn reduce_by(s: &System, mut pick: impl FnMut(&[(NodeId, NodeId)]) -> usize) -> ReductionTrace {
    let mut cur = s.clone();
    let mut steps = Vec::new();
    loop {
        // Keep only the first (least) subsumer per subsumed node so `pick`
        // indexes distinct deletion candidates.
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for (y, x) in subsumed_pairs(&cur) {
            if pairs.last().map(|(py, _)| *py) != Some(y) {
                pairs.push((y, x));
            }
        }
        if pairs.is_empty() {
            break;
        }
        let (y, x) = pairs[pick(&pairs).min(pairs.len() - 1)];
        steps.push(ReductionStep {
            deleted: cur.label(y).to_string(),
            subsumer: cur.label(x).to_string(),
        });
        cur = cur.with_node_removed(y);
    }
    let core_nodes = s.set_from_ids(
        s.nodes()
            .filter(|v| cur.node(s.label(*v)).is_some()),
    );
    ReductionTrace {
        steps,
        core: cur,
        core_nodes,
    }
}

/// Distinct core label sets observed over seeded random deletion orders.
/// A single entry means the runs agreed; more entries are a reportable
/// instability of the reduction order on this instance.
#[derive(Debug, Clone)]
pub struct OrderAudit {
    pub cores: Vec<Vec<String>>,
}

impl OrderAudit {
    pub fn stable(&self) -> bool {
        self.cores.len() == 1
    }
}

pub fn order_independence_audit(s: &System, tries: usize, seed: u64) -> OrderAudit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cores: Vec<Vec<String>> = vec![core_labels(&reduce(s))];
    for _ in 0..tries {
        let trace = reduce_by(s, |pairs| (rng.next_u64() % pairs.len() as u64) as usize);
        let labels = core_labels(&trace);
        if !cores.contains(&labels) {
            cores.push(labels);
        }
    }
    cores.sort();
    OrderAudit { cores }
}

fn core_labels(trace: &ReductionTrace) -> Vec<String> {
    trace.core.labels().map(str::to_string).collect()
}

// ---------------------------------------------------------------------------
// Chordless k-cycles.

/// A cycle of length >= 4 through symmetric edges with no arc, in either
/// direction, between non-consecutive vertices. Stored in canonical form:
/// minimal vertex first, lexicographically smaller direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCycle {
    vertices: Vec<NodeId>,
}

impl KCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.vertices
    }

    /// Consecutive vertex pairs, including the closing edge.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn render(&self, s: &System) -> String {
        let names: Vec<&str> = self.vertices.iter().map(|&v| s.label(v)).collect();
        format!("<{}>", names.join(","))
    }

    /// Direct adjacency re-check: symmetric consecutive edges, no arcs
    /// elsewhere, length at least four.
    pub fn verify_chordless(&self, s: &System) -> bool {
        let k = self.vertices.len();
        if k < 4 {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                let (u, v) = (self.vertices[i], self.vertices[j]);
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if consecutive {
                    if !s.has_symmetric_edge(u, v) {
                        return false;
                    }
                } else if s.has_any_arc(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Chordless cycle enumeration, deduplicated in canonical order and sorted
/// by length then vertex sequence. `truncated` flags an output cap hit.
#[derive(Debug, Clone)]
pub struct CycleEnumeration {
    pub cycles: Vec<KCycle>,
    pub truncated: bool,
}

/// Enumerates chordless cycles with `min_len <= length <= max_len` by DFS
/// from each anchor vertex, pruning on chord violations. Every emitted cycle
/// is re-verified against the adjacency before it is returned.
pub fn chordless_cycles(
    s: &System,
    min_len: usize,
    max_len: usize,
    limit: usize,
) -> CycleEnumeration {
    let min_len = min_len.max(4);
    let max_len = max_len.min(s.node_count());
    let mut out = CycleEnumeration {
        cycles: Vec::new(),
        truncated: false,
    };
    if max_len < min_len {
        return out;
    }
    for anchor in s.nodes() {
        let starts: Vec<NodeId> = s
            .out_neighbors(anchor)
            .iter()
            .filter(|&w| w > anchor && s.has_arc(w, anchor))
            .collect();
        for second in starts {
            let mut path = vec![anchor, second];
            let mut on_path = s.empty_set();
            on_path.insert(anchor);
            on_path.insert(second);
            search(
                s, anchor, min_len, max_len, limit, &mut path, &mut on_path, &mut out,
            );
            if out.truncated {
                return out;
            }
        }
    }
    out.cycles
        .sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    s: &System,
    anchor: NodeId,
    min_len: usize,
    max_len: usize,
    limit: usize,
    path: &mut Vec<NodeId>,
    on_path: &mut NodeSet,
    out: &mut CycleEnumeration,
) {
    let last = *path.last().expect("path never empty");
    let candidates: Vec<NodeId> = s.out_neighbors(last).iter().collect();
    for w in candidates {
        if out.truncated {
            return;
        }
        if w <= anchor || !s.has_arc(w, last) || on_path.contains(w) {
            continue;
        }
        if path[1..path.len() - 1].iter().any(|&p| s.has_any_arc(w, p)) {
            continue;
        }
        if s.has_any_arc(w, anchor) {
            // Closing is the only legal continuation for an anchor-adjacent
            // candidate; anything longer would keep that adjacency as a
            // chord.
            let len = path.len() + 1;
            if s.has_symmetric_edge(w, anchor)
                && (min_len..=max_len).contains(&len)
                && path[1] < w
            {
                let cycle = KCycle {
                    vertices: path.iter().copied().chain([w]).collect(),
                };
                debug_assert!(cycle.verify_chordless(s));
                if cycle.verify_chordless(s) {
                    if out.cycles.len() == limit {
                        out.truncated = true;
                        return;
                    }
                    out.cycles.push(cycle);
                }
            }
            continue;
        }
        if path.len() + 1 >= max_len {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        search(s, anchor, min_len, max_len, limit, path, on_path, out);
        path.pop();
        on_path.remove(w);
    }
}

// ---------------------------------------------------------------------------
// Characterization of the irreducible core.

/// Comparison of the reduction core against the set of nodes lying on a
/// chordless k-cycle or on a simple path between two distinct k-cycles.
/// Equality is the claim under audit; the symmetric difference carries the
/// witnesses when it fails.
#[derive(Debug, Clone)]
pub struct CharacterizationReport {
    pub pass: bool,
    pub core: NodeSet,
    pub characterized: NodeSet,
    /// In the core but on no cycle or connecting path.
    pub core_only: Vec<NodeId>,
    /// On a cycle or connecting path but reduced away.
    pub characterized_only: Vec<NodeId>,
    pub cycles_truncated: bool,
}

/// "Path between two cycles" is read as: a simple path in the symmetrized
/// relation from a vertex of one chordless k-cycle to a vertex of a distinct
/// one. That reading is part of this report's contract.
pub fn characterization_check(s: &System, max_n: usize) -> Result<CharacterizationReport> {
    let n = s.node_count();
    guard_exponential("characterization check", n, max_n)?;
    let core = reduce(s).core_nodes;
    let enumeration = chordless_cycles(s, 4, n, 10_000);
    let mut characterized = s.empty_set();
    let cycle_sets: Vec<NodeSet> = enumeration
        .cycles
        .iter()
        .map(|c| s.set_from_ids(c.vertices().iter().copied()))
        .collect();
    for set in &cycle_sets {
        characterized.union_with(set);
    }
    for i in 0..cycle_sets.len() {
        for j in i + 1..cycle_sets.len() {
            mark_path_vertices(s, &cycle_sets[i], &cycle_sets[j], &mut characterized);
        }
    }
    let core_only: Vec<NodeId> = core
        .iter()
        .filter(|v| !characterized.contains(*v))
        .collect();
    let characterized_only: Vec<NodeId> = characterized
        .iter()
        .filter(|v| !core.contains(*v))
        .collect();
    Ok(CharacterizationReport {
        pass: core_only.is_empty() && characterized_only.is_empty(),
        core,
        characterized,
        core_only,
        characterized_only,
        cycles_truncated: enumeration.truncated,
    })
}

/// Marks every vertex lying on some simple path from `a` to `b` in the
/// symmetrized relation whose interior avoids both sets (the usual reading
/// of a path between two vertex sets). Exhaustive DFS; callers guard the
/// size.
fn mark_path_vertices(s: &System, a: &NodeSet, b: &NodeSet, marked: &mut NodeSet) {
    for start in a.iter() {
        let mut path = vec![start];
        let mut on_path = s.empty_set();
        on_path.insert(start);
        path_dfs(s, a, b, &mut path, &mut on_path, marked);
    }
}

fn path_dfs(
    s: &System,
    a: &NodeSet,
    b: &NodeSet,
    path: &mut Vec<NodeId>,
    on_path: &mut NodeSet,
    marked: &mut NodeSet,
) {
    let last = *path.last().expect("path never empty");
    for w in s.nodes() {
        if on_path.contains(w) || !s.has_any_arc(last, w) {
            continue;
        }
        if b.contains(w) {
            // Path complete on first contact with the far set.
            for &v in path.iter() {
                marked.insert(v);
            }
            marked.insert(w);
            continue;
        }
        if a.contains(w) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        path_dfs(s, a, b, path, on_path, marked);
        path.pop();
        on_path.remove(w);
    }
}
