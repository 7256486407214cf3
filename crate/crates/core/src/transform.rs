//! Atomistic transformations between closure systems.
//!
//! A [`NodeMap`] sends each source node either to a distinct target node or
//! to nothing (deleted); set images are unions of node images, so the map is
//! monotone by construction and can never merge two individuals. Continuity
//! (`Y.closure.f ⊆ Y.f.closure'` for every `Y`) is decided by exhaustive
//! scan; [`check_edge_deletion`] and [`check_edge_addition`] are the fast,
//! literal single-edge rules whose agreement with the exhaustive scan is
//! audited rather than assumed.

use crate::closure::{self, guard_exponential};
use crate::error::{Error, Result};
use crate::system::{NodeId, NodeSet, System};

/// Injective partial node map between two systems; the survive-or-delete
/// shape of an atomistic transformation.
#[derive(Debug, Clone)]
pub struct NodeMap {
    source: System,
    target: System,
    map: Vec<Option<u32>>,
}

impl NodeMap {
    pub fn from_pairs(
        source: &System,
        target: &System,
        pairs: &[(&str, Option<&str>)],
    ) -> Result<NodeMap> {
        let mut map: Vec<Option<Option<u32>>> = vec![None; source.node_count()];
        for (src, dst) in pairs {
            let s = source.node_or_err(src)?;
            if map[s.index()].is_some() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("source node `{src}` mapped twice"),
                });
            }
            let image = match dst {
                Some(d) => Some(target.node_or_err(d)?.0),
                None => None,
            };
            map[s.index()] = Some(image);
        }
        let mut flat = Vec::with_capacity(map.len());
        for (i, slot) in map.into_iter().enumerate() {
            match slot {
                Some(img) => flat.push(img),
                None => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!(
                            "source node `{}` has no mapping",
                            source.label(NodeId(i as u32))
                        ),
                    })
                }
            }
        }
        Self::new_checked(source.clone(), target.clone(), flat)
    }

    /// Matches nodes by label; source nodes absent from the target are
    /// deleted. This is the identity map onto an edge-mutated or
    /// node-deleted copy of a system.
    pub fn by_label(source: &System, target: &System) -> Result<NodeMap> {
        let map = source
            .nodes()
            .map(|v| target.node(source.label(v)).map(|w| w.0))
            .collect();
        Self::new_checked(source.clone(), target.clone(), map)
    }

    fn new_checked(source: System, target: System, map: Vec<Option<u32>>) -> Result<NodeMap> {
        let mut seen = vec![false; target.node_count()];
        for img in map.iter().flatten() {
            if seen[*img as usize] {
                return Err(Error::Config(
                    "node map is not injective on surviving nodes".to_string(),
                ));
            }
            seen[*img as usize] = true;
        }
        Ok(NodeMap {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &System {
        &self.source
    }

    pub fn target(&self) -> &System {
        &self.target
    }

    pub fn image(&self, v: NodeId) -> Option<NodeId> {
        self.map[v.index()].map(NodeId)
    }

    pub fn deletes(&self, v: NodeId) -> bool {
        self.map[v.index()].is_none()
    }

    /// Set image: the union of member images. The empty set maps to the
    /// empty set.
    pub fn apply(&self, y: &NodeSet) -> Result<NodeSet> {
        self.source.validate_set(y)?;
        let mut out = self.target.empty_set();
        for v in y.iter() {
            if let Some(w) = self.image(v) {
                out.insert(w);
            }
        }
        Ok(out)
    }

    /// Union-of-images maps are monotone by construction; the check exists
    /// for contract parity with table transformations.
    pub fn is_monotone(&self) -> bool {
        true
    }

    pub(crate) fn image_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if let Some(w) = self.map[v] {
                out |= 1 << w;
            }
        }
        out
    }

    /// Exhaustive continuity scan over every source subset, in ascending
    /// mask order; the first violation is minimized by greedy element
    /// removal. The result is deterministic regardless of internal schedule.
    pub fn is_continuous(&self, max_n: usize) -> Result<ContinuityVerdict> {
        continuity_scan(self, max_n)
    }

    /// Every closed target set must be covered by the image of the ground
    /// set; for node maps that containment is also sufficient.
    pub fn is_surjective(&self, max_n: usize) -> Result<bool> {
        let family = closure::enumerate_closed_sets(&self.target, max_n)?;
        let image = self.apply(&self.source.full_set())?;
        let covered = family.iter().all(|f| f.is_subset(&image));
        Ok(covered)
    }

    /// Node-level composition; deletion propagates. The intermediate
    /// systems must agree.
    pub fn compose(&self, g: &NodeMap) -> Result<NodeMap> {
        let compatible = self.target.system_token() == g.source.system_token()
            || self.target == g.source;
        if !compatible {
            return Err(Error::SystemMismatch(
                "composition requires the first map's target to be the second map's source",
            ));
        }
        let map = self
            .map
            .iter()
            .map(|slot| slot.and_then(|w| g.map[w as usize]))
            .collect();
        NodeMap::new_checked(self.source.clone(), g.target.clone(), map)
    }
}

/// Continuity decision with a minimal violating witness when negative.
#[derive(Debug, Clone)]
pub struct ContinuityVerdict {
    pub continuous: bool,
    /// Source set whose mapped closure escapes the closure of its image; no
    /// single element can be removed without losing the violation.
    pub witness: Option<NodeSet>,
    /// A target node in `witness.closure.f` but not `witness.f.closure'`.
    pub offending: Option<NodeId>,
}

impl ContinuityVerdict {
    fn positive() -> ContinuityVerdict {
        ContinuityVerdict {
            continuous: true,
            witness: None,
            offending: None,
        }
    }
}

pub(crate) trait MaskTransform {
    fn mask_source(&self) -> &System;
    fn mask_target(&self) -> &System;
    fn mask_image(&self, mask: u64) -> u64;
}

impl MaskTransform for NodeMap {
    fn mask_source(&self) -> &System {
        &self.source
    }
    fn mask_target(&self) -> &System {
        &self.target
    }
    fn mask_image(&self, mask: u64) -> u64 {
        self.image_mask(mask)
    }
}

pub(crate) fn continuity_scan<T: MaskTransform>(f: &T, max_n: usize) -> Result<ContinuityVerdict> {
    let n = f.mask_source().node_count();
    guard_exponential("continuity check", n, max_n)?;
    if f.mask_target().node_count() > 64 {
        return Err(Error::SizeLimit {
            what: "continuity check target",
            n: f.mask_target().node_count(),
            limit: 64,
        });
    }
    let src_regions = region_table_or_empty(f.mask_source());
    let tgt_regions = region_table_or_empty(f.mask_target());
    let violation = |mask: u64| -> Option<u64> {
        let mapped_closure = f.mask_image(closure::closure_mask(&src_regions, mask));
        let closed_image = closure::closure_mask(&tgt_regions, f.mask_image(mask));
        let escaped = mapped_closure & !closed_image;
        (escaped != 0).then_some(escaped)
    };
    let top = if n == 0 { 0 } else { 1u64 << n };
    for mask in 0..top {
        if violation(mask).is_some() {
            let mut witness = mask;
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if violation(witness & !bit).is_some() {
                    witness &= !bit;
                }
            }
            let escaped = violation(witness).expect("witness still violates");
            return Ok(ContinuityVerdict {
                continuous: false,
                witness: Some(f.mask_source().set_from_mask(witness)),
                offending: Some(NodeId(escaped.trailing_zeros())),
            });
        }
    }
    Ok(ContinuityVerdict::positive())
}

fn region_table_or_empty(s: &System) -> Vec<u64> {
    if s.node_count() == 0 {
        Vec::new()
    } else {
        crate::closure::region_table(s)
    }
}

// ---------------------------------------------------------------------------
// Single-edge mutations and their fast-path verdicts.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    Delete,
    Add,
}

/// A single-edge change. Symmetric mutations touch both directions.
#[derive(Debug, Clone)]
pub struct EdgeMutation {
    pub kind: MutationKind,
    pub x: NodeId,
    pub z: NodeId,
    pub symmetric: bool,
}

pub fn apply_mutation(s: &System, m: &EdgeMutation) -> Result<System> {
    match (m.kind, m.symmetric) {
        (MutationKind::Delete, true) => s.with_symmetric_edge_removed(m.x, m.z),
        (MutationKind::Delete, false) => s.with_arc_removed(m.x, m.z),
        (MutationKind::Add, true) => s.with_symmetric_edge_added(m.x, m.z),
        (MutationKind::Add, false) => s.with_arc_added(m.x, m.z),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelDecision {
    Continuous,
    DiscontinuousA,
    DiscontinuousB,
}

/// Fast-path verdict for deleting the symmetric edge `(x, z)`, carrying the
/// evidence for whichever clause fired.
#[derive(Debug, Clone)]
pub struct DelVerdict {
    pub decision: DelDecision,
    pub closure_x: NodeSet,
    pub closure_z: NodeSet,
    /// For clause (a): `(member, owner)` with `member ∈ closure({owner})`.
    pub membership: Option<(NodeId, NodeId)>,
    /// For clause (b): a chordless cycle of length >= 4 through the edge.
    pub cycle: Option<Vec<NodeId>>,
}

/// Literal two-clause rule for the discontinuity of a symmetric edge
/// deletion: (a) one endpoint lies in the other's singleton closure and the
/// two closures differ, or (b) the edge sits on a chordless cycle of length
/// at least four and one endpoint has exactly two out-neighbors. This is an
/// advisory verdict; the exhaustive scan is authoritative, and disagreements
/// between the two are audit findings.
pub fn check_edge_deletion(s: &System, x: NodeId, z: NodeId) -> Result<DelVerdict> {
    if !s.has_symmetric_edge(x, z) {
        return Err(Error::EdgeAbsent(
            s.label(x).to_string(),
            s.label(z).to_string(),
        ));
    }
    let cx = closure::closure(s, &s.set_from_ids([x]))?;
    let cz = closure::closure(s, &s.set_from_ids([z]))?;
    let membership = if cx.contains(z) {
        Some((z, x))
    } else if cz.contains(x) {
        Some((x, z))
    } else {
        None
    };
    if membership.is_some() && cx != cz {
        return Ok(DelVerdict {
            decision: DelDecision::DiscontinuousA,
            closure_x: cx,
            closure_z: cz,
            membership,
            cycle: None,
        });
    }
    if s.out_degree(x) == 2 || s.out_degree(z) == 2 {
        if let Some(cycle) = chordless_cycle_through_edge(s, x, z) {
            return Ok(DelVerdict {
                decision: DelDecision::DiscontinuousB,
                closure_x: cx,
                closure_z: cz,
                membership: None,
                cycle: Some(cycle),
            });
        }
    }
    Ok(DelVerdict {
        decision: DelDecision::Continuous,
        closure_x: cx,
        closure_z: cz,
        membership: None,
        cycle: None,
    })
}

/// First chordless cycle of length >= 4 through the symmetric edge `(x, z)`,
/// in deterministic DFS order. Cycle edges are symmetric; a chord is an arc
/// in either direction between non-consecutive cycle vertices.
fn chordless_cycle_through_edge(s: &System, x: NodeId, z: NodeId) -> Option<Vec<NodeId>> {
    let mut path = vec![x, z];
    let mut on_path = s.empty_set();
    on_path.insert(x);
    on_path.insert(z);
    dfs_chordless(s, x, &mut path, &mut on_path)
}

fn dfs_chordless(
    s: &System,
    anchor: NodeId,
    path: &mut Vec<NodeId>,
    on_path: &mut NodeSet,
) -> Option<Vec<NodeId>> {
    let last = *path.last().expect("path never empty");
    let candidates: Vec<NodeId> = s.out_neighbors(last).iter().collect();
    for w in candidates {
        if !s.has_arc(w, last) || on_path.contains(w) {
            continue;
        }
        // Any arc between w and an interior path vertex would be a chord.
        let interior_chord = path[1..path.len() - 1]
            .iter()
            .any(|&p| s.has_any_arc(w, p));
        if interior_chord {
            continue;
        }
        if s.has_any_arc(w, anchor) {
            // w may only close the cycle; extending past it would leave the
            // anchor adjacency as a chord.
            if path.len() >= 3 && s.has_symmetric_edge(w, anchor) {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue;
        }
        path.push(w);
        on_path.insert(w);
        if let Some(found) = dfs_chordless(s, anchor, path, on_path) {
            return Some(found);
        }
        path.pop();
        on_path.remove(w);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    /// The connectedness rule predicted the exhaustive verdict.
    Match,
    /// The rule predicted continuity but the exhaustive scan found a
    /// violation: a counterexample worth reporting.
    Mismatch,
    /// The rule makes no prediction for unconnected endpoints.
    Vacuous,
    /// No exhaustive verdict was requested or possible.
    Unchecked,
}

/// Verdict for adding the symmetric edge `(x, z)`.
#[derive(Debug, Clone)]
pub struct AddVerdict {
    /// True when x and z already share a neighbor, the case the
    /// addition-continuity rule speaks to.
    pub claim_applies: bool,
    pub common_neighbors: Vec<NodeId>,
    pub oracle: Option<ContinuityVerdict>,
    pub agreement: Agreement,
}

/// Audits the rule "creating an edge between already-connected endpoints is
/// continuous" on one instance. The exhaustive verdict is recorded alongside
/// the rule's prediction; the two are compared, never conflated.
pub fn check_edge_addition(
    s: &System,
    x: NodeId,
    z: NodeId,
    run_oracle: bool,
    max_n: usize,
) -> Result<AddVerdict> {
    if s.has_any_arc(x, z) {
        return Err(Error::EdgePresent(
            s.label(x).to_string(),
            s.label(z).to_string(),
        ));
    }
    let common: Vec<NodeId> = s
        .out_neighbors(x)
        .intersection(&s.out_neighbors(z))
        .iter()
        .collect();
    let claim_applies = !common.is_empty();
    let oracle = if run_oracle {
        let mutated = s.with_symmetric_edge_added(x, z)?;
        Some(NodeMap::by_label(s, &mutated)?.is_continuous(max_n)?)
    } else {
        None
    };
    let agreement = match (&oracle, claim_applies) {
        (None, _) => Agreement::Unchecked,
        (Some(_), false) => Agreement::Vacuous,
        (Some(v), true) if v.continuous => Agreement::Match,
        (Some(_), true) => Agreement::Mismatch,
    };
    Ok(AddVerdict {
        claim_applies,
        common_neighbors: common,
        oracle,
        agreement,
    })
}

/// All unordered pairs with no arc between them but a shared out-neighbor:
/// the candidate edges for triadic closure, in canonical order.
pub fn triadic_candidates(s: &System) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for x in s.nodes() {
        for z in s.nodes() {
            if z <= x || s.has_any_arc(x, z) {
                continue;
            }
            if !s.out_neighbors(x).is_disjoint(&s.out_neighbors(z)) {
                out.push((x, z));
            }
        }
    }
    out
}
