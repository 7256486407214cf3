//! Ground sets, adjacency relations, and node sets.
//!
//! A [`System`] is a finite ordered ground set of labeled nodes together with
//! a directed, irreflexive boolean adjacency relation. Symmetric ties are
//! stored as two arcs. Systems are immutable after construction; "mutations"
//! (edge toggles, node removal) build new systems.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::{Error, Result};

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_system_id() -> u64 {
    NEXT_SYSTEM_ID.fetch_add(1, AtomicOrdering::Relaxed)
}

/// Index of a node within its owning [`System`].
///
/// Index order is the canonical order for all deterministic output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const RESERVED_LABELS: [&str; 5] = ["--", "->", "=>", "!", "#"];

/// Labels must be nonempty, printable, and free of whitespace. A handful of
/// tokens used by the text formats are rejected so every valid system
/// round-trips through them.
pub fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "label is empty",
        });
    }
    if label.chars().any(|c| c.is_whitespace() || c.is_control()) {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "label contains whitespace or control characters",
        });
    }
    if label.starts_with('#') {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "label may not start with '#'",
        });
    }
    if RESERVED_LABELS.contains(&label) {
        return Err(Error::InvalidLabel {
            label: label.to_string(),
            reason: "label collides with a reserved token",
        });
    }
    Ok(())
}

/// A subset of one system's ground set, with bitset semantics.
///
/// Sets are only valid against the system they were created for; the
/// system-level operations check this and report a usage error, while the
/// set-on-set algebra treats a mismatch as a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    sys: u64,
    n: u32,
    words: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl NodeSet {
    fn new(sys: u64, n: usize) -> NodeSet {
        NodeSet {
            sys,
            n: n as u32,
            words: vec![0; words_for(n)],
        }
    }

    pub fn arity(&self) -> usize {
        self.n as usize
    }

    pub(crate) fn system_token(&self) -> u64 {
        self.sys
    }

    pub fn contains(&self, v: NodeId) -> bool {
        let i = v.index();
        i < self.n as usize && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: NodeId) {
        let i = v.index();
        assert!(i < self.n as usize, "node index out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, v: NodeId) {
        let i = v.index();
        assert!(i < self.n as usize, "node index out of range");
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(NodeId((wi * 64) as u32 + b))
                }
            })
        })
    }

    pub fn first(&self) -> Option<NodeId> {
        self.iter().next()
    }

    fn check_peer(&self, other: &NodeSet) {
        assert_eq!(
            self.sys, other.sys,
            "node sets from different systems cannot be combined"
        );
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        self.check_peer(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        self.check_peer(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        let mut out = self.clone();
        out.subtract(other);
        out
    }

    pub fn subtract(&mut self, other: &NodeSet) {
        self.check_peer(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.check_peer(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.check_peer(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Canonical set order: cardinality first, then lexicographic on the
    /// ascending index sequences.
    pub fn canonical_cmp(&self, other: &NodeSet) -> Ordering {
        self.check_peer(other);
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.words.iter().zip(&other.words) {
            let d = a ^ b;
            if d != 0 {
                // Equal cardinality: the set holding the lowest differing
                // index has the smaller element at the first differing
                // position of the two sequences.
                let low = d & d.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Low 64 indices as a machine word; only valid for small systems.
    pub fn as_mask(&self) -> u64 {
        assert!(self.n <= 64, "as_mask requires arity <= 64");
        self.words[0]
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut Vec<u64> {
        &mut self.words
    }
}

/// A finite closure space: ordered labeled nodes plus a directed irreflexive
/// adjacency relation. Row `i` of the relation holds the out-neighbors of
/// node `i`.
#[derive(Debug, Clone)]
pub struct System {
    id: u64,
    labels: Vec<String>,
    index: HashMap<String, u32>,
    words: usize,
    rows: Vec<u64>, // node_count * words
}

impl PartialEq for System {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.rows == other.rows
    }
}

impl Eq for System {}

impl System {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }


    pub(crate) fn system_token(&self) -> u64 {
        self.id
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.labels.len() as u32).map(NodeId)
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).map(|&i| NodeId(i))
    }

    pub fn node_or_err(&self, label: &str) -> Result<NodeId> {
        self.node(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn has_arc(&self, from: NodeId, to: NodeId) -> bool {
        let j = to.index();
        self.rows[from.index() * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn has_symmetric_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.has_arc(a, b) && self.has_arc(b, a)
    }

    /// True when some arc joins the pair, in either direction.
    pub fn has_any_arc(&self, a: NodeId, b: NodeId) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    pub(crate) fn out_row(&self, v: NodeId) -> &[u64] {
        let start = v.index() * self.words;
        &self.rows[start..start + self.words]
    }

    pub fn out_neighbors(&self, v: NodeId) -> NodeSet {
        let mut set = self.empty_set();
        set.words_mut().copy_from_slice(self.out_row(v));
        set
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Out-neighbor mask of a node; only valid for systems of at most 64 nodes.
    pub(crate) fn out_mask(&self, v: usize) -> u64 {
        debug_assert!(self.words == 1);
        self.rows[v]
    }

    pub fn empty_set(&self) -> NodeSet {
        NodeSet::new(self.id, self.node_count())
    }

    pub fn full_set(&self) -> NodeSet {
        let mut set = self.empty_set();
        for v in self.nodes() {
            set.insert(v);
        }
        set
    }

    pub fn set_from_ids<I: IntoIterator<Item = NodeId>>(&self, ids: I) -> NodeSet {
        let mut set = self.empty_set();
        for v in ids {
            set.insert(v);
        }
        set
    }

    pub fn set_from_labels(&self, labels: &[&str]) -> Result<NodeSet> {
        let mut set = self.empty_set();
        for l in labels {
            set.insert(self.node_or_err(l)?);
        }
        Ok(set)
    }

    pub(crate) fn set_from_mask(&self, mask: u64) -> NodeSet {
        assert!(self.node_count() <= 64);
        let mut set = self.empty_set();
        set.words_mut()[0] = mask;
        set
    }

    pub fn validate_set(&self, set: &NodeSet) -> Result<()> {
        if set.system_token() != self.id {
            return Err(Error::ForeignNodeSet);
        }
        Ok(())
    }

    pub fn render_set(&self, set: &NodeSet) -> String {
        let mut out = String::from("{");
        for (k, v) in set.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.label(v));
        }
        out.push('}');
        out
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All arcs in row-major index order.
    pub fn arcs(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for u in self.nodes() {
            for v in self.out_neighbors(u).iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// Exactly the unordered pairs present in both directions, each with the
    /// smaller index first, in canonical order.
    pub fn symmetric_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for u in self.nodes() {
            for v in self.out_neighbors(u).iter() {
                if u < v && self.has_arc(v, u) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Arcs whose reverse is absent, in canonical order.
    pub fn asymmetric_arcs(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for u in self.nodes() {
            for v in self.out_neighbors(u).iter() {
                if !self.has_arc(v, u) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn mutated(&self, f: impl FnOnce(&mut Vec<u64>, usize)) -> System {
        let mut rows = self.rows.clone();
        f(&mut rows, self.words);
        System {
            id: fresh_system_id(),
            labels: self.labels.clone(),
            index: self.index.clone(),
            words: self.words,
            rows,
        }
    }

    fn set_bit(rows: &mut [u64], words: usize, from: usize, to: usize, on: bool) {
        let slot = from * words + to / 64;
        if on {
            rows[slot] |= 1 << (to % 64);
        } else {
            rows[slot] &= !(1 << (to % 64));
        }
    }

    pub fn with_symmetric_edge_removed(&self, x: NodeId, z: NodeId) -> Result<System> {
        if !self.has_symmetric_edge(x, z) {
            return Err(Error::EdgeAbsent(
                self.label(x).to_string(),
                self.label(z).to_string(),
            ));
        }
        Ok(self.mutated(|rows, w| {
            Self::set_bit(rows, w, x.index(), z.index(), false);
            Self::set_bit(rows, w, z.index(), x.index(), false);
        }))
    }

    pub fn with_symmetric_edge_added(&self, x: NodeId, z: NodeId) -> Result<System> {
        if x == z {
            return Err(Error::SelfLoop(self.label(x).to_string()));
        }
        if self.has_any_arc(x, z) {
            return Err(Error::EdgePresent(
                self.label(x).to_string(),
                self.label(z).to_string(),
            ));
        }
        Ok(self.mutated(|rows, w| {
            Self::set_bit(rows, w, x.index(), z.index(), true);
            Self::set_bit(rows, w, z.index(), x.index(), true);
        }))
    }

    pub fn with_arc_removed(&self, from: NodeId, to: NodeId) -> Result<System> {
        if !self.has_arc(from, to) {
            return Err(Error::EdgeAbsent(
                self.label(from).to_string(),
                self.label(to).to_string(),
            ));
        }
        Ok(self.mutated(|rows, w| Self::set_bit(rows, w, from.index(), to.index(), false)))
    }

    pub fn with_arc_added(&self, from: NodeId, to: NodeId) -> Result<System> {
        if from == to {
            return Err(Error::SelfLoop(self.label(from).to_string()));
        }
        if self.has_arc(from, to) {
            return Err(Error::EdgePresent(
                self.label(from).to_string(),
                self.label(to).to_string(),
            ));
        }
        Ok(self.mutated(|rows, w| Self::set_bit(rows, w, from.index(), to.index(), true)))
    }

    /// New system without `v`; surviving nodes keep their labels and relative
    /// order.
    pub fn with_node_removed(&self, v: NodeId) -> System {
        let mut b = SystemBuilder::new();
        for u in self.nodes() {
            if u != v {
                b.ensure_node(self.label(u)).expect("label already validated");
            }
        }
        for (from, to) in self.arcs() {
            if from != v && to != v {
                b.add_arc(self.label(from), self.label(to))
                    .expect("arc endpoints already validated");
            }
        }
        b.build()
    }
}

/// Incremental construction of a [`System`]. Duplicate declarations are
/// idempotent; self-loops are rejected.
#[derive(Debug, Default)]
pub struct SystemBuilder {
    labels: Vec<String>,
    index: HashMap<String, u32>,
    arcs: Vec<(u32, u32)>,
}

impl SystemBuilder {
    pub fn new() -> SystemBuilder {
        SystemBuilder::default()
    }

    pub fn ensure_node(&mut self, label: &str) -> Result<NodeId> {
        if let Some(&i) = self.index.get(label) {
            return Ok(NodeId(i));
        }
        validate_label(label)?;
        let i = self.labels.len() as u32;
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        Ok(NodeId(i))
    }

    pub fn add_arc(&mut self, from: &str, to: &str) -> Result<()> {
        if from == to {
            return Err(Error::SelfLoop(from.to_string()));
        }
        let f = self.ensure_node(from)?;
        let t = self.ensure_node(to)?;
        self.arcs.push((f.0, t.0));
        Ok(())
    }

    pub fn add_symmetric_edge(&mut self, a: &str, b: &str) -> Result<()> {
        self.add_arc(a, b)?;
        self.add_arc(b, a)?;
        Ok(())
    }

    pub fn build(self) -> System {
        let n = self.labels.len();
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for (f, t) in self.arcs {
            System::set_bit(&mut rows, words, f as usize, t as usize, true);
        }
        System {
            id: fresh_system_id(),
            labels: self.labels,
            index: self.index,
            words,
            rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> System {
        let mut b = SystemBuilder::new();
        b.add_symmetric_edge("x", "y").unwrap();
        b.add_symmetric_edge("y", "z").unwrap();
        b.build()
    }

    #[test]
    fn builder_assigns_indices_in_declaration_order() {
        let s = path3();
        assert_eq!(s.node("x"), Some(NodeId(0)));
        assert_eq!(s.node("y"), Some(NodeId(1)));
        assert_eq!(s.node("z"), Some(NodeId(2)));
        assert_eq!(s.label(NodeId(2)), "z");
    }

    #[test]
    fn duplicate_declarations_are_idempotent() {
        let mut b = SystemBuilder::new();
        b.add_symmetric_edge("x", "y").unwrap();
        b.add_symmetric_edge("x", "y").unwrap();
        b.ensure_node("x").unwrap();
        let s = b.build();
        assert_eq!(s.node_count(), 2);
        assert_eq!(s.arc_count(), 2);
    }

    #[test]
    fn self_loops_rejected() {
        let mut b = SystemBuilder::new();
        assert!(matches!(b.add_arc("x", "x"), Err(Error::SelfLoop(_))));
    }

    #[test]
    fn bad_labels_rejected() {
        assert!(validate_label("a b").is_err());
        assert!(validate_label("").is_err());
        assert!(validate_label("#a").is_err());
        assert!(validate_label("--").is_err());
        assert!(validate_label("a#b").is_ok());
        assert!(validate_label("v0").is_ok());
    }

    #[test]
    fn symmetric_and_asymmetric_edges_are_split_exactly() {
        let mut b = SystemBuilder::new();
        b.add_symmetric_edge("a", "b").unwrap();
        b.add_arc("a", "c").unwrap();
        let s = b.build();
        let sym = s.symmetric_edges();
        assert_eq!(sym.len(), 1);
        assert_eq!(s.label(sym[0].0), "a");
        assert_eq!(s.label(sym[0].1), "b");
        let asym = s.asymmetric_arcs();
        assert_eq!(asym.len(), 1);
        assert_eq!(s.label(asym[0].1), "c");
    }

    #[test]
    fn set_algebra_is_exact() {
        let s = path3();
        let xy = s.set_from_labels(&["x", "y"]).unwrap();
        let yz = s.set_from_labels(&["y", "z"]).unwrap();
        assert_eq!(s.render_set(&xy.union(&yz)), "{x,y,z}");
        assert_eq!(s.render_set(&xy.intersection(&yz)), "{y}");
        assert_eq!(s.render_set(&xy.difference(&yz)), "{x}");
        assert!(xy.intersection(&yz).is_subset(&xy));
        assert!(!xy.is_subset(&yz));
    }

    #[test]
    fn canonical_order_is_cardinality_then_index_lex() {
        let s = path3();
        let a = s.set_from_labels(&["x", "z"]).unwrap(); // [0,2]
        let b = s.set_from_labels(&["y", "z"]).unwrap(); // [1,2]
        let c = s.set_from_labels(&["z"]).unwrap();
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(c.canonical_cmp(&a), Ordering::Less);
        let d = s.set_from_labels(&["x", "y"]).unwrap(); // [0,1] < [0,2]
        assert_eq!(d.canonical_cmp(&a), Ordering::Less);
    }

    #[test]
    fn foreign_sets_detected() {
        let s = path3();
        let t = path3();
        let set = t.empty_set();
        assert!(matches!(s.validate_set(&set), Err(Error::ForeignNodeSet)));
        assert!(s.validate_set(&s.empty_set()).is_ok());
        // A clone is the same system.
        let c = s.clone();
        assert!(c.validate_set(&s.empty_set()).is_ok());
    }

    #[test]
    fn mutations_build_new_systems() {
        let s = path3();
        let x = s.node("x").unwrap();
        let y = s.node("y").unwrap();
        let del = s.with_symmetric_edge_removed(x, y).unwrap();
        assert!(!del.has_any_arc(x, y));
        assert!(s.has_symmetric_edge(x, y));
        assert!(del.with_symmetric_edge_removed(x, y).is_err());
        let add = del.with_symmetric_edge_added(x, y).unwrap();
        assert_eq!(add, s);
        let z = s.node("z").unwrap();
        assert!(s.with_symmetric_edge_added(x, z).is_ok());

        let dropped = s.with_node_removed(y);
        assert_eq!(dropped.node_count(), 2);
        assert_eq!(dropped.arc_count(), 0);
        assert_eq!(dropped.label(NodeId(1)), "z");
    }

    #[test]
    fn systems_and_sets_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<System>();
        assert_send_sync::<NodeSet>();
    }

    #[test]
    fn node_set_iteration_crosses_word_boundaries() {
        let mut b = SystemBuilder::new();
        for i in 0..70 {
            b.ensure_node(&format!("n{i}")).unwrap();
        }
        let s = b.build();
        let mut set = s.empty_set();
        set.insert(NodeId(0));
        set.insert(NodeId(63));
        set.insert(NodeId(69));
        assert_eq!(set.len(), 3);
        let got: Vec<u32> = set.iter().map(|v| v.0).collect();
        assert_eq!(got, vec![0, 63, 69]);
    }
}
