//! Neighborhood, region, and neighborhood-closure operators, closed-set
//! machinery, and a closure-axiom verifier.
//!
//! The neighborhood of a set `Y` collects the out-neighbors of its members
//! that lie outside `Y`; the region it dominates is `Y` united with its
//! neighborhood; and the neighborhood closure of `Y` is the set of all nodes
//! whose singleton region is contained in the region of `Y`. The closure is
//! always computed directly from that definition; precomputed region tables
//! are an explicit accelerator used by the exhaustive kernels.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::system::{NodeId, NodeSet, System};

/// Default ceiling for exponential enumerations.
pub const DEFAULT_MAX_N: usize = 20;
/// Hard refusal point for exponential enumerations, regardless of flags.
pub const HARD_MAX_N: usize = 28;

pub(crate) fn guard_exponential(what: &'static str, n: usize, max_n: usize) -> Result<()> {
    let limit = max_n.min(HARD_MAX_N);
    if n > limit {
        return Err(Error::SizeLimit { what, n, limit });
    }
    Ok(())
}

/// Out-neighbors of `y`, excluding `y` itself.
pub fn neighborhood(s: &System, y: &NodeSet) -> Result<NodeSet> {
    s.validate_set(y)?;
    let mut out = s.empty_set();
    for v in y.iter() {
        let row = s.out_row(v);
        for (a, b) in out.words_mut().iter_mut().zip(row) {
            *a |= b;
        }
    }
    out.subtract(y);
    Ok(out)
}

/// The region dominated by `y`: the set united with its neighborhood.
pub fn region(s: &System, y: &NodeSet) -> Result<NodeSet> {
    s.validate_set(y)?;
    let mut out = y.clone();
    for v in y.iter() {
        let row = s.out_row(v);
        for (a, b) in out.words_mut().iter_mut().zip(row) {
            *a |= b;
        }
    }
    Ok(out)
}

fn singleton_region_is_subset(s: &System, x: NodeId, bound: &NodeSet) -> bool {
    if !bound.contains(x) {
        return false;
    }
    s.out_row(x)
        .iter()
        .zip(bound.words())
        .all(|(r, b)| r & !b == 0)
}

/// Neighborhood closure: every node whose singleton region lies inside the
/// region of `y`. Satisfies `y ⊆ closure(y) ⊆ region(y)`.
pub fn closure(s: &System, y: &NodeSet) -> Result<NodeSet> {
    let bound = region(s, y)?;
    let mut out = s.empty_set();
    for x in s.nodes() {
        if singleton_region_is_subset(s, x, &bound) {
            out.insert(x);
        }
    }
    Ok(out)
}

pub fn is_closed(s: &System, y: &NodeSet) -> Result<bool> {
    Ok(closure(s, y)? == *y)
}

/// The family of all closed sets of a system, canonically ordered by
/// cardinality and then lexicographically on node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSetFamily {
    sets: Vec<NodeSet>,
}

impl ClosedSetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NodeSet> {
        self.sets.iter()
    }

    pub fn contains(&self, set: &NodeSet) -> bool {
        self.sets.iter().any(|s| s == set)
    }

    /// First pair whose intersection falls outside the family, if any.
    pub fn intersection_closure_violation(&self) -> Option<(&NodeSet, &NodeSet)> {
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                if !self.contains(&a.intersection(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Materializes `{ closure(Y) : Y ⊆ P }`, deduplicated and canonically
/// ordered.
pub fn enumerate_closed_sets(s: &System, max_n: usize) -> Result<ClosedSetFamily> {
    let n = s.node_count();
    guard_exponential("closed-set enumeration", n, max_n)?;
    let regions = region_table(s);
    let mut seen: HashSet<u64> = HashSet::new();
    for mask in 0u64..(1u64 << n) {
        seen.insert(closure_mask(&regions, mask));
    }
    let mut sets: Vec<NodeSet> = seen.into_iter().map(|m| s.set_from_mask(m)).collect();
    sets.sort_by(|a, b| a.canonical_cmp(b));
    Ok(ClosedSetFamily { sets })
}

/// All inclusion-minimal subsets of `y` with the same closure as `y`.
pub fn generators(s: &System, y: &NodeSet, max_n: usize) -> Result<Vec<NodeSet>> {
    s.validate_set(y)?;
    let members: Vec<NodeId> = y.iter().collect();
    guard_exponential("generator search", members.len(), max_n)?;
    let target = closure(s, y)?;
    let mut found: Vec<NodeSet> = Vec::new();
    // Ascending popcount so minimality reduces to a subset check against
    // generators already kept.
    let mut candidates: Vec<u64> = (0..1u64 << members.len()).collect();
    candidates.sort_by_key(|m| (m.count_ones(), *m));
    for cand in candidates {
        let sub = s.set_from_ids(
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| cand >> i & 1 == 1)
                .map(|(_, v)| *v),
        );
        if found.iter().any(|g| g.is_subset(&sub)) {
            continue;
        }
        if closure(s, &sub)? == target {
            found.push(sub);
        }
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    Ok(found)
}

// ---------------------------------------------------------------------------
// Mask kernels for exhaustive small-system work (n <= 64 always holds under
// the exponential guards).

/// Singleton regions as machine words, indexed by node.
pub(crate) fn region_table(s: &System) -> Vec<u64> {
    assert!(s.node_count() <= 64);
    (0..s.node_count())
        .map(|v| s.out_mask(v) | (1 << v))
        .collect()
}

pub(crate) fn region_mask(regions: &[u64], set: u64) -> u64 {
    let mut acc = set;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        acc |= regions[v];
    }
    acc
}

pub(crate) fn closure_mask(regions: &[u64], set: u64) -> u64 {
    let bound = region_mask(regions, set);
    let mut out = 0;
    for (v, r) in regions.iter().enumerate() {
        if r & !bound == 0 {
            out |= 1 << v;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Axiom verification.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
}

/// Outcome of checking extensivity, monotonicity, idempotence, and
/// intersection-closedness of the enumerated family. A `None` witness means
/// the axiom held on every pair inspected.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub mode: VerifyMode,
    pub extensive_violation: Option<NodeSet>,
    pub monotone_violation: Option<(NodeSet, NodeSet)>,
    pub idempotent_violation: Option<NodeSet>,
    pub intersection_violation: Option<(NodeSet, NodeSet)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.extensive_violation.is_none()
            && self.monotone_violation.is_none()
            && self.idempotent_violation.is_none()
            && self.intersection_violation.is_none()
    }
}

/// Exhaustive monotonicity needs a `3^n` sweep, so exhaustive mode is capped
/// tighter than the general exponential guard.
const EXHAUSTIVE_AXIOM_MAX_N: usize = 16;
const SAMPLES: usize = 4096;

/// Verifies the closure axioms for an arbitrary closure-candidate operator.
/// Exhaustive over all sets and subset pairs when the ground set is small
/// enough, deterministic seeded sampling otherwise.
pub fn verify_axioms_with(
    s: &System,
    op: impl Fn(u64) -> u64,
    max_n: usize,
) -> Result<AxiomReport> {
    let n = s.node_count();
    guard_exponential("axiom verification", n, max_n.min(HARD_MAX_N))?;
    if n <= max_n.min(EXHAUSTIVE_AXIOM_MAX_N) {
        return Ok(verify_exhaustive(s, op));
    }
    Ok(verify_sampled(s, op))
}

/// Verifies that the neighborhood closure is a closure operator on `s`.
pub fn verify_closure_axioms(s: &System, max_n: usize) -> Result<AxiomReport> {
    if s.node_count() == 0 {
        return Ok(AxiomReport {
            mode: VerifyMode::Exhaustive,
            extensive_violation: None,
            monotone_violation: None,
            idempotent_violation: None,
            intersection_violation: None,
        });
    }
    let regions = region_table(s);
    verify_axioms_with(s, move |m| closure_mask(&regions, m), max_n)
}

fn verify_exhaustive(s: &System, op: impl Fn(u64) -> u64) -> AxiomReport {
    let n = s.node_count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut report = AxiomReport {
        mode: VerifyMode::Exhaustive,
        extensive_violation: None,
        monotone_violation: None,
        idempotent_violation: None,
        intersection_violation: None,
    };
    let mut images: HashSet<u64> = HashSet::new();
    for y in 0..=full {
        let cy = op(y);
        images.insert(cy);
        if report.extensive_violation.is_none() && y & !cy != 0 {
            report.extensive_violation = Some(s.set_from_mask(y));
        }
        if report.idempotent_violation.is_none() && op(cy) != cy {
            report.idempotent_violation = Some(s.set_from_mask(y));
        }
        if y == full {
            break; // avoid overflow when n == 64
        }
    }
    // Monotonicity over all nested pairs via submask enumeration.
    'outer: for z in 0..=full {
        let cz = op(z);
        let mut y = z;
        loop {
            if op(y) & !cz != 0 {
                report.monotone_violation = Some((s.set_from_mask(y), s.set_from_mask(z)));
                break 'outer;
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & z;
        }
        if z == full {
            break;
        }
    }
    let family: Vec<u64> = images.into_iter().collect();
    'pairs: for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            let meet = a & b;
            if op(meet) != meet {
                report.intersection_violation = Some((s.set_from_mask(a), s.set_from_mask(b)));
                break 'pairs;
            }
        }
    }
    report
}

fn verify_sampled(s: &System, op: impl Fn(u64) -> u64) -> AxiomReport {
    let n = s.node_count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e65_7463_6c6f_7375); // fixed: deterministic reports
    let mut report = AxiomReport {
        mode: VerifyMode::Sampled,
        extensive_violation: None,
        monotone_violation: None,
        idempotent_violation: None,
        intersection_violation: None,
    };
    for _ in 0..SAMPLES {
        let y = rng.next_u64() & full;
        let z = y | (rng.next_u64() & full);
        let cy = op(y);
        let cz = op(z);
        if report.extensive_violation.is_none() && y & !cy != 0 {
            report.extensive_violation = Some(s.set_from_mask(y));
        }
        if report.idempotent_violation.is_none() && op(cy) != cy {
            report.idempotent_violation = Some(s.set_from_mask(y));
        }
        if report.monotone_violation.is_none() && cy & !cz != 0 {
            report.monotone_violation = Some((s.set_from_mask(y), s.set_from_mask(z)));
        }
        if report.intersection_violation.is_none() {
            let meet = cy & cz;
            if op(meet) != meet {
                report.intersection_violation = Some((s.set_from_mask(cy), s.set_from_mask(cz)));
            }
        }
    }
    report
}
