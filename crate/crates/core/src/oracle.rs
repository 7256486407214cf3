//! Brute-force reference implementations and the claim-audit harness.
//!
//! Everything here is deliberately primitive: definitions are evaluated by
//! exhaustive enumeration over small ground sets, and every fast-path rule
//! elsewhere in the crate is compared against these results. Disagreements
//! are first-class findings, not failures; the harness reports them with
//! reproducible instance encodings and never patches a rule to match.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::closure::{
    self, closure_mask, guard_exponential, region_mask, region_table,
};
use crate::error::{Error, Result};
use crate::reduction;
use crate::separation;
use crate::system::{NodeId, NodeSet, System, SystemBuilder};
use crate::transform::{check_edge_deletion, ContinuityVerdict, DelDecision, NodeMap};

/// Set-to-set transformations the exhaustive checks can consume.
pub trait SetTransform {
    fn source(&self) -> &System;
    fn target(&self) -> &System;
    fn image_of(&self, set: &NodeSet) -> NodeSet;
}

impl SetTransform for NodeMap {
    fn source(&self) -> &System {
        NodeMap::source(self)
    }
    fn target(&self) -> &System {
        NodeMap::target(self)
    }
    fn image_of(&self, set: &NodeSet) -> NodeSet {
        self.apply(set).expect("set belongs to the map's source")
    }
}

/// An explicit table from every subset of the source ground set to a subset
/// of the target's. Carries no structural guarantees at all, which is the
/// point: it can represent transformations that are not monotone, not
/// atomistic, and not induced by any node map.
#[derive(Debug, Clone)]
pub struct TableTransform {
    source: System,
    target: System,
    table: Vec<u64>,
}

impl TableTransform {
    pub fn from_fn(
        source: &System,
        target: &System,
        f: impl Fn(u64) -> u64,
    ) -> Result<TableTransform> {
        let n = source.node_count();
        guard_exponential("table transform", n, 20)?;
        if target.node_count() > 64 {
            return Err(Error::SizeLimit {
                what: "table transform target",
                n: target.node_count(),
                limit: 64,
            });
        }
        let table = (0..1u64 << n).map(f).collect();
        Ok(TableTransform {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    /// Tabulates a node map; useful for cross-checking the two
    /// representations against each other.
    pub fn tabulate(map: &NodeMap) -> Result<TableTransform> {
        Self::from_fn(map.source(), map.target(), |m| map.image_mask(m))
    }

    pub fn image_mask(&self, mask: u64) -> u64 {
        self.table[mask as usize]
    }
}

impl SetTransform for TableTransform {
    fn source(&self) -> &System {
        &self.source
    }
    fn target(&self) -> &System {
        &self.target
    }
    fn image_of(&self, set: &NodeSet) -> NodeSet {
        self.target.set_from_mask(self.table[set.as_mask() as usize])
    }
}

#[derive(Debug, Clone)]
pub struct MonotoneVerdict {
    pub monotone: bool,
    /// Nested pair `(Y, Z)` with `Y ⊆ Z` whose images are not nested.
    pub witness: Option<(NodeSet, NodeSet)>,
}

/// Exhaustive monotonicity check over all nested subset pairs (a `3^n`
/// sweep, so capped tighter than the usual exponential guard).
pub fn table_is_monotone(t: &TableTransform) -> Result<MonotoneVerdict> {
    let n = t.source.node_count();
    guard_exponential("table monotonicity check", n, 10)?;
    let top = 1u64 << n;
    for z in 0..top {
        let iz = t.image_mask(z);
        let mut y = z;
        loop {
            if t.image_mask(y) & !iz != 0 {
                return Ok(MonotoneVerdict {
                    monotone: false,
                    witness: Some((t.source.set_from_mask(y), t.source.set_from_mask(z))),
                });
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & z;
        }
    }
    Ok(MonotoneVerdict {
        monotone: true,
        witness: None,
    })
}

/// Definitional continuity check: every source subset in ascending mask
/// order, closures recomputed from the adjacency each time, first violation
/// minimized by greedy element removal. Same contract as the node-map
/// check, but kept as an independent code path so the two can be compared.
pub fn oracle_continuous<T: SetTransform>(f: &T, max_n: usize) -> Result<ContinuityVerdict> {
    let n = f.source().node_count();
    guard_exponential("continuity oracle", n, max_n)?;
    if f.target().node_count() > 64 {
        return Err(Error::SizeLimit {
            what: "continuity oracle target",
            n: f.target().node_count(),
            limit: 64,
        });
    }
    let escape = |mask: u64| -> Result<Option<NodeSet>> {
        let y = f.source().set_from_mask(mask);
        let mapped_closure = f.image_of(&closure::closure(f.source(), &y)?);
        let closed_image = closure::closure(f.target(), &f.image_of(&y))?;
        let escaped = mapped_closure.difference(&closed_image);
        Ok((!escaped.is_empty()).then_some(escaped))
    };
    let top = if n == 0 { 0 } else { 1u64 << n };
    for mask in 0..top {
        if escape(mask)?.is_some() {
            let mut witness = mask;
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if escape(witness & !bit)?.is_some() {
                    witness &= !bit;
                }
            }
            let escaped = escape(witness)?.expect("witness still violates");
            return Ok(ContinuityVerdict {
                continuous: false,
                witness: Some(f.source().set_from_mask(witness)),
                offending: escaped.first(),
            });
        }
    }
    Ok(ContinuityVerdict {
        continuous: true,
        witness: None,
        offending: None,
    })
}

// ---------------------------------------------------------------------------
// Small-graph enumeration.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    Symmetric,
    Directed,
}

impl GraphFamily {
    pub fn tag(self) -> &'static str {
        match self {
            GraphFamily::Symmetric => "sym",
            GraphFamily::Directed => "dir",
        }
    }
}

pub const MAX_ENUM_SYMMETRIC: usize = 6;
pub const MAX_ENUM_DIRECTED: usize = 4;

fn pair_slots(n: usize, family: GraphFamily) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            match family {
                GraphFamily::Symmetric if i < j => slots.push((i, j)),
                GraphFamily::Directed => slots.push((i, j)),
                _ => {}
            }
        }
    }
    slots
}

/// Rebuilds the graph a `(family, n, code)` instance encoding denotes.
/// Nodes are labeled `v0..v(n-1)`; bit `k` of `code` switches the `k`-th
/// pair slot in lexicographic order.
pub fn graph_from_code(family: GraphFamily, n: usize, code: u64) -> System {
    let mut b = SystemBuilder::new();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for l in &labels {
        b.ensure_node(l).expect("generated labels are valid");
    }
    for (k, (i, j)) in pair_slots(n, family).into_iter().enumerate() {
        if code >> k & 1 == 1 {
            match family {
                GraphFamily::Symmetric => b.add_symmetric_edge(&labels[i], &labels[j]),
                GraphFamily::Directed => b.add_arc(&labels[i], &labels[j]),
            }
            .expect("generated edges are valid");
        }
    }
    b.build()
}

/// Every labeled graph on `n` nodes, in ascending code order. All labelings
/// are kept; the claims under audit are label-independent but cheap to check
/// on every labeling.
pub fn enumerate_graphs(n: usize, family: GraphFamily) -> Result<Vec<System>> {
    let (limit, what) = match family {
        GraphFamily::Symmetric => (MAX_ENUM_SYMMETRIC, "symmetric graph enumeration"),
        GraphFamily::Directed => (MAX_ENUM_DIRECTED, "directed graph enumeration"),
    };
    if n > limit {
        return Err(Error::SizeLimit { what, n, limit });
    }
    let slots = pair_slots(n, family).len();
    Ok((0..1u64 << slots)
        .map(|code| graph_from_code(family, n, code))
        .collect())
}

/// Seeded Erdős–Rényi-style symmetric graph; deterministic for a given
/// `(n, edge_prob, seed)` triple across platforms.
pub fn random_symmetric_system(n: usize, edge_prob: f64, seed: u64) -> System {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = if edge_prob >= 1.0 {
        u64::MAX
    } else if edge_prob <= 0.0 {
        0
    } else {
        (edge_prob * u64::MAX as f64) as u64
    };
    let mut b = SystemBuilder::new();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    for l in &labels {
        b.ensure_node(l).expect("generated labels are valid");
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_u64() < threshold {
                b.add_symmetric_edge(&labels[i], &labels[j])
                    .expect("generated edges are valid");
            }
        }
    }
    b.build()
}

// ---------------------------------------------------------------------------
// Map families for the transformation claims.

/// Identity-by-label maps onto each single-symmetric-edge deletion.
pub fn edge_deletion_maps(s: &System) -> Vec<NodeMap> {
    s.symmetric_edges()
        .into_iter()
        .map(|(x, z)| {
            let t = s
                .with_symmetric_edge_removed(x, z)
                .expect("edge listed as present");
            NodeMap::by_label(s, &t).expect("labels unchanged")
        })
        .collect()
}

/// Identity-by-label maps onto each single-symmetric-edge addition.
pub fn edge_addition_maps(s: &System) -> Vec<NodeMap> {
    let mut out = Vec::new();
    for x in s.nodes() {
        for z in s.nodes() {
            if x < z && !s.has_any_arc(x, z) {
                let t = s
                    .with_symmetric_edge_added(x, z)
                    .expect("pair checked absent");
                out.push(NodeMap::by_label(s, &t).expect("labels unchanged"));
            }
        }
    }
    out
}

/// Maps deleting one node each.
pub fn node_deletion_maps(s: &System) -> Vec<NodeMap> {
    s.nodes()
        .map(|v| {
            let t = s.with_node_removed(v);
            NodeMap::by_label(s, &t).expect("surviving labels unchanged")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The audit harness.

#[derive(Debug, Clone)]
pub struct AuditFinding {
    pub claim: &'static str,
    pub family: GraphFamily,
    pub n: usize,
    pub code: u64,
    /// Claim-specific parameters (edge, pair, or map description).
    pub params: String,
    pub expected: String,
    pub observed: String,
    pub witness: String,
}

impl AuditFinding {
    /// Instance encoding sufficient to rebuild the graph under audit.
    pub fn instance(&self) -> String {
        format!("{}:n={}:code={:#x}", self.family.tag(), self.n, self.code)
    }
}

#[derive(Debug, Clone)]
pub struct AuditScope {
    pub claim: &'static str,
    pub family: GraphFamily,
    pub max_n: usize,
    /// Number of elementary checks performed.
    pub instances: usize,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub max_n: usize,
    pub scopes: Vec<AuditScope>,
    pub findings: Vec<AuditFinding>,
}

pub const AUDIT_MAX_N: usize = 6;
const ORACLE_N: usize = 20;

/// Cap for the all-subset-pair sweeps, which grow as `4^n`.
const PAIR_SWEEP_MAX_N: usize = 5;
/// Cap for the transformation-family claims, which multiply maps by subset
/// pairs.
const MAP_FAMILY_MAX_N: usize = 4;

struct Audit {
    scopes: Vec<AuditScope>,
    findings: Vec<AuditFinding>,
}

impl Audit {
    fn graph_code(family: GraphFamily, s: &System) -> u64 {
        // Recover the instance code from the adjacency.
        let n = s.node_count();
        let mut code = 0u64;
        for (k, (i, j)) in pair_slots(n, family).into_iter().enumerate() {
            if s.has_arc(NodeId(i as u32), NodeId(j as u32)) {
                code |= 1 << k;
            }
        }
        code
    }

    #[allow(clippy::too_many_arguments)]
    fn finding(
        &mut self,
        claim: &'static str,
        family: GraphFamily,
        s: &System,
        params: String,
        expected: &str,
        observed: &str,
        witness: String,
    ) {
        self.findings.push(AuditFinding {
            claim,
            family,
            n: s.node_count(),
            code: Self::graph_code(family, s),
            params,
            expected: expected.to_string(),
            observed: observed.to_string(),
            witness,
        });
    }
}

/// Exhaustively instantiates every audited claim over all labeled graphs up
/// to `max_n` nodes (directed families and the heavier sweeps are capped
/// tighter; the per-claim scopes in the report record what actually ran).
/// Deterministic: findings arrive in enumeration order.
pub fn audit(max_n: usize) -> Result<AuditReport> {
    if max_n > AUDIT_MAX_N {
        return Err(Error::SizeLimit {
            what: "claim audit",
            n: max_n,
            limit: AUDIT_MAX_N,
        });
    }
    let mut audit = Audit {
        scopes: Vec::new(),
        findings: Vec::new(),
    };
    let sym: Vec<Vec<System>> = (0..=max_n)
        .map(|n| enumerate_graphs(n, GraphFamily::Symmetric))
        .collect::<Result<_>>()?;
    let dir: Vec<Vec<System>> = (0..=max_n.min(MAX_ENUM_DIRECTED))
        .map(|n| enumerate_graphs(n, GraphFamily::Directed))
        .collect::<Result<_>>()?;

    audit_closure_axioms(&mut audit, &sym, &dir)?;
    audit_closure_order(&mut audit, &sym, &dir);
    audit_generator_within_neighborhood(&mut audit, &sym);
    audit_separation_split(&mut audit, &sym, &dir)?;
    audit_separated_pair_joining(&mut audit, &sym)?;
    audit_edge_deletion_rule(&mut audit, &sym, &dir)?;
    audit_map_families(&mut audit, &sym)?;
    audit_triadic_addition(&mut audit, &sym)?;
    audit_core_characterization(&mut audit, &sym)?;
    audit_twin_edge_invariance(&mut audit, &sym)?;

    Ok(AuditReport {
        max_n,
        scopes: audit.scopes,
        findings: audit.findings,
    })
}

fn families<'a>(
    sym: &'a [Vec<System>],
    dir: &'a [Vec<System>],
    sym_cap: usize,
    dir_cap: usize,
) -> impl Iterator<Item = (GraphFamily, &'a System)> {
    let s = sym
        .iter()
        .take(sym_cap.saturating_add(1))
        .flatten()
        .map(|g| (GraphFamily::Symmetric, g));
    let d = dir
        .iter()
        .take(dir_cap.saturating_add(1))
        .flatten()
        .map(|g| (GraphFamily::Directed, g));
    s.chain(d)
}

fn audit_closure_axioms(a: &mut Audit, sym: &[Vec<System>], dir: &[Vec<System>]) -> Result<()> {
    let claim = "closure-axioms";
    let mut count = [0usize; 2];
    for (family, g) in families(sym, dir, usize::MAX, usize::MAX) {
        count[(family == GraphFamily::Directed) as usize] += 1;
        let report = closure::verify_closure_axioms(g, ORACLE_N)?;
        if !report.all_pass() {
            let witness = [
                report.extensive_violation.as_ref().map(|y| format!("extensive {}", g.render_set(y))),
                report
                    .monotone_violation
                    .as_ref()
                    .map(|(y, z)| format!("monotone {} {}", g.render_set(y), g.render_set(z))),
                report.idempotent_violation.as_ref().map(|y| format!("idempotent {}", g.render_set(y))),
                report
                    .intersection_violation
                    .as_ref()
                    .map(|(y, z)| format!("intersection {} {}", g.render_set(y), g.render_set(z))),
            ]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .join("; ");
            a.finding(claim, family, g, String::new(), "all axioms hold", "violation", witness);
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances: count[0],
    });
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Directed,
        max_n: dir.len() - 1,
        instances: count[1],
    });
    Ok(())
}

fn audit_closure_order(a: &mut Audit, sym: &[Vec<System>], dir: &[Vec<System>]) {
    let claim = "closure-order-matches-region-order";
    let mut instances = 0usize;
    for (family, g) in families(sym, dir, PAIR_SWEEP_MAX_N, usize::MAX) {
        let n = g.node_count();
        if n == 0 {
            continue;
        }
        let regions = region_table(g);
        let top = 1u64 << n;
        let closures: Vec<u64> = (0..top).map(|m| closure_mask(&regions, m)).collect();
        let region_of: Vec<u64> = (0..top).map(|m| region_mask(&regions, m)).collect();
        for y in 0..top {
            for z in 0..top {
                instances += 1;
                let closure_nested = closures[y as usize] & !closures[z as usize] == 0;
                let region_nested = region_of[y as usize] & !region_of[z as usize] == 0;
                if closure_nested != region_nested {
                    a.finding(
                        claim,
                        family,
                        g,
                        format!(
                            "Y={} Z={}",
                            g.render_set(&g.set_from_mask(y)),
                            g.render_set(&g.set_from_mask(z))
                        ),
                        "closure order iff region order",
                        if closure_nested {
                            "closures nested, regions not"
                        } else {
                            "regions nested, closures not"
                        },
                        String::new(),
                    );
                }
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: (sym.len() - 1).min(PAIR_SWEEP_MAX_N),
        instances,
    });
}

fn audit_generator_within_neighborhood(a: &mut Audit, sym: &[Vec<System>]) {
    let claim = "generator-within-neighborhood";
    let mut instances = 0usize;
    for g in sym.iter().flatten() {
        if g.node_count() == 0 {
            continue;
        }
        let regions = region_table(g);
        for y in g.nodes() {
            let eta = regions[y.index()] & !(1 << y.index());
            if eta == 0 {
                continue;
            }
            instances += 1;
            let ybit = 1u64 << y.index();
            let mut found = false;
            let mut x = eta;
            loop {
                if closure_mask(&regions, x) & ybit != 0 {
                    found = true;
                    break;
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & eta;
            }
            if !found {
                a.finding(
                    claim,
                    GraphFamily::Symmetric,
                    g,
                    format!("y={}", g.label(y)),
                    "some neighborhood subset generates y",
                    "no subset of the neighborhood does",
                    String::new(),
                );
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances,
    });
}

fn audit_separation_split(a: &mut Audit, sym: &[Vec<System>], dir: &[Vec<System>]) -> Result<()> {
    let claim = "separation-four-way-split";
    let mut instances = 0usize;
    for (family, g) in families(sym, dir, PAIR_SWEEP_MAX_N, usize::MAX) {
        let n = g.node_count();
        if n == 0 {
            continue;
        }
        let regions = region_table(g);
        let top = 1u64 << n;
        for x in 0..top {
            let rx = region_mask(&regions, x);
            let ex = rx & !x;
            for z in 0..top {
                instances += 1;
                let rz = region_mask(&regions, z);
                let ez = rz & !z;
                let by_regions = rx & rz == 0;
                let by_split = x & z == 0 && x & ez == 0 && ex & z == 0 && ex & ez == 0;
                let reported = separation::are_separated(
                    g,
                    &g.set_from_mask(x),
                    &g.set_from_mask(z),
                )?
                .separated;
                if by_regions != by_split || reported != by_regions {
                    a.finding(
                        claim,
                        family,
                        g,
                        format!(
                            "X={} Z={}",
                            g.render_set(&g.set_from_mask(x)),
                            g.render_set(&g.set_from_mask(z))
                        ),
                        "region disjointness iff four-way split",
                        "decompositions disagree",
                        String::new(),
                    );
                }
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: (sym.len() - 1).min(PAIR_SWEEP_MAX_N),
        instances,
    });
    Ok(())
}

fn audit_separated_pair_joining(a: &mut Audit, sym: &[Vec<System>]) -> Result<()> {
    let claim = "separated-pair-joining-is-discontinuous";
    let mut instances = 0usize;
    for g in sym.iter().flatten() {
        if g.node_count() == 0 {
            continue;
        }
        let regions = region_table(g);
        for x in g.nodes() {
            for z in g.nodes() {
                if z <= x
                    || regions[x.index()] & regions[z.index()] != 0
                    || g.out_degree(x) == 0
                    || g.out_degree(z) == 0
                {
                    continue;
                }
                instances += 1;
                let joined = g.with_symmetric_edge_added(x, z)?;
                let map = NodeMap::by_label(g, &joined)?;
                let verdict = oracle_continuous(&map, ORACLE_N)?;
                if verdict.continuous {
                    a.finding(
                        claim,
                        GraphFamily::Symmetric,
                        g,
                        format!("x={} z={}", g.label(x), g.label(z)),
                        "joining separated non-isolated singletons is discontinuous",
                        "addition is continuous",
                        String::new(),
                    );
                }
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances,
    });
    Ok(())
}

fn audit_edge_deletion_rule(a: &mut Audit, sym: &[Vec<System>], dir: &[Vec<System>]) -> Result<()> {
    let claim = "edge-deletion-rule-vs-exhaustive";
    let mut instances = 0usize;
    for (family, g) in families(sym, dir, usize::MAX, usize::MAX) {
        for (x, z) in g.symmetric_edges() {
            instances += 1;
            let fast = check_edge_deletion(g, x, z)?;
            let deleted = g.with_symmetric_edge_removed(x, z)?;
            let map = NodeMap::by_label(g, &deleted)?;
            let exhaustive = oracle_continuous(&map, ORACLE_N)?;
            let fast_continuous = fast.decision == DelDecision::Continuous;
            if fast_continuous != exhaustive.continuous {
                let witness = exhaustive
                    .witness
                    .as_ref()
                    .map(|w| g.render_set(w))
                    .unwrap_or_default();
                a.finding(
                    claim,
                    family,
                    g,
                    format!("edge={}--{}", g.label(x), g.label(z)),
                    "rule verdict matches exhaustive verdict",
                    &format!(
                        "rule={:?} exhaustive={}",
                        fast.decision,
                        if exhaustive.continuous {
                            "continuous"
                        } else {
                            "discontinuous"
                        }
                    ),
                    witness,
                );
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances,
    });
    Ok(())
}

/// The transformation claims share one constructed family: identity maps
/// onto single-edge mutations and node deletions, filtered for continuity
/// where a claim's hypothesis demands it, plus their pairwise compositions.
fn audit_map_families(a: &mut Audit, sym: &[Vec<System>]) -> Result<()> {
    let mut distribution_checks = 0usize;
    let mut composition_checks = 0usize;
    let mut image_checks = 0usize;
    for g in sym.iter().take(MAP_FAMILY_MAX_N + 1).flatten() {
        let n = g.node_count();
        if n == 0 {
            continue;
        }
        let mut maps = edge_deletion_maps(g);
        maps.extend(edge_addition_maps(g));
        maps.extend(node_deletion_maps(g));

        // Union/intersection distribution holds for every node map.
        for f in &maps {
            distribution_checks += 1;
            audit_distribution(a, g, f)?;
        }

        // Continuity-dependent claims run over the continuous sub-family.
        let continuous: Vec<&NodeMap> = {
            let mut keep = Vec::new();
            for f in &maps {
                if oracle_continuous(f, ORACLE_N)?.continuous {
                    keep.push(f);
                }
            }
            keep
        };
        for f in &continuous {
            image_checks += 1;
            audit_closed_image(a, g, f)?;
            audit_equal_closures(a, g, f)?;
            audit_closed_preimages(a, g, f)?;
        }

        // Compositions: each continuous map chained with a continuous
        // single-mutation map of its target.
        for f in &continuous {
            let mut second_stage = edge_deletion_maps(f.target());
            second_stage.extend(node_deletion_maps(f.target()));
            for gmap in second_stage {
                if !oracle_continuous(&gmap, ORACLE_N)?.continuous {
                    continue;
                }
                composition_checks += 1;
                let composed = f.compose(&gmap)?;
                let verdict = oracle_continuous(&composed, ORACLE_N)?;
                if !verdict.continuous {
                    a.finding(
                        "continuity-composes",
                        GraphFamily::Symmetric,
                        g,
                        describe_map(f, Some(&gmap)),
                        "composition of continuous maps is continuous",
                        "composition is discontinuous",
                        verdict
                            .witness
                            .map(|w| g.render_set(&w))
                            .unwrap_or_default(),
                    );
                }
                if f.is_surjective(ORACLE_N)?
                    && gmap.is_surjective(ORACLE_N)?
                    && !composed.is_surjective(ORACLE_N)?
                {
                    a.finding(
                        "surjectivity-composes",
                        GraphFamily::Symmetric,
                        g,
                        describe_map(f, Some(&gmap)),
                        "composition of surjective maps is surjective",
                        "composition is not surjective",
                        String::new(),
                    );
                }
            }
        }
    }
    let cap = (sym.len() - 1).min(MAP_FAMILY_MAX_N);
    for (claim, instances) in [
        ("image-distributes-over-union-and-intersection", distribution_checks),
        ("closed-image-of-closure", image_checks),
        ("equal-closures-give-equal-image-closures", image_checks),
        ("closed-sets-have-closed-preimages", image_checks),
        ("continuity-composes", composition_checks),
        ("surjectivity-composes", composition_checks),
    ] {
        a.scopes.push(AuditScope {
            claim,
            family: GraphFamily::Symmetric,
            max_n: cap,
            instances,
        });
    }
    Ok(())
}

fn describe_map(f: &NodeMap, g: Option<&NodeMap>) -> String {
    let one = |m: &NodeMap| {
        let deleted: Vec<&str> = m
            .source()
            .nodes()
            .filter(|&v| m.deletes(v))
            .map(|v| m.source().label(v))
            .collect();
        let removed_arcs = m.source().arc_count() as i64
            - m.target().arc_count() as i64;
        format!("deleted-nodes=[{}];arc-delta={}", deleted.join(","), -removed_arcs)
    };
    match g {
        Some(g) => format!("f({}) then g({})", one(f), one(g)),
        None => one(f),
    }
}

fn audit_distribution(a: &mut Audit, g: &System, f: &NodeMap) -> Result<()> {
    let n = g.node_count();
    let top = 1u64 << n;
    for x in 0..top {
        let fx = f.image_mask(x);
        for z in 0..top {
            let fz = f.image_mask(z);
            let meet_ok = f.image_mask(x & z) == fx & fz;
            let join_ok = f.image_mask(x | z) == fx | fz;
            if !meet_ok || !join_ok {
                a.finding(
                    "image-distributes-over-union-and-intersection",
                    GraphFamily::Symmetric,
                    g,
                    describe_map(f, None),
                    "images distribute over union and intersection",
                    if meet_ok { "union broken" } else { "intersection broken" },
                    format!(
                        "X={} Z={}",
                        g.render_set(&g.set_from_mask(x)),
                        g.render_set(&g.set_from_mask(z))
                    ),
                );
                return Ok(());
            }
        }
    }
    Ok(())
}

fn audit_closed_image(a: &mut Audit, g: &System, f: &NodeMap) -> Result<()> {
    let src_regions = region_table(g);
    let tgt = f.target();
    let tgt_regions = if tgt.node_count() == 0 {
        Vec::new()
    } else {
        region_table(tgt)
    };
    for y in 0..1u64 << g.node_count() {
        let fy = f.image_mask(y);
        if closure_mask(&tgt_regions, fy) != fy {
            continue;
        }
        let fcy = f.image_mask(closure_mask(&src_regions, y));
        if fcy != fy {
            a.finding(
                "closed-image-of-closure",
                GraphFamily::Symmetric,
                g,
                describe_map(f, None),
                "closure maps onto the closed image",
                "images differ",
                format!("Y={}", g.render_set(&g.set_from_mask(y))),
            );
            return Ok(());
        }
    }
    Ok(())
}

fn audit_equal_closures(a: &mut Audit, g: &System, f: &NodeMap) -> Result<()> {
    let src_regions = region_table(g);
    let tgt = f.target();
    let tgt_regions = if tgt.node_count() == 0 {
        Vec::new()
    } else {
        region_table(tgt)
    };
    use std::collections::HashMap;
    let mut image_closure_by_closure: HashMap<u64, u64> = HashMap::new();
    for y in 0..1u64 << g.node_count() {
        let cy = closure_mask(&src_regions, y);
        let icy = closure_mask(&tgt_regions, f.image_mask(y));
        match image_closure_by_closure.get(&cy) {
            None => {
                image_closure_by_closure.insert(cy, icy);
            }
            Some(&prev) if prev == icy => {}
            Some(_) => {
                a.finding(
                    "equal-closures-give-equal-image-closures",
                    GraphFamily::Symmetric,
                    g,
                    describe_map(f, None),
                    "sets with one closure share the image closure",
                    "image closures differ",
                    format!("Y={}", g.render_set(&g.set_from_mask(y))),
                );
                return Ok(());
            }
        }
    }
    Ok(())
}

fn audit_closed_preimages(a: &mut Audit, g: &System, f: &NodeMap) -> Result<()> {
    if !f.is_surjective(ORACLE_N)? {
        return Ok(());
    }
    let src_regions = region_table(g);
    let tgt = f.target();
    let tgt_regions = if tgt.node_count() == 0 {
        Vec::new()
    } else {
        region_table(tgt)
    };
    let src_top = 1u64 << g.node_count();
    let closed_sources: Vec<u64> = (0..src_top)
        .map(|m| closure_mask(&src_regions, m))
        .collect();
    let tgt_top = 1u64 << tgt.node_count();
    for t in 0..tgt_top {
        if closure_mask(&tgt_regions, t) != t {
            continue;
        }
        if !closed_sources.iter().any(|&c| f.image_mask(c) == t) {
            a.finding(
                "closed-sets-have-closed-preimages",
                GraphFamily::Symmetric,
                g,
                describe_map(f, None),
                "every closed target set is the image of a closed source set",
                "no closed preimage",
                format!("target={}", tgt.render_set(&tgt.set_from_mask(t))),
            );
            return Ok(());
        }
    }
    Ok(())
}

fn audit_triadic_addition(a: &mut Audit, sym: &[Vec<System>]) -> Result<()> {
    let claim = "triadic-addition-continuity";
    let mut instances = 0usize;
    for g in sym.iter().flatten() {
        for x in g.nodes() {
            for z in g.nodes() {
                if z <= x || g.has_any_arc(x, z) {
                    continue;
                }
                if g.out_neighbors(x).is_disjoint(&g.out_neighbors(z)) {
                    continue;
                }
                instances += 1;
                let joined = g.with_symmetric_edge_added(x, z)?;
                let map = NodeMap::by_label(g, &joined)?;
                let verdict = oracle_continuous(&map, ORACLE_N)?;
                if !verdict.continuous {
                    a.finding(
                        claim,
                        GraphFamily::Symmetric,
                        g,
                        format!("x={} z={}", g.label(x), g.label(z)),
                        "connected-endpoint addition is continuous",
                        "addition is discontinuous",
                        verdict
                            .witness
                            .map(|w| g.render_set(&w))
                            .unwrap_or_default(),
                    );
                }
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances,
    });
    Ok(())
}

fn audit_core_characterization(a: &mut Audit, sym: &[Vec<System>]) -> Result<()> {
    let claim = "irreducible-core-characterization";
    let mut instances = 0usize;
    for g in sym.iter().flatten() {
        if g.node_count() == 0 {
            continue;
        }
        instances += 1;
        let report = reduction::characterization_check(g, ORACLE_N)?;
        if !report.pass {
            let core_only: Vec<&str> = report.core_only.iter().map(|&v| g.label(v)).collect();
            let char_only: Vec<&str> =
                report.characterized_only.iter().map(|&v| g.label(v)).collect();
            a.finding(
                claim,
                GraphFamily::Symmetric,
                g,
                String::new(),
                "core equals cycle-or-connecting-path vertices",
                "sets differ",
                format!(
                    "core-only=[{}] characterized-only=[{}]",
                    core_only.join(","),
                    char_only.join(",")
                ),
            );
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances,
    });
    Ok(())
}

fn audit_twin_edge_invariance(a: &mut Audit, sym: &[Vec<System>]) -> Result<()> {
    let claim = "twin-edge-family-invariance";
    let mut instances = 0usize;
    for g in sym.iter().flatten() {
        for (x, z) in g.symmetric_edges() {
            let cx = closure::closure(g, &g.set_from_ids([x]))?;
            let cz = closure::closure(g, &g.set_from_ids([z]))?;
            if cx != cz {
                continue;
            }
            instances += 1;
            let without = g.with_symmetric_edge_removed(x, z)?;
            let before = closure::enumerate_closed_sets(g, ORACLE_N)?;
            let after = closure::enumerate_closed_sets(&without, ORACLE_N)?;
            let before_masks: Vec<u64> = before.iter().map(|s| s.as_mask()).collect();
            let after_masks: Vec<u64> = after.iter().map(|s| s.as_mask()).collect();
            if before_masks != after_masks {
                let witness = before_masks
                    .iter()
                    .find(|m| !after_masks.contains(m))
                    .or_else(|| after_masks.iter().find(|m| !before_masks.contains(m)))
                    .map(|&m| g.render_set(&g.set_from_mask(m)))
                    .unwrap_or_default();
                a.finding(
                    claim,
                    GraphFamily::Symmetric,
                    g,
                    format!("edge={}--{}", g.label(x), g.label(z)),
                    "toggling a twin edge leaves the closed family unchanged",
                    "closed families differ",
                    witness,
                );
            }
        }
    }
    a.scopes.push(AuditScope {
        claim,
        family: GraphFamily::Symmetric,
        max_n: sym.len() - 1,
        instances,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn enumeration_counts_match_the_pair_slots() {
        assert_eq!(enumerate_graphs(2, GraphFamily::Symmetric).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(3, GraphFamily::Symmetric).unwrap().len(), 8);
        assert_eq!(
            enumerate_graphs(5, GraphFamily::Symmetric).unwrap().len(),
            1024
        );
        assert_eq!(enumerate_graphs(2, GraphFamily::Directed).unwrap().len(), 4);
        assert!(enumerate_graphs(7, GraphFamily::Symmetric).is_err());
        assert!(enumerate_graphs(5, GraphFamily::Directed).is_err());
    }

    #[test]
    fn graph_codes_round_trip() {
        for (k, g) in enumerate_graphs(4, GraphFamily::Symmetric)
            .unwrap()
            .iter()
            .enumerate()
        {
            let code = Audit::graph_code(GraphFamily::Symmetric, g);
            assert_eq!(code, k as u64);
            assert_eq!(&graph_from_code(GraphFamily::Symmetric, 4, code), g);
        }
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let a = random_symmetric_system(10, 0.3, 7);
        let b = random_symmetric_system(10, 0.3, 7);
        assert_eq!(a, b);
        let c = random_symmetric_system(10, 0.3, 8);
        assert!(a != c || a.arc_count() == c.arc_count());
        assert_eq!(random_symmetric_system(5, 0.0, 1).arc_count(), 0);
        assert_eq!(random_symmetric_system(5, 1.0, 1).arc_count(), 20);
    }

    #[test]
    fn table_monotonicity_catches_a_constructed_violation() {
        let src = fixtures::isolated_pair();
        let dst = fixtures::tied_pair();
        let x = 1u64; // {x}
        let xz = 3u64;
        // {x} -> {x',z'} but {x,z} -> {x'}: shrinks under growth.
        let t = TableTransform::from_fn(&src, &dst, move |m| {
            if m == x {
                3
            } else if m == xz {
                1
            } else {
                0
            }
        })
        .unwrap();
        let verdict = table_is_monotone(&t).unwrap();
        assert!(!verdict.monotone);
        let (y, z) = verdict.witness.unwrap();
        assert!(y.is_subset(&z));
    }

    #[test]
    fn tabulated_node_map_agrees_with_the_map() {
        let s = fixtures::c4();
        let f = NodeMap::by_label(&s, &s).unwrap();
        let t = TableTransform::tabulate(&f).unwrap();
        assert!(table_is_monotone(&t).unwrap().monotone);
        let v1 = oracle_continuous(&f, 20).unwrap();
        let v2 = oracle_continuous(&t, 20).unwrap();
        assert_eq!(v1.continuous, v2.continuous);
    }
}
