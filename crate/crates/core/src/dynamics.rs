//! Deterministic seeded simulation of network decomposition.
//!
//! Each step deletes one symmetric edge whose deletion is continuous,
//! chosen uniformly by a seeded generator; when no such edge exists (and no
//! triadic addition fires) the run halts at a fixpoint. Optionally, triadic
//! additions fire with a configured probability and are applied regardless
//! of continuity, with the exhaustive continuity verdict of each addition
//! recorded as collected evidence. The trace is a pure function of the
//! input system and configuration.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::closure::DEFAULT_MAX_N;
use crate::error::{Error, Result};
use crate::io::system_digest;
use crate::oracle::oracle_continuous;
use crate::reduction;
use crate::system::{NodeId, System};
use crate::transform::{check_edge_deletion, DelDecision, NodeMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    DeletionOnly,
    DeletionPlusTriadic,
}

impl SimMode {
    pub fn tag(self) -> &'static str {
        match self {
            SimMode::DeletionOnly => "deletion-only",
            SimMode::DeletionPlusTriadic => "deletion-plus-triadic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checker {
    /// Exhaustive continuity scan; authoritative, size-guarded.
    Oracle,
    /// The literal two-clause deletion rule; advisory, compared against the
    /// scan wherever the size guard allows, with disagreements logged in
    /// the step record.
    FastPath,
}

impl Checker {
    pub fn tag(self) -> &'static str {
        match self {
            Checker::Oracle => "oracle",
            Checker::FastPath => "fastpath",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub seed: u64,
    pub max_steps: usize,
    pub mode: SimMode,
    /// Per-step probability that a triadic addition fires instead of a
    /// deletion; must be zero in deletion-only mode.
    pub p_add: f64,
    pub checker: Checker,
    /// Output cap for the per-step chordless-cycle count.
    pub metric_cycle_cap: usize,
    /// Ground-set ceiling for exhaustive continuity scans.
    pub oracle_max_n: usize,
}

impl SimConfig {
    pub fn new(seed: u64, max_steps: usize, mode: SimMode) -> SimConfig {
        SimConfig {
            seed,
            max_steps,
            mode,
            p_add: 0.0,
            checker: Checker::Oracle,
            metric_cycle_cap: 10_000,
            oracle_max_n: DEFAULT_MAX_N,
        }
    }

    pub fn validate(&self, s: &System) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_add) {
            return Err(Error::Config(format!(
                "p-add must lie in [0, 1], got {}",
                self.p_add
            )));
        }
        if self.mode == SimMode::DeletionOnly && self.p_add != 0.0 {
            return Err(Error::Config(
                "p-add must be zero in deletion-only mode".to_string(),
            ));
        }
        if self.checker == Checker::Oracle && s.node_count() > self.oracle_max_n {
            return Err(Error::SizeLimit {
                what: "oracle-checked simulation",
                n: s.node_count(),
                limit: self.oracle_max_n,
            });
        }
        Ok(())
    }
}

/// Structural metrics of one system state.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub arc_count: usize,
    pub symmetric_edge_count: usize,
    /// Connected components of the symmetrized relation.
    pub component_count: usize,
    /// Distinct nodes subsumed by some other node.
    pub subsumed_node_count: usize,
    /// Node count of the irreducible core.
    pub core_size: usize,
    pub kcycle_count: usize,
    pub kcycles_truncated: bool,
    /// Node triples of the symmetrized relation carrying all three edges.
    pub triangle_count: usize,
    /// closed / (closed + open) triples; zero when no triples exist.
    pub closed_triad_ratio: f64,
}

pub fn metrics(s: &System, cycle_cap: usize) -> MetricsRecord {
    let n = s.node_count();
    // Symmetrized adjacency.
    let adj = |u: NodeId, v: NodeId| s.has_any_arc(u, v);
    let mut component_count = 0usize;
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        component_count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for (v, seen_v) in seen.iter_mut().enumerate() {
                if !*seen_v && adj(NodeId(u as u32), NodeId(v as u32)) {
                    *seen_v = true;
                    stack.push(v);
                }
            }
        }
    }
    let mut closed = 0usize;
    let mut open = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (NodeId(i as u32), NodeId(j as u32), NodeId(k as u32));
                let edges = adj(a, b) as usize + adj(a, c) as usize + adj(b, c) as usize;
                match edges {
                    3 => closed += 1,
                    2 => open += 1,
                    _ => {}
                }
            }
        }
    }
    let subsumed = {
        let mut ys: Vec<NodeId> = reduction::subsumed_pairs(s).into_iter().map(|(y, _)| y).collect();
        ys.dedup();
        ys.len()
    };
    let cycles = reduction::chordless_cycles(s, 4, n, cycle_cap);
    MetricsRecord {
        arc_count: s.arc_count(),
        symmetric_edge_count: s.symmetric_edges().len(),
        component_count,
        subsumed_node_count: subsumed,
        core_size: reduction::reduce(s).core.node_count(),
        kcycle_count: cycles.cycles.len(),
        kcycles_truncated: cycles.truncated,
        triangle_count: closed,
        closed_triad_ratio: if closed + open == 0 {
            0.0
        } else {
            closed as f64 / (closed + open) as f64
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOp {
    Delete,
    Add,
}

#[derive(Debug, Clone)]
pub struct SimStep {
    pub index: usize,
    pub op: StepOp,
    /// Edge endpoints by label, lower index first.
    pub edge: (String, String),
    /// Metrics of the system after the operation.
    pub metrics: MetricsRecord,
    /// For additions: exhaustive continuity verdict of the addition, when
    /// the size guard allowed one.
    pub add_continuous: Option<bool>,
    /// In fast-path runs with the oracle in range: candidate edges whose
    /// rule verdict disagreed with the exhaustive verdict this step. `None`
    /// when no comparison was possible.
    pub mismatches: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltReason {
    /// No continuous deletion existed and no addition fired.
    Fixpoint,
    StepLimit,
}

impl HaltReason {
    pub fn tag(self) -> &'static str {
        match self {
            HaltReason::Fixpoint => "fixpoint",
            HaltReason::StepLimit => "step-limit",
        }
    }
}

/// Complete record of one run. Rendering is byte-stable: the same system
/// and configuration always produce the same trace text.
#[derive(Debug, Clone)]
pub struct SimTrace {
    pub seed: u64,
    pub max_steps: usize,
    pub mode: SimMode,
    pub p_add: f64,
    pub checker: Checker,
    pub metric_cycle_cap: usize,
    pub graph_digest: String,
    pub initial_node_count: usize,
    pub steps: Vec<SimStep>,
    pub halt: HaltReason,
    pub final_metrics: MetricsRecord,
    pub final_system: System,
}

/// Six-significant-digit decimal rendering used by traces and reports.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.000000".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn uniform_unit(rng: &mut ChaCha8Rng) -> f64 {
    // 53-bit mantissa draw; documented in the trace header.
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[(rng.next_u64() % items.len() as u64) as usize]
}

fn deletion_is_continuous(s: &System, x: NodeId, z: NodeId, cfg: &SimConfig) -> Result<bool> {
    match cfg.checker {
        Checker::Oracle => {
            let mutated = s.with_symmetric_edge_removed(x, z)?;
            let map = NodeMap::by_label(s, &mutated)?;
            Ok(map.is_continuous(cfg.oracle_max_n)?.continuous)
        }
        Checker::FastPath => Ok(check_edge_deletion(s, x, z)?.decision == DelDecision::Continuous),
    }
}

/// Runs the simulation. Per step: in triadic mode a uniform draw decides
/// whether an addition fires; otherwise the continuous deletions are
/// enumerated in canonical edge order and one is chosen uniformly. The halt
/// record carries the reason and the final metrics.
pub fn run(s: &System, cfg: &SimConfig) -> Result<SimTrace> {
    cfg.validate(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = s.clone();
    let mut steps: Vec<SimStep> = Vec::new();
    let mut halt = HaltReason::StepLimit;

    for index in 1..=cfg.max_steps {
        let mut fired_addition = false;
        if cfg.mode == SimMode::DeletionPlusTriadic && uniform_unit(&mut rng) < cfg.p_add {
            let candidates = crate::transform::triadic_candidates(&cur);
            if !candidates.is_empty() {
                let (x, z) = pick(&mut rng, &candidates);
                let mutated = cur.with_symmetric_edge_added(x, z)?;
                let add_continuous = if cur.node_count() <= cfg.oracle_max_n {
                    let map = NodeMap::by_label(&cur, &mutated)?;
                    Some(oracle_continuous(&map, cfg.oracle_max_n)?.continuous)
                } else {
                    None
                };
                let edge = (cur.label(x).to_string(), cur.label(z).to_string());
                cur = mutated;
                steps.push(SimStep {
                    index,
                    op: StepOp::Add,
                    edge,
                    metrics: metrics(&cur, cfg.metric_cycle_cap),
                    add_continuous,
                    mismatches: None,
                });
                fired_addition = true;
            }
        }
        if fired_addition {
            continue;
        }

        let mut deletable: Vec<(NodeId, NodeId)> = Vec::new();
        let mut mismatches: Option<Vec<(String, String)>> = None;
        if cfg.checker == Checker::FastPath && cur.node_count() <= cfg.oracle_max_n {
            mismatches = Some(Vec::new());
        }
        for (x, z) in cur.symmetric_edges() {
            let verdict = deletion_is_continuous(&cur, x, z, cfg)?;
            if verdict {
                deletable.push((x, z));
            }
            if let Some(list) = mismatches.as_mut() {
                let mutated = cur.with_symmetric_edge_removed(x, z)?;
                let map = NodeMap::by_label(&cur, &mutated)?;
                let exhaustive = oracle_continuous(&map, cfg.oracle_max_n)?.continuous;
                if exhaustive != verdict {
                    list.push((cur.label(x).to_string(), cur.label(z).to_string()));
                }
            }
        }
        if deletable.is_empty() {
            halt = HaltReason::Fixpoint;
            break;
        }
        let (x, z) = pick(&mut rng, &deletable);
        let edge = (cur.label(x).to_string(), cur.label(z).to_string());
        cur = cur.with_symmetric_edge_removed(x, z)?;
        steps.push(SimStep {
            index,
            op: StepOp::Delete,
            edge,
            metrics: metrics(&cur, cfg.metric_cycle_cap),
            add_continuous: None,
            mismatches,
        });
    }

    Ok(SimTrace {
        seed: cfg.seed,
        max_steps: cfg.max_steps,
        mode: cfg.mode,
        p_add: cfg.p_add,
        checker: cfg.checker,
        metric_cycle_cap: cfg.metric_cycle_cap,
        graph_digest: system_digest(s),
        initial_node_count: s.node_count(),
        final_metrics: steps
            .last()
            .map(|step| step.metrics.clone())
            .unwrap_or_else(|| metrics(s, cfg.metric_cycle_cap)),
        steps,
        halt,
        final_system: cur,
    })
}

impl SimTrace {
    fn metric_fields(m: &MetricsRecord) -> String {
        format!(
            "arcs={} sym-edges={} components={} subsumed={} core-size={} kcycles={}{} triangles={} closed-triad-ratio={}",
            m.arc_count,
            m.symmetric_edge_count,
            m.component_count,
            m.subsumed_node_count,
            m.core_size,
            m.kcycle_count,
            if m.kcycles_truncated { "+" } else { "" },
            m.triangle_count,
            sig6(m.closed_triad_ratio),
        )
    }

    /// Normative line-delimited format: a header, one line per step in fixed
    /// field order, and a final halt record.
    pub fn render(&self) -> String {
        let mut out = format!(
            "netclosure-trace v1 seed={} max-steps={} mode={} p-add={} checker={} cycle-cap={} rng=chacha8;pick=next-u64-mod-k;uniform=next-u64-shr-11-times-2^-53 graph=sha256:{} n={}\n",
            self.seed,
            self.max_steps,
            self.mode.tag(),
            sig6(self.p_add),
            self.checker.tag(),
            self.metric_cycle_cap,
            self.graph_digest,
            self.initial_node_count,
        );
        for step in &self.steps {
            let op = match step.op {
                StepOp::Delete => "delete",
                StepOp::Add => "add",
            };
            let add_oracle = match (step.op, step.add_continuous) {
                (StepOp::Add, Some(true)) => "continuous",
                (StepOp::Add, Some(false)) => "discontinuous",
                (StepOp::Add, None) => "unchecked",
                (StepOp::Delete, _) => "-",
            };
            let mismatches = match &step.mismatches {
                None => "-".to_string(),
                Some(list) if list.is_empty() => "none".to_string(),
                Some(list) => list
                    .iter()
                    .map(|(u, v)| format!("{u}--{v}"))
                    .collect::<Vec<_>>()
                    .join(";"),
            };
            out.push_str(&format!(
                "step={} op={} edge={}--{} {} add-oracle={} mismatches={}\n",
                step.index,
                op,
                step.edge.0,
                step.edge.1,
                Self::metric_fields(&step.metrics),
                add_oracle,
                mismatches,
            ));
        }
        out.push_str(&format!(
            "halt reason={} steps={} {}\n",
            self.halt.tag(),
            self.steps.len(),
            Self::metric_fields(&self.final_metrics),
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sig6_renders_six_significant_digits() {
        assert_eq!(sig6(0.0), "0.000000");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(0.5), "0.500000");
        assert_eq!(sig6(2.0 / 15.0), "0.133333");
        assert_eq!(sig6(123456.7), "123457");
    }

    #[test]
    fn triangle_and_path_metrics() {
        let mut b = crate::system::SystemBuilder::new();
        b.add_symmetric_edge("x", "y").unwrap();
        b.add_symmetric_edge("y", "z").unwrap();
        b.add_symmetric_edge("x", "z").unwrap();
        let triangle = b.build();
        let m = metrics(&triangle, 100);
        assert_eq!(m.triangle_count, 1);
        assert_eq!(m.closed_triad_ratio, 1.0);
        assert_eq!(m.component_count, 1);

        let mut b = crate::system::SystemBuilder::new();
        b.add_symmetric_edge("x", "y").unwrap();
        b.add_symmetric_edge("y", "z").unwrap();
        let path = b.build();
        let m = metrics(&path, 100);
        assert_eq!(m.triangle_count, 0);
        assert_eq!(m.closed_triad_ratio, 0.0);
    }

    #[test]
    fn config_validation() {
        let c4 = fixtures::c4();
        let mut cfg = SimConfig::new(1, 10, SimMode::DeletionOnly);
        cfg.p_add = 0.5;
        assert!(cfg.validate(&c4).is_err());
        cfg.p_add = 0.0;
        assert!(cfg.validate(&c4).is_ok());
        cfg.oracle_max_n = 3;
        assert!(matches!(
            cfg.validate(&c4),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn four_cycle_halts_immediately() {
        let c4 = fixtures::c4();
        let cfg = SimConfig::new(99, 50, SimMode::DeletionOnly);
        let trace = run(&c4, &cfg).unwrap();
        assert_eq!(trace.halt, HaltReason::Fixpoint);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.final_metrics.symmetric_edge_count, 4);
    }

    #[test]
    fn traces_are_reproducible() {
        let g = fixtures::bridged_triangles();
        let cfg = SimConfig::new(7, 50, SimMode::DeletionOnly);
        let a = run(&g, &cfg).unwrap().render();
        let b = run(&g, &cfg).unwrap().render();
        assert_eq!(a, b);
    }
}
