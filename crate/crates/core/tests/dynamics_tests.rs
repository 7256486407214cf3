//! Simulator determinism, halting behavior, and metric fidelity.

use netclosure::dynamics::{
    metrics, run, sig6, Checker, HaltReason, SimConfig, SimMode, StepOp,
};
use netclosure::fixtures;
use netclosure::oracle::{oracle_continuous, random_symmetric_system};
use netclosure::transform::NodeMap;

#[test]
fn mixed9_metrics_frozen_values() {
    // Independently recounted from the fixture's edge list: twenty arcs
    // (nine symmetric ties plus two one-way arcs), one component, subsumed
    // nodes {a, h, i}, core {b, d, e, g}, one chordless 4-cycle, and the
    // symmetrized relation holds the triangles {a,b,c} and {e,g,h} plus
    // thirteen open triples, giving 2/15.
    let m = metrics(&fixtures::mixed9(), 10_000);
    assert_eq!(m.arc_count, 20);
    assert_eq!(m.symmetric_edge_count, 9);
    assert_eq!(m.component_count, 1);
    assert_eq!(m.subsumed_node_count, 3);
    assert_eq!(m.core_size, 4);
    assert_eq!(m.kcycle_count, 1);
    assert_eq!(m.triangle_count, 2);
    assert_eq!(sig6(m.closed_triad_ratio), "0.133333");
}

#[test]
fn metric_component_count_splits_on_disconnection() {
    let s = fixtures::isolated_pair();
    assert_eq!(metrics(&s, 100).component_count, 2);
    let t = fixtures::tied_pair();
    assert_eq!(metrics(&t, 100).component_count, 1);
}

#[test]
fn c4_run_halts_at_fixpoint_with_zero_deletions() {
    let c4 = fixtures::c4();
    let cfg = SimConfig::new(123, 64, SimMode::DeletionOnly);
    let trace = run(&c4, &cfg).unwrap();
    assert_eq!(trace.halt, HaltReason::Fixpoint);
    assert!(trace.steps.is_empty());
    // Post-hoc: every remaining edge's deletion is discontinuous.
    for (x, z) in trace.final_system.symmetric_edges() {
        let target = trace.final_system.with_symmetric_edge_removed(x, z).unwrap();
        let map = NodeMap::by_label(&trace.final_system, &target).unwrap();
        assert!(!oracle_continuous(&map, 20).unwrap().continuous);
    }
}

#[test]
fn bridged_triangles_deletes_the_bridge_then_freezes() {
    let g = fixtures::bridged_triangles();
    let cfg = SimConfig::new(5, 64, SimMode::DeletionOnly);
    let trace = run(&g, &cfg).unwrap();
    assert_eq!(trace.halt, HaltReason::Fixpoint);
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].edge, ("c".to_string(), "d".to_string()));
    assert_eq!(trace.final_metrics.component_count, 2);
    assert_eq!(trace.final_metrics.symmetric_edge_count, 6);
    for (x, z) in trace.final_system.symmetric_edges() {
        let target = trace.final_system.with_symmetric_edge_removed(x, z).unwrap();
        let map = NodeMap::by_label(&trace.final_system, &target).unwrap();
        assert!(!oracle_continuous(&map, 20).unwrap().continuous);
    }
}

#[test]
fn identical_inputs_give_byte_identical_traces() {
    let g = random_symmetric_system(9, 0.3, 42);
    let mut cfg = SimConfig::new(99, 100, SimMode::DeletionPlusTriadic);
    cfg.p_add = 0.3;
    let a = run(&g, &cfg).unwrap().render();
    let b = run(&g, &cfg).unwrap().render();
    assert_eq!(a, b);
    let mut other = cfg.clone();
    other.seed = 100;
    let c = run(&g, &other).unwrap().render();
    assert_ne!(a, c, "different seeds should diverge on this input");
}

#[test]
fn deletion_only_invariants_hold_along_the_trace()
{
    for seed in 0..10u64 {
        let g = random_symmetric_system(10, 0.3, seed);
        let cfg = SimConfig::new(seed, 100, SimMode::DeletionOnly);
        let trace = run(&g, &cfg).unwrap();
        let mut arcs = metrics(&g, 100).arc_count;
        let mut components = metrics(&g, 100).component_count;
        for step in &trace.steps {
            assert_eq!(step.op, StepOp::Delete);
            assert!(step.metrics.arc_count < arcs, "arc count must strictly decrease");
            assert!(
                step.metrics.component_count >= components,
                "components never re-merge under deletion"
            );
            arcs = step.metrics.arc_count;
            components = step.metrics.component_count;
        }
        assert_eq!(trace.halt, HaltReason::Fixpoint);
    }
}

#[test]
fn fastpath_divergence_only_at_logged_mismatch_steps() {
    // The rule calls the triangle edges with mutually subsumed endpoints
    // continuous while the exhaustive scan does not. A fast-path run logs
    // those disagreements per step, and an oracle run on the same seed may
    // only diverge at a step whose mismatch list is nonempty.
    let g = fixtures::bridged_triangles();
    let mut fast_cfg = SimConfig::new(1, 64, SimMode::DeletionOnly);
    fast_cfg.checker = Checker::FastPath;
    let oracle_cfg = SimConfig::new(1, 64, SimMode::DeletionOnly);
    let fast = run(&g, &fast_cfg).unwrap();
    let oracle = run(&g, &oracle_cfg).unwrap();

    let first = fast.steps.first().unwrap();
    let logged = first.mismatches.clone().unwrap();
    assert_eq!(
        logged,
        vec![
            ("a".to_string(), "b".to_string()),
            ("e".to_string(), "f".to_string())
        ]
    );

    let mut diverged_at = None;
    for k in 0..fast.steps.len().max(oracle.steps.len()) {
        match (fast.steps.get(k), oracle.steps.get(k)) {
            (Some(fs), Some(os)) if fs.edge == os.edge => continue,
            _ => {
                diverged_at = Some(k);
                break;
            }
        }
    }
    if let Some(k) = diverged_at {
        // Either the diverging fast step logged a disagreement, or the
        // fast run outlived the oracle run because earlier steps did.
        let any_logged = fast.steps[..=k.min(fast.steps.len() - 1)]
            .iter()
            .any(|s| s.mismatches.as_ref().is_some_and(|m| !m.is_empty()));
        assert!(any_logged, "divergence without a logged mismatch");
    }
}

#[test]
fn triadic_mode_records_addition_verdicts() {
    let g = fixtures::triangle_pendant();
    let mut cfg = SimConfig::new(17, 8, SimMode::DeletionPlusTriadic);
    cfg.p_add = 1.0;
    let trace = run(&g, &cfg).unwrap();
    let adds: Vec<_> = trace.steps.iter().filter(|s| s.op == StepOp::Add).collect();
    assert!(!adds.is_empty(), "p_add = 1 must fire additions while candidates exist");
    for step in adds {
        assert!(step.add_continuous.is_some());
    }
}

#[test]
fn step_limit_halt_is_recorded() {
    let g = fixtures::bridged_triangles();
    let cfg = SimConfig::new(5, 1, SimMode::DeletionOnly);
    let trace = run(&g, &cfg).unwrap();
    assert_eq!(trace.halt, HaltReason::StepLimit);
    assert_eq!(trace.steps.len(), 1);
}

#[test]
fn trace_header_carries_the_contract() {
    let g = fixtures::c4();
    let cfg = SimConfig::new(7, 4, SimMode::DeletionOnly);
    let text = run(&g, &cfg).unwrap().render();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("netclosure-trace v1 seed=7 max-steps=4 mode=deletion-only"));
    assert!(header.contains("rng=chacha8"));
    assert!(header.contains("graph=sha256:"));
    assert!(text.trim_end().ends_with("closed-triad-ratio=0.000000"));
    assert!(text.contains("halt reason=fixpoint steps=0"));
}
