//! Transformation behavior: continuity scans, single-edge rules, and the
//! structural consequences of atomisticity.

use netclosure::closure::{closure, enumerate_closed_sets, DEFAULT_MAX_N};
use netclosure::fixtures;
use netclosure::oracle::{
    edge_deletion_maps, node_deletion_maps, oracle_continuous, random_symmetric_system,
};
use netclosure::system::{NodeSet, System};
use netclosure::transform::{
    check_edge_addition, check_edge_deletion, triadic_candidates, Agreement, DelDecision, NodeMap,
};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn set_of(s: &System, labels: &[&str]) -> NodeSet {
    s.set_from_labels(labels).unwrap()
}

#[test]
fn pair_map_is_monotone_continuous_surjective() {
    let f = fixtures::pair_identity_map();
    assert!(f.is_monotone());
    assert!(f.is_continuous(DEFAULT_MAX_N).unwrap().continuous);
    assert!(f.is_surjective(DEFAULT_MAX_N).unwrap());
    // The target's only nonempty closed set is the full pair, which the
    // image of {x, z} covers.
    let family = enumerate_closed_sets(f.target(), DEFAULT_MAX_N).unwrap();
    assert_eq!(family.len(), 2);
}

#[test]
fn apply_maps_deleted_nodes_to_nothing() {
    let f1 = fixtures::mixed9();
    let without_h = f1.with_node_removed(f1.node("h").unwrap());
    let f = NodeMap::by_label(&f1, &without_h).unwrap();
    let image = f.apply(&set_of(&f1, &["e", "h"])).unwrap();
    assert_eq!(without_h.render_set(&image), "{e}");
}

#[test]
fn deleting_a_symmetric_tie_from_mixed9_breaks_continuity_with_witness_b() {
    let f1 = fixtures::mixed9();
    let a = f1.node("a").unwrap();
    let b = f1.node("b").unwrap();
    let target = f1.with_symmetric_edge_removed(a, b).unwrap();
    let f = NodeMap::by_label(&f1, &target).unwrap();
    let verdict = f.is_continuous(DEFAULT_MAX_N).unwrap();
    assert!(!verdict.continuous);
    let witness = verdict.witness.unwrap();
    assert_eq!(f1.render_set(&witness), "{b}");
    // a belongs to closure({b}) before the deletion but not after.
    assert_eq!(target.label(verdict.offending.unwrap()), "a");
    // Both continuity routes agree, witness included.
    let reference = oracle_continuous(&f, DEFAULT_MAX_N).unwrap();
    assert!(!reference.continuous);
    assert_eq!(f1.render_set(&reference.witness.unwrap()), "{b}");
}

#[test]
fn identity_map_is_trivially_continuous() {
    let f1 = fixtures::mixed9();
    let f = NodeMap::by_label(&f1, &f1).unwrap();
    assert!(f.is_continuous(DEFAULT_MAX_N).unwrap().continuous);
}

#[test]
fn surjectivity_examples() {
    let f1 = fixtures::mixed9();
    let id = NodeMap::by_label(&f1, &f1).unwrap();
    assert!(id.is_surjective(DEFAULT_MAX_N).unwrap());
    let b = f1.node("b").unwrap();
    let without_b = f1.with_node_removed(b);
    let f = NodeMap::by_label(&f1, &without_b).unwrap();
    assert!(f.is_surjective(DEFAULT_MAX_N).unwrap());
    // A map that misses a target node cannot cover the full closed set.
    let g = NodeMap::by_label(&without_b, &f1).unwrap();
    assert!(!g.is_surjective(DEFAULT_MAX_N).unwrap());
}

#[test]
fn composition_of_continuous_deletions_is_continuous() {
    // Three triangles chained by two bridges; deleting each bridge in turn
    // is continuous, and so is the composition.
    let mut b = netclosure::SystemBuilder::new();
    for (u, v) in [
        ("a", "b"), ("b", "c"), ("a", "c"),
        ("d", "e"), ("e", "f"), ("d", "f"),
        ("g", "h"), ("h", "i"), ("g", "i"),
        ("c", "d"), ("f", "g"),
    ] {
        b.add_symmetric_edge(u, v).unwrap();
    }
    let g0 = b.build();
    let g1 = g0
        .with_symmetric_edge_removed(g0.node("c").unwrap(), g0.node("d").unwrap())
        .unwrap();
    let f = NodeMap::by_label(&g0, &g1).unwrap();
    assert!(f.is_continuous(DEFAULT_MAX_N).unwrap().continuous);
    let g2 = g1
        .with_symmetric_edge_removed(g1.node("f").unwrap(), g1.node("g").unwrap())
        .unwrap();
    let g = NodeMap::by_label(&g1, &g2).unwrap();
    assert!(g.is_continuous(DEFAULT_MAX_N).unwrap().continuous);
    let fg = f.compose(&g).unwrap();
    assert!(fg.is_continuous(DEFAULT_MAX_N).unwrap().continuous);
}

#[test]
fn compose_then_apply_equals_apply_twice_on_random_sets() {
    let g0 = fixtures::bridged_triangles();
    let g1 = g0.with_symmetric_edge_removed(g0.node("c").unwrap(), g0.node("d").unwrap()).unwrap();
    let g2 = g1.with_node_removed(g1.node("f").unwrap());
    let f = NodeMap::by_label(&g0, &g1).unwrap();
    let g = NodeMap::by_label(&g1, &g2).unwrap();
    let fg = f.compose(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let mask = rng.next_u64() & ((1 << g0.node_count()) - 1);
        let y = g0.set_from_ids(g0.nodes().filter(|v| mask >> v.index() & 1 == 1));
        let two_step = g.apply(&f.apply(&y).unwrap()).unwrap();
        assert_eq!(fg.apply(&y).unwrap(), two_step);
    }
}

#[test]
fn mixed9_deletion_rule_spot_checks() {
    let f1 = fixtures::mixed9();
    let node = |l: &str| f1.node(l).unwrap();
    let ab = check_edge_deletion(&f1, node("a"), node("b")).unwrap();
    assert_eq!(ab.decision, DelDecision::DiscontinuousA);
    assert_eq!(ab.membership, Some((node("a"), node("b"))));
    assert_eq!(f1.render_set(&ab.closure_z), "{a,b}");

    let dg = check_edge_deletion(&f1, node("d"), node("g")).unwrap();
    assert_eq!(dg.decision, DelDecision::DiscontinuousB);
    let cycle = dg.cycle.unwrap();
    assert_eq!(cycle.len(), 4);

    let bc = check_edge_deletion(&f1, node("b"), node("c")).unwrap();
    assert_eq!(bc.decision, DelDecision::Continuous);
}

#[test]
fn mixed9_bc_deletion_rule_misses_a_third_point_drop() {
    // The two-clause rule calls deleting (b, c) continuous, but the
    // exhaustive scan finds the violation at {b}: a's region keeps c
    // through the one-way arc a -> c, so a falls out of closure({b}) once
    // b's region loses c. A standing disagreement the audit reports.
    let f1 = fixtures::mixed9();
    let b = f1.node("b").unwrap();
    let c = f1.node("c").unwrap();
    assert_eq!(
        check_edge_deletion(&f1, b, c).unwrap().decision,
        DelDecision::Continuous
    );
    let target = f1.with_symmetric_edge_removed(b, c).unwrap();
    let verdict = oracle_continuous(&NodeMap::by_label(&f1, &target).unwrap(), DEFAULT_MAX_N).unwrap();
    assert!(!verdict.continuous);
    assert_eq!(f1.render_set(&verdict.witness.unwrap()), "{b}");
}

#[test]
fn diamond_diagonal_defeats_the_deletion_rule() {
    // Endpoints with equal singleton closures: the rule's first clause is
    // excluded by design and no chordless 4-cycle runs through the
    // diagonal, so the rule answers continuous; the exhaustive scan
    // disagrees with minimal witness {x}.
    let dp = fixtures::diamond_plus();
    let x = dp.node("x").unwrap();
    let z = dp.node("z").unwrap();
    let cx = closure(&dp, &dp.set_from_ids([x])).unwrap();
    let cz = closure(&dp, &dp.set_from_ids([z])).unwrap();
    assert_eq!(cx, cz);
    assert_eq!(dp.render_set(&cx), "{x,y1,y2,z}");
    let fast = check_edge_deletion(&dp, x, z).unwrap();
    assert_eq!(fast.decision, DelDecision::Continuous);
    let deleted = dp.with_symmetric_edge_removed(x, z).unwrap();
    let verdict = oracle_continuous(&NodeMap::by_label(&dp, &deleted).unwrap(), DEFAULT_MAX_N).unwrap();
    assert!(!verdict.continuous);
    assert_eq!(dp.render_set(&verdict.witness.unwrap()), "{x}");
}

#[test]
fn triadic_candidates_on_mixed9() {
    let f1 = fixtures::mixed9();
    let cands = triadic_candidates(&f1);
    let labeled: Vec<(String, String)> = cands
        .iter()
        .map(|&(x, z)| (f1.label(x).to_string(), f1.label(z).to_string()))
        .collect();
    assert!(labeled.contains(&("a".to_string(), "d".to_string())));
    assert!(!labeled.contains(&("g".to_string(), "i".to_string())));
    for (x, z) in cands {
        assert!(!f1.has_any_arc(x, z));
        assert!(!f1.out_neighbors(x).is_disjoint(&f1.out_neighbors(z)));
    }
}

#[test]
fn pendant_addition_contradicts_the_connectedness_rule() {
    let probe = fixtures::triangle_pendant();
    let x = probe.node("x").unwrap();
    let z = probe.node("z").unwrap();
    let verdict = check_edge_addition(&probe, x, z, true, DEFAULT_MAX_N).unwrap();
    assert!(verdict.claim_applies);
    assert_eq!(probe.label(verdict.common_neighbors[0]), "y");
    let oracle = verdict.oracle.unwrap();
    assert!(!oracle.continuous);
    // Witness {p}: closure({p}) = {p,x} before, {p} after.
    assert_eq!(probe.render_set(&oracle.witness.unwrap()), "{p}");
    assert_eq!(verdict.agreement, Agreement::Mismatch);
}

#[test]
fn joined_fixture_addition_is_discontinuous() {
    let f1 = fixtures::mixed9();
    let h = f1.node("h").unwrap();
    let i = f1.node("i").unwrap();
    let verdict = check_edge_addition(&f1, h, i, true, DEFAULT_MAX_N).unwrap();
    assert!(!verdict.oracle.unwrap().continuous);
    // The mutated system is exactly the second fixture.
    assert_eq!(
        f1.with_symmetric_edge_added(h, i).unwrap(),
        fixtures::mixed9_joined()
    );
}

#[test]
fn image_distributes_over_union_and_intersection_exhaustively() {
    // Every node map distributes over unions and intersections; checked
    // exhaustively on all subset pairs for a family of maps on systems of
    // up to six nodes.
    for seed in 0..6u64 {
        let s = random_symmetric_system(6, 0.4, seed);
        let mut maps = edge_deletion_maps(&s);
        maps.extend(node_deletion_maps(&s));
        let set_for = |mask: u64| s.set_from_ids(s.nodes().filter(|v| mask >> v.index() & 1 == 1));
        for f in maps {
            let top = 1u64 << s.node_count();
            let images: Vec<NodeSet> = (0..top).map(|m| f.apply(&set_for(m)).unwrap()).collect();
            for x in 0..top as usize {
                for z in 0..top as usize {
                    let meet = images[x & z].clone();
                    assert_eq!(meet, images[x].intersection(&images[z]));
                    let join = images[x | z].clone();
                    assert_eq!(join, images[x].union(&images[z]));
                }
            }
        }
    }
}

#[test]
fn closed_image_and_equal_closure_consequences_on_continuous_maps() {
    // For monotone continuous maps: a closed image pins the closure's
    // image, and equal closures give equal image closures.
    let mut instances = 0;
    for seed in 0..40u64 {
        let s = random_symmetric_system(6, 0.35, seed);
        let mut maps = edge_deletion_maps(&s);
        maps.extend(node_deletion_maps(&s));
        for f in maps {
            if !oracle_continuous(&f, DEFAULT_MAX_N).unwrap().continuous {
                continue;
            }
            instances += 1;
            let top = 1u64 << s.node_count();
            for y in 0..top {
                let yset = s.set_from_ids(s.nodes().filter(|v| y >> v.index() & 1 == 1));
                let image = f.apply(&yset).unwrap();
                let closed_image = closure(f.target(), &image).unwrap() == image;
                if closed_image {
                    let through_closure = f.apply(&closure(&s, &yset).unwrap()).unwrap();
                    assert_eq!(through_closure, image);
                }
            }
        }
    }
    assert!(instances > 0, "the continuous family must not be vacuous");
}
