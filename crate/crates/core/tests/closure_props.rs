//! Closure-operator behavior against brute-force recomputation and the
//! worked nine-node fixture.

use std::collections::BTreeSet;

use proptest::prelude::*;

use netclosure::closure::{
    closure, enumerate_closed_sets, generators, is_closed, neighborhood, region,
    verify_closure_axioms, DEFAULT_MAX_N,
};
use netclosure::fixtures;
use netclosure::oracle::{graph_from_code, random_symmetric_system, GraphFamily};
use netclosure::system::{NodeSet, System};
use netclosure::Error;

/// Test-local reference: the closure definition evaluated naively over
/// labels, independent of the library's bitset path.
fn closure_reference(s: &System, members: &[&str]) -> BTreeSet<String> {
    let region_of = |labels: &BTreeSet<String>| -> BTreeSet<String> {
        let mut out = labels.clone();
        for l in labels {
            let v = s.node(l).unwrap();
            for w in s.nodes() {
                if s.has_arc(v, w) {
                    out.insert(s.label(w).to_string());
                }
            }
        }
        out
    };
    let base: BTreeSet<String> = members.iter().map(|l| l.to_string()).collect();
    let bound = region_of(&base);
    let mut out = BTreeSet::new();
    for x in s.nodes() {
        let single: BTreeSet<String> = [s.label(x).to_string()].into();
        if region_of(&single).is_subset(&bound) {
            out.insert(s.label(x).to_string());
        }
    }
    out
}

fn set_of(s: &System, labels: &[&str]) -> NodeSet {
    s.set_from_labels(labels).unwrap()
}

fn rendered(s: &System, set: &NodeSet) -> String {
    s.render_set(set)
}

#[test]
fn mixed9_neighborhoods_match_the_worked_example() {
    let f1 = fixtures::mixed9();
    assert_eq!(
        rendered(&f1, &neighborhood(&f1, &set_of(&f1, &["a"])).unwrap()),
        "{b,c}"
    );
    assert_eq!(
        rendered(&f1, &neighborhood(&f1, &set_of(&f1, &["g"])).unwrap()),
        "{d,e}"
    );
    // c's neighborhood omits a: the a -> c arc is one-way.
    assert_eq!(
        rendered(&f1, &neighborhood(&f1, &set_of(&f1, &["c"])).unwrap()),
        "{b,f}"
    );
    assert!(neighborhood(&f1, &f1.empty_set()).unwrap().is_empty());
}

#[test]
fn mixed9_regions_match_the_worked_example() {
    let f1 = fixtures::mixed9();
    assert_eq!(rendered(&f1, &region(&f1, &set_of(&f1, &["h"])).unwrap()), "{e,g,h}");
    assert_eq!(rendered(&f1, &region(&f1, &set_of(&f1, &["g"])).unwrap()), "{d,e,g}");
    assert_eq!(
        rendered(&f1, &region(&f1, &set_of(&f1, &["b"])).unwrap()),
        "{a,b,c,d,e}"
    );
    assert!(region(&f1, &f1.empty_set()).unwrap().is_empty());
}

#[test]
fn mixed9_singleton_closures_match_the_worked_example() {
    let f1 = fixtures::mixed9();
    for (label, expected) in [
        ("b", "{a,b}"),
        ("e", "{e,h}"),
        ("f", "{f,i}"),
        ("a", "{a}"),
        ("c", "{c}"),
    ] {
        let got = closure(&f1, &set_of(&f1, &[label])).unwrap();
        assert_eq!(rendered(&f1, &got), expected, "closure({{{label}}})");
        let reference: Vec<String> = closure_reference(&f1, &[label]).into_iter().collect();
        let got_labels: Vec<String> = got.iter().map(|v| f1.label(v).to_string()).collect();
        assert_eq!(got_labels, reference, "reference disagrees for {label}");
    }
}

#[test]
fn closure_of_full_set_is_full() {
    let f1 = fixtures::mixed9();
    let full = f1.full_set();
    assert_eq!(closure(&f1, &full).unwrap(), full);
}

#[test]
fn is_closed_examples() {
    let f1 = fixtures::mixed9();
    // Brute-force reference: closure({a,b}) = {a,b}.
    let reference: Vec<String> = closure_reference(&f1, &["a", "b"]).into_iter().collect();
    assert_eq!(reference, ["a", "b"]);
    assert!(is_closed(&f1, &set_of(&f1, &["a", "b"])).unwrap());
    assert!(!is_closed(&f1, &set_of(&f1, &["b"])).unwrap());
    assert!(is_closed(&f1, &f1.empty_set()).unwrap());
}

#[test]
fn foreign_sets_are_usage_errors() {
    let f1 = fixtures::mixed9();
    let other = fixtures::mixed9_joined();
    let foreign = other.empty_set();
    assert!(matches!(
        neighborhood(&f1, &foreign),
        Err(Error::ForeignNodeSet)
    ));
    assert!(matches!(region(&f1, &foreign), Err(Error::ForeignNodeSet)));
    assert!(matches!(closure(&f1, &foreign), Err(Error::ForeignNodeSet)));
}

#[test]
fn generator_examples_against_brute_force() {
    let f1 = fixtures::mixed9();
    // Brute force over the subsets of {a, b}: only {b} reproduces the
    // closure.
    let target = closure_reference(&f1, &["a", "b"]);
    let mut minimal: Vec<Vec<&str>> = Vec::new();
    for cand in [vec![], vec!["a"], vec!["b"], vec!["a", "b"]] {
        if closure_reference(&f1, &cand) == target
            && !minimal
                .iter()
                .any(|m| m.iter().all(|x| cand.contains(x)))
        {
            minimal.push(cand);
        }
    }
    assert_eq!(minimal, vec![vec!["b"]]);
    let gens = generators(&f1, &set_of(&f1, &["a", "b"]), DEFAULT_MAX_N).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(rendered(&f1, &gens[0]), "{b}");

    // closure({e}) = {e,h} and closure({h}) = {h}, so {e} generates {e,h}.
    let gens = generators(&f1, &set_of(&f1, &["e", "h"]), DEFAULT_MAX_N).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(rendered(&f1, &gens[0]), "{e}");
}

#[test]
fn closed_family_of_mixed9_is_intersection_closed_and_contains_extremes() {
    let f1 = fixtures::mixed9();
    let family = enumerate_closed_sets(&f1, DEFAULT_MAX_N).unwrap();
    assert!(family.contains(&f1.empty_set()));
    assert!(family.contains(&f1.full_set()));
    assert!(family.intersection_closure_violation().is_none());
    for set in family.iter() {
        assert!(is_closed(&f1, set).unwrap());
    }
}

#[test]
fn axioms_hold_on_every_fixture() {
    for s in [
        fixtures::mixed9(),
        fixtures::mixed9_joined(),
        fixtures::isolated_pair(),
        fixtures::tied_pair(),
        fixtures::oneway_chain(),
        fixtures::oneway_fork(),
        fixtures::diamond(),
        fixtures::diamond_plus(),
        fixtures::triangle_pendant(),
        fixtures::c4(),
        fixtures::bridged_triangles(),
    ] {
        assert!(verify_closure_axioms(&s, DEFAULT_MAX_N).unwrap().all_pass());
    }
}

// ---------------------------------------------------------------------------
// Property tests over random small systems.

fn arb_system() -> impl Strategy<Value = System> {
    (1usize..=5, any::<u64>(), any::<bool>()).prop_map(|(n, bits, directed)| {
        let family = if directed {
            GraphFamily::Directed
        } else {
            GraphFamily::Symmetric
        };
        let slots = if directed { n * (n - 1) } else { n * (n - 1) / 2 };
        let n = if directed { n.min(4) } else { n };
        let code = if slots == 0 { 0 } else { bits % (1u64 << slots.min(20)) };
        graph_from_code(family, n, code)
    })
}

fn arb_system_and_masks() -> impl Strategy<Value = (System, u64, u64)> {
    (arb_system(), any::<u64>(), any::<u64>()).prop_map(|(s, a, b)| {
        let full = (1u64 << s.node_count()) - 1;
        (s, a & full, b & full)
    })
}

fn mask_set(s: &System, mask: u64) -> NodeSet {
    s.set_from_ids(
        s.nodes()
            .filter(|v| mask >> v.index() & 1 == 1),
    )
}

proptest! {
    #[test]
    fn closure_is_sandwiched_between_set_and_region((s, a, _b) in arb_system_and_masks()) {
        let y = mask_set(&s, a);
        let c = closure(&s, &y).unwrap();
        let r = region(&s, &y).unwrap();
        prop_assert!(y.is_subset(&c));
        prop_assert!(c.is_subset(&r));
    }

    #[test]
    fn closure_order_iff_region_order((s, a, b) in arb_system_and_masks()) {
        let y = mask_set(&s, a);
        let z = mask_set(&s, b);
        let cy = closure(&s, &y).unwrap();
        let cz = closure(&s, &z).unwrap();
        let ry = region(&s, &y).unwrap();
        let rz = region(&s, &z).unwrap();
        prop_assert_eq!(cy.is_subset(&cz), ry.is_subset(&rz));
        if ry == rz {
            prop_assert_eq!(cy, cz);
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone((s, a, b) in arb_system_and_masks()) {
        let y = mask_set(&s, a);
        let z = mask_set(&s, a | b);
        let cy = closure(&s, &y).unwrap();
        prop_assert_eq!(closure(&s, &cy).unwrap(), cy.clone());
        prop_assert!(cy.is_subset(&closure(&s, &z).unwrap()));
    }

    #[test]
    fn region_is_additive((s, a, b) in arb_system_and_masks()) {
        let y = mask_set(&s, a);
        let z = mask_set(&s, b);
        let joint = region(&s, &y.union(&z)).unwrap();
        prop_assert_eq!(joint, region(&s, &y).unwrap().union(&region(&s, &z).unwrap()));
        // Neighborhood is the union of singleton regions minus the set.
        let mut singles = s.empty_set();
        for v in y.iter() {
            singles.union_with(&region(&s, &s.set_from_ids([v])).unwrap());
        }
        prop_assert_eq!(neighborhood(&s, &y).unwrap(), singles.difference(&y));
    }

    #[test]
    fn closed_sets_meet_closed(s in arb_system()) {
        let family = enumerate_closed_sets(&s, DEFAULT_MAX_N).unwrap();
        prop_assert!(family.intersection_closure_violation().is_none());
    }
}

#[test]
fn random_graph_axiom_sweep() {
    for seed in 0..25 {
        let s = random_symmetric_system(10, 0.25, seed);
        assert!(verify_closure_axioms(&s, DEFAULT_MAX_N).unwrap().all_pass());
    }
}
