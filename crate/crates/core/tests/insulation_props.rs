mod common;

use common::{companions, corpus, insulated, permuted_coloring, random_perm, rng, synthetic_insulated};
use p6ext::companion::build_companion;
use p6ext::graph::{Graph, VertexSet};
use p6ext::insulation::{complex_components, insulate_pair, is_insulating, merge_colorings, side_pairs, Cutset};
use p6ext::lists::{exact_list_color, ColorSet, Coloring, ListAssignment};
use p6ext::oracle::brute_force_list_color;
use p6ext::reduction::{to_orthogonal_collection, Budget};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn merging_synthetic_cutsets(s in any::<u64>()) {
        let mut r = rng(s);
        let Some((h, l, cut)) = synthetic_insulated(&mut r) else { return Ok(()) };
        let dprime = complex_components(&h, &l, &cut).into_iter().fold(VertexSet::new(), |a, c| a.union(&c));
        let side1 = cut.b.union(&cut.d.difference(&dprime));
        let side2 = cut.a.union(&cut.d);
        let c1 = brute_force_list_color(&h, &l, &side1);
        let c2 = permuted_coloring(&h, &l, &side2, random_perm(&mut r));
        let (Some(c1), Some(c2)) = (c1, c2) else { return Ok(()) };
        let (merged, stats) = merge_colorings(&h, &l, &cut, &c1, &c2).unwrap();
        prop_assert!(merged.is_list_coloring(&h, &l, &h.vertices()));
        prop_assert!(stats.conflicts.windows(2).all(|w| w[1] < w[0]));
        prop_assert_eq!(*stats.conflicts.last().unwrap(), 0);
    }
}

#[test]
fn planted_conflict_needs_one_flip() {
    // a - d - b with D = {d}; far side a is 3, c2 gives d colour 2, c1 gives b colour 2
    let h = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let l = ListAssignment::from_vec(vec![ColorSet::of(&[2, 3]), ColorSet::of(&[1, 2]), ColorSet::of(&[2, 4])]);
    let cut = Cutset {
        pair: ColorSet::of(&[1, 2]),
        d: VertexSet::singleton(1),
        a: VertexSet::singleton(0),
        b: VertexSet::singleton(2),
    };
    is_insulating(&h, &l, &cut).unwrap();
    let mut c1 = Coloring::new(3);
    c1.set(2, 2);
    let mut c2 = Coloring::new(3);
    c2.set(0, 3);
    c2.set(1, 2);
    let (merged, stats) = merge_colorings(&h, &l, &cut, &c1, &c2).unwrap();
    assert_eq!(stats.conflicts, vec![1, 0]);
    assert_eq!(merged.get(1), Some(1));
    assert!(merged.is_list_coloring(&h, &l, &h.vertices()));
}

#[test]
fn insulated_branches_are_equivalent() {
    let triples = companions(41, 150, 16);
    for t in &triples {
        if t.l.as_slice().iter().any(|c| c.is_empty()) {
            continue;
        }
        let all = t.h.vertices();
        let truth = exact_list_color(&t.h, &t.l, &all).is_some();
        let branches = p6ext::insulation::insulate_all(t, &Budget::default()).unwrap();
        let any = branches.iter().any(|b| exact_list_color(&t.h, &b.l, &all).is_some());
        assert_eq!(any, truth);
    }
    for (t, ins) in insulated(&triples) {
        assert!(ins.l.is_refinement_of(&t.l));
        for cut in ins.cuts.iter().flatten() {
            is_insulating(&t.h, &ins.l, cut).unwrap();
        }
    }
}

#[test]
fn without_z_insulation_keeps_the_lists() {
    let mut checked = 0;
    for p in corpus(42, 100, 16, 5) {
        let (q, _) = p.induced(&p.graph().vertices().difference(p.ystar()));
        if q.validate().is_err() {
            continue;
        }
        for m in to_orthogonal_collection(&q, &Budget::default()).unwrap() {
            let Ok(t) = build_companion(&m.p) else { continue };
            for pair in side_pairs() {
                assert_eq!(insulate_pair(&t, &t.l, pair, &Budget::default()).unwrap(), vec![t.l.clone()]);
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}
