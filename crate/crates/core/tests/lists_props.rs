mod common;

use common::{random_graph, random_list, random_two_lists, rng};
use p6ext::graph::{Graph, VertexSet};
use p6ext::lists::{bad_set_table, edwards_two_list_color, exact_list_color, update_exhaustively, ColorSet, ListAssignment};
use p6ext::oracle::{brute_force_list_color, colorable, verify_list_coloring};
use proptest::prelude::*;
use rand::Rng;

fn instance(max_n: usize) -> impl Strategy<Value = (Graph, ListAssignment)> {
    (1..=max_n, any::<u64>(), 0.1f64..0.6).prop_map(|(n, s, p)| {
        let mut r = rng(s);
        let g = random_graph(&mut r, n, p);
        let l = ListAssignment::from_vec((0..n).map(|_| random_list(&mut r)).collect());
        (g, l)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn updating_refines_is_idempotent_and_keeps_colorings((g, l) in instance(9)) {
        let u = update_exhaustively(&g, &l);
        prop_assert!(u.is_refinement_of(&l));
        prop_assert_eq!(update_exhaustively(&g, &u), u.clone());
        let all = g.vertices();
        prop_assert_eq!(colorable(&g, &l, &all), colorable(&g, &u, &all));
        if let Some(c) = brute_force_list_color(&g, &l, &all) {
            prop_assert!(c.respects(&u, &all));
        }
    }

    #[test]
    fn exact_list_color_matches_oracle((g, l) in instance(10)) {
        let all = g.vertices();
        let got = exact_list_color(&g, &l, &all);
        prop_assert_eq!(got.is_some(), colorable(&g, &l, &all));
        if let Some(c) = got {
            prop_assert!(verify_list_coloring(&g, &l, &all, &c));
        }
    }

    #[test]
    fn two_list_coloring_matches_oracle(n in 1usize..=12, s in any::<u64>(), p in 0.1f64..0.6) {
        let mut r = rng(s);
        let g = random_graph(&mut r, n, p);
        let l = random_two_lists(&mut r, n);
        let all = g.vertices();
        let got = edwards_two_list_color(&g, &l, &all).unwrap();
        prop_assert_eq!(got.is_some(), colorable(&g, &l, &all));
        if let Some(c) = got {
            prop_assert!(verify_list_coloring(&g, &l, &all, &c));
        }
    }

    #[test]
    fn bad_sets_are_exactly_the_uncolorable_restrictions((g, m) in instance(7)) {
        let comp = g.vertices();
        let t = bad_set_table(&g, &comp, &m);
        for q in ColorSet::all_subsets().filter(|q| q.len() <= 3) {
            let lq = ListAssignment::from_vec(m.as_slice().iter().map(|c| c.intersect(q)).collect());
            prop_assert_eq!(t.is_good(q), colorable(&g, &lq, &comp));
        }
        for q in t.maximal_bad() {
            prop_assert!(t.is_bad(q));
        }
    }
}

#[test]
fn two_list_rejects_large_lists() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let l = ListAssignment::from_vec(vec![ColorSet::of(&[1, 2, 3]), ColorSet::single(1)]);
    assert!(edwards_two_list_color(&g, &l, &VertexSet::range(2)).is_err());
}

#[test]
fn empty_list_means_no_coloring() {
    let mut r = rng(5);
    for _ in 0..50 {
        let n = r.gen_range(1..8);
        let g = random_graph(&mut r, n, 0.4);
        let mut l = random_two_lists(&mut r, n);
        l.set(r.gen_range(0..n), ColorSet::EMPTY);
        assert!(edwards_two_list_color(&g, &l, &g.vertices()).unwrap().is_none());
        assert!(exact_list_color(&g, &l, &g.vertices()).is_none());
    }
}
