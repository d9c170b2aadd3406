mod common;

use common::{has_induced_path_exhaustive, is_induced_path, random_graph, rng};
use p6ext::graph::{bipartition, components, find_induced_path, Graph, VertexSet};
use p6ext::lists::{ColorSet, ListAssignment};
use p6ext::oracle::colorable;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.1f64..0.7).prop_map(|(n, s, p)| random_graph(&mut rng(s), n, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn induced_path_search_matches_exhaustive(g in graph_strategy(8), t in 1usize..=6) {
        let found = find_induced_path(&g, t, &g.vertices());
        prop_assert_eq!(found.is_some(), has_induced_path_exhaustive(&g, t));
        if let Some(path) = found {
            prop_assert_eq!(path.len(), t);
            prop_assert!(is_induced_path(&g, &path));
        }
    }

    #[test]
    fn bipartition_agrees_with_two_colorability(g in graph_strategy(9)) {
        let all = g.vertices();
        let two = ListAssignment::uniform(g.n(), ColorSet::of(&[1, 2]));
        let parts = bipartition(&g, &all);
        prop_assert_eq!(parts.is_some(), colorable(&g, &two, &all));
        if let Some(parts) = parts {
            let mut seen = VertexSet::new();
            for (a, b) in &parts {
                prop_assert!(g.is_stable(a) && g.is_stable(b));
                prop_assert!(!a.is_empty());
                seen.union_with(a);
                seen.union_with(b);
            }
            prop_assert_eq!(seen, all);
            prop_assert_eq!(parts.len(), components(&g, &g.vertices()).len());
        }
    }

    #[test]
    fn components_partition_and_are_anticomplete(g in graph_strategy(10)) {
        let comps = components(&g, &g.vertices());
        let total: usize = comps.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, g.n());
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                prop_assert!(g.is_anticomplete_to(a, b));
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(12)) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }
}

#[test]
fn small_named_graphs() {
    let cycle = |n: usize| Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap();
    // C_n has an induced P_{n-1} and nothing longer
    for n in 4..=8 {
        let c = cycle(n);
        assert!(find_induced_path(&c, n - 1, &c.vertices()).is_some());
        assert!(find_induced_path(&c, n, &c.vertices()).is_none());
    }
    assert!(bipartition(&cycle(5), &VertexSet::range(5)).is_none());
    assert!(bipartition(&cycle(6), &VertexSet::range(6)).is_some());
}

#[test]
fn edge_list_rejects_bad_input() {
    assert!(Graph::parse_edge_list("e 0 1\n").is_err());
    assert!(Graph::parse_edge_list("p 2 1\ne 0 2\n").is_err());
    assert!(Graph::parse_edge_list("p 2 1\ne 0 0\n").is_err());
}
