mod common;

use common::{corpus, planted_untidy, rng};
use p6ext::gen::minimal_instance;
use p6ext::graph::{Graph, VertexSet};
use p6ext::lists::Coloring;
use p6ext::oracle::brute_force_extension;
use p6ext::precoloring::StarredPrecoloring;
use p6ext::solver::{solve_excellent, solve_full_stub, solve_with_report, SolveConfig, SolveError};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solver_matches_oracle(s in any::<u64>()) {
        let p = &corpus(s, 1, 18, 6)[0];
        let truth = brute_force_extension(p, 24).unwrap();
        let got = solve_excellent(p, &SolveConfig::default()).unwrap();
        prop_assert_eq!(got.is_some(), truth.is_some());
        if let Some(c) = got {
            prop_assert!(p.check_extension(&c));
        }
    }

    #[test]
    fn jobs_do_not_change_the_answer(s in any::<u64>()) {
        let p = &corpus(s, 1, 18, 6)[0];
        let one = solve_with_report(p, &SolveConfig::default()).unwrap();
        let many = solve_with_report(p, &SolveConfig { jobs: 4, ..SolveConfig::default() }).unwrap();
        prop_assert_eq!(one.coloring, many.coloring);
        prop_assert_eq!(one.certificate.map(|c| (c.member, c.list_branch)), many.certificate.map(|c| (c.member, c.list_branch)));
    }
}

#[test]
fn planted_untidy_end_to_end() {
    let mut r = rng(61);
    let mut seen = 0;
    while seen < 40 {
        let Some(p) = planted_untidy(&mut r) else { continue };
        seen += 1;
        let truth = brute_force_extension(&p, 24).unwrap();
        let got = solve_excellent(&p, &SolveConfig::default()).unwrap();
        assert_eq!(got.is_some(), truth.is_some());
        if let Some(c) = got {
            assert!(p.check_extension(&c));
        }
    }
}

#[test]
fn precolored_only_returns_f() {
    let p = minimal_instance();
    let c = solve_excellent(&p, &SolveConfig::default()).unwrap().unwrap();
    assert_eq!(c.as_slice(), p.f().as_slice());
}

#[test]
fn empty_list_has_no_extension() {
    // seed path 0-1-2 coloured 1,2,3; x sees 0 and 1, and X0 vertices coloured 3 and 4
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 0), (3, 1), (3, 4), (3, 5), (4, 0), (5, 0)]).unwrap();
    let mut f = Coloring::new(6);
    for (v, c) in [(0, 1), (1, 2), (2, 3), (4, 3), (5, 4)] {
        f.set(v, c);
    }
    let p = StarredPrecoloring::new(g, VertexSet::range(3), [4, 5].into_iter().collect(), VertexSet::singleton(3), VertexSet::new(), f);
    p.validate().unwrap();
    assert!(p.mp().get(3).is_empty());
    assert_eq!(solve_excellent(&p, &SolveConfig::default()).unwrap(), None);
    assert_eq!(brute_force_extension(&p, 24).unwrap(), None);
}

#[test]
fn seed_cap_and_stub_errors() {
    let p = minimal_instance();
    let tight = SolveConfig { seed_cap: 1, ..SolveConfig::default() };
    assert!(matches!(solve_excellent(&p, &tight), Err(SolveError::SeedTooLarge { size: 2, cap: 1 })));
    let err = solve_full_stub(p.graph(), p.x0(), p.f()).unwrap_err();
    assert!(matches!(err, SolveError::Unimplemented { .. }));
    assert!(err.to_string().starts_with("requires-companion-paper"));
}
