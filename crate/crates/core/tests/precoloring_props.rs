mod common;

use common::{corpus, random_perm, rng};
use p6ext::gen::{gen_excellent, gen_scaling, minimal_instance, GenParams};
use p6ext::graph::is_pt_free;
use p6ext::lists::Coloring;
use p6ext::oracle::brute_force_extension;
use p6ext::precoloring::{Axiom, InstanceError, StarredPrecoloring};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn generated_instances_are_valid_p6free_and_reproducible(s in any::<u64>()) {
        let params = GenParams::random(&mut rng(s), 18, 6);
        if let Ok(p) = gen_excellent(&params, s) {
            prop_assert_eq!(p.validate(), Ok(()));
            prop_assert!(is_pt_free(p.graph(), 6));
            let again = gen_excellent(&params, s).unwrap();
            prop_assert_eq!(again.to_json(), p.to_json());
        }
    }

    #[test]
    fn json_round_trip(s in any::<u64>()) {
        let p = &corpus(s, 1, 18, 6)[0];
        let back = StarredPrecoloring::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(&back, p);
    }

    #[test]
    fn normalizing_keeps_extendability(s in any::<u64>()) {
        let p = &corpus(s, 1, 16, 5)[0];
        let truth = brute_force_extension(p, 24).unwrap();
        match p.normalize() {
            Err(_) => prop_assert!(truth.is_none()),
            Ok(q) => {
                prop_assert_eq!(q.validate(), Ok(()));
                let after = brute_force_extension(&q, 24).unwrap();
                prop_assert_eq!(truth.is_some(), after.is_some());
                if let Some(c) = after {
                    prop_assert!(p.check_extension(&c));
                }
                prop_assert_eq!(q.normalize().ok(), Some(q.clone()));
            }
        }
    }

    #[test]
    fn oracle_answers_are_extensions(s in any::<u64>()) {
        let p = &corpus(s, 1, 16, 5)[0];
        if let Some(c) = brute_force_extension(p, 24).unwrap() {
            prop_assert!(p.check_extension(&c));
        }
    }

    #[test]
    fn colour_permutations_invert(s in any::<u64>()) {
        let perm = random_perm(&mut rng(s));
        for c in 1..=4 {
            prop_assert_eq!(perm.inverse().apply(perm.apply(c)), c);
        }
    }
}

#[test]
fn scaling_family_is_valid() {
    for (n, s) in [(20, 1), (40, 2), (80, 3)] {
        let p = gen_scaling(n, s).unwrap();
        assert_eq!(p.n(), n);
        assert_eq!(p.validate(), Ok(()));
        assert!(is_pt_free(p.graph(), 6));
    }
}

#[test]
fn recoloured_seed_edge_is_rejected() {
    let p = minimal_instance();
    let mut f = Coloring::new(2);
    f.set(0, 3);
    f.set(1, 3);
    let bad = StarredPrecoloring::new(p.graph().clone(), p.seed().clone(), p.x0().clone(), p.x().clone(), p.ystar().clone(), f);
    let v = bad.validate().unwrap_err();
    assert_eq!(v.axiom, Axiom::A);
    match StarredPrecoloring::from_json(&bad.to_json()) {
        Err(InstanceError::Invalid(w)) => assert_eq!(w.axiom, Axiom::A),
        other => panic!("expected an axiom violation, got {other:?}"),
    }
}

#[test]
fn minimal_instance_extends_to_itself() {
    let p = minimal_instance();
    let c = brute_force_extension(&p, 24).unwrap().unwrap();
    assert!(p.check_extension(&c));
    assert_eq!(c.get(0), Some(1));
    assert_eq!(c.get(1), Some(2));
}
