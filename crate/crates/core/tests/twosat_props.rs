mod common;

use common::{random_two_sat, rng, truth_table_sat};
use p6ext::twosat::{Lit, TwoSatInstance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn solver_agrees_with_truth_table(s in any::<u64>()) {
        let inst = random_two_sat(&mut rng(s), 8);
        let got = inst.solve();
        prop_assert_eq!(got.is_some(), truth_table_sat(&inst));
        if let Some(asg) = got {
            prop_assert!(inst.verify(&asg));
        }
    }

    #[test]
    fn dimacs_round_trip(s in any::<u64>()) {
        let inst = random_two_sat(&mut rng(s), 10);
        let back = TwoSatInstance::from_dimacs(&inst.to_dimacs()).unwrap();
        prop_assert_eq!(back.num_vars(), inst.num_vars());
        prop_assert_eq!(back.clauses(), inst.clauses());
    }
}

#[test]
fn contradictory_units() {
    let mut inst = TwoSatInstance::new(1);
    inst.add_unit(Lit::pos(0));
    inst.add_unit(Lit::neg(0));
    assert!(inst.solve().is_none());
}

#[test]
fn implication_chain_forces_values() {
    // x0 and x0 -> x1 -> x2
    let mut inst = TwoSatInstance::new(3);
    inst.add_unit(Lit::pos(0));
    inst.add_clause(Lit::neg(0), Lit::pos(1));
    inst.add_clause(Lit::neg(1), Lit::pos(2));
    assert_eq!(inst.solve(), Some(vec![true, true, true]));
}

#[test]
fn dimacs_errors() {
    assert!(TwoSatInstance::from_dimacs("p cnf 1 1\n1 2 0\n").is_err());
    assert!(TwoSatInstance::from_dimacs("1 0\n").is_err());
}
