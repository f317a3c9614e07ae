//! DOT output for the sample plant, compared byte for byte against files
//! in `tests/golden/`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use stateattack::attack_models::AttackSpec;
use stateattack::dot::{strategy_to_dot, sub_automaton_to_dot};
use stateattack::enforcement::{check_enforced, TypeIIReading};
use stateattack::samples::two_branch_plant;
use stateattack::strategy::{synthesize_strategy, Policy};
use stateattack::violation::check_violation;

fn compare(name: &str, actual: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from the golden copy");
}

#[test]
fn verifier_for_two_attacked_states() {
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4"], 1).unwrap();
    let v = check_violation(&g, &spec).unwrap().verifier;
    compare("verifier_2_4.dot", &sub_automaton_to_dot("verifier", &v));
}

#[test]
fn final_verifier_for_four_attacked_states() {
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4", "8", "9"], 1).unwrap();
    let fv = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().final_verifier;
    compare("final_verifier_2_4_8_9.dot", &sub_automaton_to_dot("final_verifier", &fv));
}

#[test]
fn strategy_for_four_attacked_states() {
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4", "8", "9"], 1).unwrap();
    let fv = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().final_verifier;
    let s = synthesize_strategy(&fv, Policy::Ranked).unwrap();
    compare("strategy_2_4_8_9.dot", &strategy_to_dot(&s));
}
