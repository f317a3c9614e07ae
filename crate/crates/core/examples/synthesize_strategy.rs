//! Synthesizes a ranked attack strategy, validates it, and shows why the
//! naive first-valid policy is not enough.

use stateattack::attack_models::AttackSpec;
use stateattack::enforcement::{check_enforced, TypeIIReading};
use stateattack::samples::two_branch_plant;
use stateattack::strategy::{synthesize_strategy, validate_strategy, Policy};

fn main() {
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4", "8", "9"], 1).unwrap();
    let fv = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().final_verifier;
    for policy in [Policy::Ranked, Policy::FirstValid] {
        let s = synthesize_strategy(&fv, policy).unwrap();
        let aobs = s.aobs();
        println!("{policy:?}: rank of the initial state {:?}", s.rank(s.initial()));
        for e in s.edges() {
            println!(
                "  {} --{}--> {}",
                aobs.state_label(e.source),
                s.edge_label(e.input, e.output),
                aobs.state_label(e.target)
            );
        }
        let report = validate_strategy(&s).unwrap();
        println!("  {}", serde_json::to_string(&report).unwrap());
    }
}
