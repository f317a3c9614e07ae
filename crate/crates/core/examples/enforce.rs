//! Compares two attack sets: one lets the intruder reach a violation only
//! with the system's cooperation, the other lets it force one.

use stateattack::attack_models::AttackSpec;
use stateattack::enforcement::{check_enforced, TypeIIReading};
use stateattack::samples::two_branch_plant;

fn main() {
    let g = two_branch_plant();
    for attacked in [&["2", "4"][..], &["2", "4", "8", "9"]] {
        let spec = AttackSpec::anonymity_named(&g, attacked, 1).unwrap();
        for reading in [TypeIIReading::AllResults, TypeIIReading::KeptResults] {
            let out = check_enforced(&g, &spec, reading).unwrap();
            println!(
                "attacked {} ({reading:?}): enforced = {}, final verifier {} of {} verifier states",
                g.format_states(&spec.attacked),
                out.verdict,
                out.final_verifier.len(),
                out.verifier.len()
            );
        }
    }
}
