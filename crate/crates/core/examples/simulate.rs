//! Plays the ranked strategy against a random and an adversarial system.

use stateattack::attack_models::AttackSpec;
use stateattack::enforcement::{check_enforced, TypeIIReading};
use stateattack::samples::two_branch_plant;
use stateattack::strategy::{simulate_play, synthesize_strategy, Policy, SystemPolicy};

fn main() {
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4", "8", "9"], 1).unwrap();
    let fv = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().final_verifier;
    let s = synthesize_strategy(&fv, Policy::Ranked).unwrap();
    let aobs = s.aobs();
    for policy in [SystemPolicy::RandomSeeded(1), SystemPolicy::RandomSeeded(2), SystemPolicy::Adversarial] {
        let play = simulate_play(&s, policy, 20).unwrap();
        println!("{policy:?}: {:?} with the plant in {}", play.outcome, g.state_name(play.true_state));
        for r in &play.rounds {
            let event = r.event.map_or("ε", |e| g.event_name(e));
            println!("  {event}/{} -> {}", r.output, aobs.state_label(r.strategy_state));
        }
    }
}
