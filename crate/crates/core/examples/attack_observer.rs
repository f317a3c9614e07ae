//! Builds the attack-observer for an intruder that may query states 2 and
//! 4 once, and follows two plays through it.

use stateattack::attack_models::AttackSpec;
use stateattack::attack_observer::build_attack_observer;
use stateattack::automaton::Label;
use stateattack::samples::two_branch_plant;

fn main() {
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4"], 1).unwrap();
    let aobs = build_attack_observer(&g, &spec).unwrap();
    println!("attack-observer: {} states, initial {}", aobs.len(), aobs.state_label(aobs.initial()));
    let a = Label::Event(g.event_id("a").unwrap());
    for result in [Label::Outside, Label::Inside] {
        let play = [Label::Skip, a, Label::Attack, result];
        let end = aobs.run(aobs.initial(), &play).unwrap();
        let names: Vec<String> = play.iter().map(|&l| aobs.label_name(l)).collect();
        println!("{} ends in {} ({:?})", names.join("·"), aobs.state_label(end), aobs.state_type(end));
    }
}
