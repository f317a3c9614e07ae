//! Decides whether the intruder can force a violation and prints a
//! witness path through the verifier.

use stateattack::attack_models::AttackSpec;
use stateattack::samples::two_branch_plant;
use stateattack::violation::check_violation;

fn main() {
    let g = two_branch_plant();
    for budget in [0, 1] {
        let spec = AttackSpec::anonymity_named(&g, &["2", "4"], budget).unwrap();
        let out = check_violation(&g, &spec).unwrap();
        println!("budget {budget}: violation possible = {}, verifier has {} states", out.verdict, out.verifier.len());
        if let Some(path) = out.verifier.witness() {
            let names: Vec<String> = path.iter().map(|&l| out.verifier.parent().label_name(l)).collect();
            println!("  witness: {}", names.join(" "));
        }
    }
}
