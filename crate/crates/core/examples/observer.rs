//! Builds the observer of the sample plant and runs the classic
//! anonymity and opacity checks on it.

use stateattack::observer::{check_anonymity_classic, check_opacity_classic};
use stateattack::samples::two_branch_plant;

fn main() {
    let g = two_branch_plant();
    let obs = g.observer();
    println!("observer: {} states", obs.len());
    for (s, l, t) in obs.transitions() {
        println!("  {} -{}-> {}", g.format_estimate(obs.state(s)), g.label_name(l), g.format_estimate(obs.state(t)));
    }
    println!("anonymous: {}", check_anonymity_classic(&g));
    for secret in [["7", "8"], ["2", "5"]] {
        let set = g.state_set(&secret).unwrap();
        println!("opaque for {}: {}", g.format_states(&set), check_opacity_classic(&g, &set));
    }
}
