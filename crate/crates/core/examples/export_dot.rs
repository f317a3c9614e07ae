//! Writes Graphviz files for every stage into a directory (default
//! `dot-out`). Render them with `dot -Tsvg`.

use std::path::PathBuf;

use stateattack::attack_models::AttackSpec;
use stateattack::attack_observer::build_attack_observer;
use stateattack::dot;
use stateattack::enforcement::{check_enforced, TypeIIReading};
use stateattack::samples::two_branch_plant;
use stateattack::strategy::{synthesize_strategy, Policy};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "dot-out".into()));
    std::fs::create_dir_all(&dir)?;
    let g = two_branch_plant();
    let spec = AttackSpec::anonymity_named(&g, &["2", "4", "8", "9"], 1).unwrap();
    let out = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap();
    let strategy = synthesize_strategy(&out.final_verifier, Policy::Ranked).unwrap();
    let files = [
        ("plant.dot", dot::plant_to_dot(&g)),
        ("observer.dot", dot::observer_to_dot(&g)),
        ("attack_observer.dot", dot::aobs_to_dot(&build_attack_observer(&g, &spec).unwrap())),
        ("verifier.dot", dot::sub_automaton_to_dot("verifier", &out.verifier)),
        ("final_verifier.dot", dot::sub_automaton_to_dot("final_verifier", &out.final_verifier)),
        ("strategy.dot", dot::strategy_to_dot(&strategy)),
    ];
    for (name, body) in files {
        std::fs::write(dir.join(name), body)?;
        println!("wrote {}", dir.join(name).display());
    }
    Ok(())
}
