//! Opacity instead of anonymity: the intruder wins once it knows the plant
//! is inside the secret set, even without pinning the exact state.

use stateattack::attack_models::AttackSpec;
use stateattack::enforcement::{check_enforced, TypeIIReading};
use stateattack::io::{parse_model, parse_spec};
use stateattack::samples::{two_branch_plant, TWO_BRANCH_PLANT_JSON};
use stateattack::violation::check_violation;

fn main() {
    let g = parse_model(TWO_BRANCH_PLANT_JSON).unwrap();
    assert_eq!(g.transitions(), two_branch_plant().transitions());
    let secret = g.state_set(&["2", "5"]).unwrap();
    for budget in [0, 1, 2] {
        let spec = AttackSpec::opacity(g.state_set(&["2", "4"]).unwrap(), budget, secret.iter().copied());
        let v = check_violation(&g, &spec).unwrap().verdict;
        let e = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().verdict;
        println!("secret {{2,5}}, attacked {{2,4}}, budget {budget}: violation {v}, enforced {e}");
    }
    let spec = parse_spec(
        r#"{"attacked_states": ["2", "4", "8", "9"], "budget": 1, "mode": {"opacity": {"secret_states": ["7", "8"]}}}"#,
        &g,
    )
    .unwrap();
    println!("secret {{7,8}} from JSON: enforced {}", check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().verdict);
}
