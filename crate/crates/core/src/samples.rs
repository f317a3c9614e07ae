//! Ready-made plants used by the examples, tests and documentation.

use crate::plant::Nfa;

/// A ten-state plant with two initial states and two branches.
///
/// From `{1,10}`, event `a` leads into a branch over `{2,3,4,5}` where `b`
/// and `c` shuffle the state, and event `d` leads into a branch over
/// `{6,7,8,9}`. Without attacks no observation ever pins the state down.
pub fn two_branch_plant() -> Nfa {
    let states = ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"];
    let events = ["a", "b", "c", "d"];
    let transitions = [
        ("1", "a", "2"),
        ("1", "a", "3"),
        ("1", "d", "6"),
        ("1", "d", "9"),
        ("2", "b", "4"),
        ("2", "c", "5"),
        ("3", "b", "5"),
        ("3", "c", "4"),
        ("4", "c", "5"),
        ("5", "c", "4"),
        ("6", "b", "7"),
        ("6", "b", "8"),
        ("7", "c", "8"),
        ("8", "c", "7"),
        ("9", "b", "7"),
        ("10", "d", "9"),
        ("10", "a", "2"),
    ];
    Nfa::new(&states, &events, &transitions, &["1", "10"]).expect("sample plant is well formed")
}

/// A plant with one initial state and a deterministic cycle `p -a-> q -a-> p`.
pub fn known_start_plant() -> Nfa {
    Nfa::new(&["p", "q"], &["a"], &[("p", "a", "q"), ("q", "a", "p")], &["p"])
        .expect("sample plant is well formed")
}

/// The model document of [`two_branch_plant`], as shipped in `fixtures/`.
pub const TWO_BRANCH_PLANT_JSON: &str = include_str!("../fixtures/two_branch_plant.json");
