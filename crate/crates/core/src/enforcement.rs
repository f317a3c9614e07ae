//! Deciding whether the intruder can force a violation whatever the system
//! does.
//!
//! The verifier is pruned until it is closed against the system and the
//! attack results: every event the system can fire at a kept type-I state
//! stays inside, every result an attack can return stays inside, and every
//! kept type-III state keeps some decision. What remains is the final
//! verifier; enforcement holds exactly when it is nonempty.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::attack_models::AttackSpec;
use crate::attack_observer::{build_attack_observer, AttackObserver, StateType};
use crate::automaton::Label;
use crate::error::ModelError;
use crate::plant::Nfa;
use crate::violation::{verify, SubAutomaton};

/// How a type-II state is judged once some of its result successors have
/// been pruned.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TypeIIReading {
    /// Every result the attack can return must lead to a kept vulnerable
    /// type-I state.
    #[default]
    AllResults,
    /// Only the results whose successors are still kept are checked, so a
    /// state whose pruned results are gone passes vacuously.
    KeptResults,
}

/// Whether every event the system can fire at `x` keeps the play in `v`.
pub fn is_vulnerable_type1(v: &SubAutomaton, x: usize) -> bool {
    let aobs = v.parent();
    v.contains(x)
        && aobs
            .outgoing(x)
            .all(|(_, t)| v.contains(t) && aobs.state_type(t) == StateType::TypeIII)
}

/// Whether every result of the pending attack at `x` leads to a kept
/// vulnerable type-I state.
pub fn is_vulnerable_type2(v: &SubAutomaton, x: usize, reading: TypeIIReading) -> bool {
    let aobs = v.parent();
    v.contains(x)
        && aobs.outgoing(x).all(|(_, t)| match reading {
            TypeIIReading::AllResults => is_vulnerable_type1(v, t),
            TypeIIReading::KeptResults => !v.contains(t) || is_vulnerable_type1(v, t),
        })
}

/// Whether some decision at `x` leads to a kept vulnerable state.
pub fn is_vulnerable_type3(v: &SubAutomaton, x: usize, reading: TypeIIReading) -> bool {
    let aobs = v.parent();
    v.contains(x)
        && [Label::Skip, Label::Attack].iter().any(|&l| match v.successor(x, l) {
            Some(t) => match aobs.state_type(t) {
                StateType::TypeI => is_vulnerable_type1(v, t),
                StateType::TypeII => is_vulnerable_type2(v, t, reading),
                StateType::TypeIII => false,
            },
            None => false,
        })
}

/// Prunes the verifier `v` to the final verifier.
///
/// Each pass removes the non-vulnerable type-I states, then type-II, then
/// type-III, keeping only the part reachable from the initial state after
/// each removal. Passes repeat until one removes nothing.
pub fn final_verifier(v: &SubAutomaton, reading: TypeIIReading) -> SubAutomaton {
    let mut cur = v.clone();
    loop {
        let before = cur.len();
        for ty in [StateType::TypeI, StateType::TypeII, StateType::TypeIII] {
            let keep: BTreeSet<usize> = cur
                .kept()
                .iter()
                .copied()
                .filter(|&s| {
                    cur.parent().state_type(s) != ty
                        || match ty {
                            StateType::TypeI => is_vulnerable_type1(&cur, s),
                            StateType::TypeII => is_vulnerable_type2(&cur, s, reading),
                            StateType::TypeIII => is_vulnerable_type3(&cur, s, reading),
                        }
                })
                .collect();
            cur = SubAutomaton::restrict(cur.parent().clone(), &keep);
        }
        if cur.len() == before {
            return cur;
        }
    }
}

/// The greatest subset of `v` closed under the three vulnerability
/// conditions (with every attack result required), computed by removing
/// one offending state at a time.
pub fn final_verifier_worklist(v: &SubAutomaton) -> SubAutomaton {
    let aobs = v.parent();
    let mut kept = v.kept().clone();
    let mut queue: Vec<usize> = kept.iter().copied().collect();
    while let Some(s) = queue.pop() {
        if !kept.contains(&s) {
            continue;
        }
        let ok = match aobs.state_type(s) {
            StateType::TypeI | StateType::TypeII => aobs.outgoing(s).all(|(_, t)| kept.contains(&t)),
            StateType::TypeIII => aobs.outgoing(s).any(|(_, t)| kept.contains(&t)),
        };
        if !ok {
            kept.remove(&s);
            queue.extend(aobs.predecessors(s).iter().map(|&(_, p)| p));
        }
    }
    SubAutomaton::restrict(aobs.clone(), &kept)
}

/// Result of [`check_enforced`].
#[derive(Clone, Debug)]
pub struct EnforcementOutcome {
    /// Whether the intruder can force a violation.
    pub verdict: bool,
    pub verifier: SubAutomaton,
    pub final_verifier: SubAutomaton,
}

/// Runs the whole pipeline for `g` under `spec` and decides enforcement.
pub fn check_enforced(g: &Nfa, spec: &AttackSpec, reading: TypeIIReading) -> Result<EnforcementOutcome, ModelError> {
    let aobs = Arc::new(build_attack_observer(g, spec)?);
    Ok(enforce(aobs, reading))
}

/// [`check_enforced`] on an attack-observer that is already built.
pub fn enforce(aobs: Arc<AttackObserver>, reading: TypeIIReading) -> EnforcementOutcome {
    let verifier = verify(aobs).verifier;
    let final_verifier = final_verifier(&verifier, reading);
    EnforcementOutcome {
        verdict: !final_verifier.is_empty(),
        verifier,
        final_verifier,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{known_start_plant, two_branch_plant};

    const FOUR_ATTACKED_FINAL: [&str; 27] = [
        "(A,1,{7})",
        "(S,1N,{7})",
        "(A,1,{8})",
        "(S,1N,{8})",
        "(S,1,{8})",
        "(A,0,{6,9})",
        "(S,0N,{6,9})",
        "(A,0,{7,8})",
        "(S,0N,{7,8})",
        "(A,0,{1,10})",
        "(S,0N,{1,10})",
        "(A,0,{2,3})",
        "(S,0N,{2,3})",
        "(AY,0Y,{7,8})",
        "(S,1,{7})",
        "(S,1,{3})",
        "(AY,0Y,{2,3})",
        "(S,1,{2})",
        "(AY,0Y,{4,5})",
        "(A,0,{4,5})",
        "(S,0N,{4,5})",
        "(S,1,{5})",
        "(S,1,{4})",
        "(A,1,{5})",
        "(A,1,{4})",
        "(S,1N,{5})",
        "(S,1N,{4})",
    ];

    fn outcome(attacked: &[&str], reading: TypeIIReading) -> EnforcementOutcome {
        let g = two_branch_plant();
        check_enforced(&g, &AttackSpec::anonymity_named(&g, attacked, 1).unwrap(), reading).unwrap()
    }

    #[test]
    fn two_attacked_states_cannot_enforce() {
        let out = outcome(&["2", "4"], TypeIIReading::AllResults);
        assert!(!out.verdict);
        assert!(out.final_verifier.is_empty());
        let v = &out.verifier;
        let x = v.parent().state_by_label("(S,0N,{1,10})").unwrap();
        assert!(!is_vulnerable_type1(v, x));
    }

    #[test]
    fn four_attacked_states_enforce() {
        let out = outcome(&["2", "4", "8", "9"], TypeIIReading::AllResults);
        assert!(out.verdict);
        let expected: BTreeSet<String> = FOUR_ATTACKED_FINAL.iter().map(|s| s.to_string()).collect();
        assert_eq!(out.final_verifier.state_labels(), expected);
        assert_eq!(final_verifier_worklist(&out.verifier).kept(), out.final_verifier.kept());
    }

    #[test]
    fn vulnerability_in_final_verifier() {
        let fv = outcome(&["2", "4", "8", "9"], TypeIIReading::AllResults).final_verifier;
        let id = |l: &str| fv.parent().state_by_label(l).unwrap();
        let r = TypeIIReading::AllResults;
        assert!(is_vulnerable_type1(&fv, id("(S,0N,{2,3})")));
        assert!(is_vulnerable_type2(&fv, id("(AY,0Y,{4,5})"), r));
        assert!(is_vulnerable_type3(&fv, id("(A,0,{4,5})"), r));
        assert!(is_vulnerable_type3(&fv, id("(A,0,{1,10})"), r));
        assert!(!fv.contains(id("(AY,0Y,{6,9})")));
    }

    #[test]
    fn kept_results_reading_keeps_a_vacuous_state() {
        let out = outcome(&["2", "4", "8", "9"], TypeIIReading::KeptResults);
        assert!(out.verdict);
        let sound: BTreeSet<String> = FOUR_ATTACKED_FINAL.iter().map(|s| s.to_string()).collect();
        let extra: Vec<String> = out.final_verifier.state_labels().difference(&sound).cloned().collect();
        assert_eq!(extra, ["(AY,0Y,{6,9})", "(S,1,{9})"]);
    }

    #[test]
    fn deadlocked_violating_state_is_vulnerable() {
        let g = Nfa::new(&["x"], &["e"], &[], &["x"]).unwrap();
        let out = check_enforced(&g, &AttackSpec::anonymity([], 0), TypeIIReading::AllResults).unwrap();
        assert!(out.verdict);
        let s = out.final_verifier.parent().state_by_label("(S,0N,{x})").unwrap();
        assert!(is_vulnerable_type1(&out.final_verifier, s));
    }

    #[test]
    fn known_start_keeps_whole_verifier() {
        let g = known_start_plant();
        let out = check_enforced(&g, &AttackSpec::anonymity([], 0), TypeIIReading::AllResults).unwrap();
        assert!(out.verdict);
        assert_eq!(out.final_verifier.kept(), out.verifier.kept());
    }
}
