//! The intruder's side of the game: what it may attack, how often, and
//! the turn structure between intruder and system.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{compose, Automaton, Label, StateId};
use crate::error::ModelError;
use crate::observer::StateEstimate;
use crate::plant::Nfa;

/// The property the intruder tries to break.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationMode {
    /// Break anonymity: narrow the estimate to a single state.
    Anonymity,
    /// Break opacity: narrow the estimate to a subset of `secret`.
    Opacity { secret: BTreeSet<StateId> },
}

impl ViolationMode {
    /// Whether an estimate discloses what this mode protects.
    pub fn is_violated_by(&self, estimate: &StateEstimate) -> bool {
        match self {
            ViolationMode::Anonymity => estimate.is_singleton(),
            ViolationMode::Opacity { secret } => estimate.is_subset_of(secret),
        }
    }
}

/// The intruder's capabilities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackSpec {
    /// States an attack can detect: the answer is `1` inside, `0` outside.
    pub attacked: BTreeSet<StateId>,
    /// Maximum number of attacks over a whole run.
    pub budget: u32,
    pub mode: ViolationMode,
}

impl AttackSpec {
    pub fn anonymity(attacked: impl IntoIterator<Item = StateId>, budget: u32) -> Self {
        AttackSpec {
            attacked: attacked.into_iter().collect(),
            budget,
            mode: ViolationMode::Anonymity,
        }
    }

    pub fn opacity(
        attacked: impl IntoIterator<Item = StateId>,
        budget: u32,
        secret: impl IntoIterator<Item = StateId>,
    ) -> Self {
        AttackSpec {
            attacked: attacked.into_iter().collect(),
            budget,
            mode: ViolationMode::Opacity {
                secret: secret.into_iter().collect(),
            },
        }
    }

    /// Resolves an anonymity spec from state names.
    pub fn anonymity_named<S: AsRef<str>>(g: &Nfa, attacked: &[S], budget: u32) -> Result<Self, ModelError> {
        Ok(AttackSpec::anonymity(g.state_set(attacked)?, budget))
    }

    /// Checks that every referenced state exists in `g`.
    pub fn validate(&self, g: &Nfa) -> Result<(), ModelError> {
        let secret = match &self.mode {
            ViolationMode::Anonymity => None,
            ViolationMode::Opacity { secret } => Some(secret),
        };
        for &x in self.attacked.iter().chain(secret.into_iter().flatten()) {
            if x >= g.state_count() {
                return Err(ModelError::StateOutOfRange(x));
            }
        }
        Ok(())
    }

    /// The same spec with a different budget.
    pub fn with_budget(&self, budget: u32) -> Self {
        AttackSpec {
            budget,
            ..self.clone()
        }
    }
}

/// Whose turn it is in the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GamePhase {
    /// The intruder decides whether to attack (`A`).
    Attacker,
    /// An attack was launched and its result is pending (`AY`).
    AwaitingResult,
    /// The system moves (`S`).
    System,
}

impl fmt::Display for GamePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GamePhase::Attacker => "A",
            GamePhase::AwaitingResult => "AY",
            GamePhase::System => "S",
        })
    }
}

/// Attack bookkeeping: how many attacks have completed, and whether the
/// current round skipped (`kN`) or launched (`kY`) an attack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GameCounter {
    Plain(u32),
    Waiting(u32),
    Attacking(u32),
}

impl GameCounter {
    /// Number of completed attacks.
    pub fn completed(&self) -> u32 {
        match *self {
            GameCounter::Plain(k) | GameCounter::Waiting(k) | GameCounter::Attacking(k) => k,
        }
    }
}

impl fmt::Display for GameCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameCounter::Plain(k) => write!(f, "{k}"),
            GameCounter::Waiting(k) => write!(f, "{k}N"),
            GameCounter::Attacking(k) => write!(f, "{k}Y"),
        }
    }
}

/// The plant extended with attack answers: a `1` self-loop at every
/// attacked state and a `0` self-loop everywhere else.
pub fn system_attack_model(g: &Nfa, attacked: &BTreeSet<StateId>) -> Result<Automaton<StateId>, ModelError> {
    if let Some(&x) = attacked.iter().find(|&&x| x >= g.state_count()) {
        return Err(ModelError::StateOutOfRange(x));
    }
    let mut a = g.automaton().clone();
    a.add_label(Label::Outside);
    a.add_label(Label::Inside);
    for x in 0..g.state_count() {
        a.add_transition(x, Label::result(attacked.contains(&x)), x);
    }
    Ok(a)
}

/// Counter automaton limiting the intruder to `budget` attacks.
///
/// States are `0..=D`, `0N..=DN` and `0Y..=(D-1)Y`, `3D+2` in total. From
/// `i` the intruder may skip (`N`, to `iN`) or, while `i < D`, attack (`Y`,
/// to `iY`); a result `0`/`1` at `iY` completes the attack and moves to
/// `i+1`; a plant event moves `iN` back to `i` and loops at `i ≥ 1`.
pub fn number_attack_model(budget: u32, events: &[Label]) -> Automaton<GameCounter> {
    let alphabet = events.iter().copied().chain(Label::intruder_labels());
    let mut a = Automaton::new(alphabet);
    let plain: Vec<usize> = (0..=budget).map(|i| a.add_state(GameCounter::Plain(i))).collect();
    let waiting: Vec<usize> = (0..=budget).map(|i| a.add_state(GameCounter::Waiting(i))).collect();
    let attacking: Vec<usize> = (0..budget).map(|i| a.add_state(GameCounter::Attacking(i))).collect();
    a.add_initial(plain[0]);
    for i in 0..=budget as usize {
        a.add_transition(plain[i], Label::Skip, waiting[i]);
        if i < budget as usize {
            a.add_transition(plain[i], Label::Attack, attacking[i]);
            a.add_transition(attacking[i], Label::Outside, plain[i + 1]);
            a.add_transition(attacking[i], Label::Inside, plain[i + 1]);
        }
        for &e in events {
            a.add_transition(waiting[i], e, plain[i]);
            if i >= 1 {
                a.add_transition(plain[i], e, plain[i]);
            }
        }
    }
    a
}

/// The three-phase turn structure: `A -N-> S`, `A -Y-> AY`, `AY -0/1-> S`
/// and `S -e-> A` for every plant event `e`.
pub fn game_structure(events: &[Label]) -> Automaton<GamePhase> {
    let alphabet = events.iter().copied().chain(Label::intruder_labels());
    let mut a = Automaton::new(alphabet);
    let att = a.add_state(GamePhase::Attacker);
    let wait = a.add_state(GamePhase::AwaitingResult);
    let sys = a.add_state(GamePhase::System);
    a.add_initial(att);
    a.add_transition(att, Label::Skip, sys);
    a.add_transition(att, Label::Attack, wait);
    a.add_transition(wait, Label::Outside, sys);
    a.add_transition(wait, Label::Inside, sys);
    for &e in events {
        a.add_transition(sys, e, att);
    }
    a
}

/// The turn structure restricted to at most `budget` attacks.
pub fn bounded_game_structure(budget: u32, events: &[Label]) -> Automaton<(GamePhase, GameCounter)> {
    compose(&game_structure(events), &number_attack_model(budget, events))
}

/// The event labels of `g`.
pub fn event_labels(g: &Nfa) -> Vec<Label> {
    (0..g.event_count()).map(Label::Event).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::two_branch_plant;

    fn names<S: fmt::Display + Clone + Eq + std::hash::Hash>(a: &Automaton<S>) -> Vec<String> {
        a.states().iter().map(|s| s.to_string()).collect()
    }

    fn pair_names(a: &Automaton<(GamePhase, GameCounter)>) -> BTreeSet<String> {
        a.states().iter().map(|(p, c)| format!("({p},{c})")).collect()
    }

    #[test]
    fn system_attack_model_adds_one_result_loop_per_state() {
        let g = two_branch_plant();
        let attacked = g.state_set(&["2", "4"]).unwrap();
        let a = system_attack_model(&g, &attacked).unwrap();
        for x in 0..g.state_count() {
            let ones = a.successors(x, Label::Inside);
            let zeros = a.successors(x, Label::Outside);
            if attacked.contains(&x) {
                assert_eq!((ones, zeros), (&[x][..], &[][..]));
            } else {
                assert_eq!((ones, zeros), (&[][..], &[x][..]));
            }
        }
        assert_eq!(a.initial(), g.initial());
        assert!(system_attack_model(&g, &BTreeSet::from([42])).is_err());
    }

    #[test]
    fn degenerate_attack_sets() {
        let g = two_branch_plant();
        let none = system_attack_model(&g, &BTreeSet::new()).unwrap();
        assert!((0..10).all(|x| none.successors(x, Label::Outside) == [x] && none.successors(x, Label::Inside).is_empty()));
        let all = system_attack_model(&g, &(0..10).collect()).unwrap();
        assert!((0..10).all(|x| all.successors(x, Label::Inside) == [x] && all.successors(x, Label::Outside).is_empty()));
        for a in [&none, &all] {
            assert!(a.alphabet().contains(&Label::Inside) && a.alphabet().contains(&Label::Outside));
        }
    }

    #[test]
    fn number_attack_model_sizes() {
        let ev = [Label::Event(0)];
        assert_eq!(names(&number_attack_model(1, &ev)), ["0", "1", "0N", "1N", "0Y"]);
        let zero = number_attack_model(0, &ev);
        assert_eq!(names(&zero), ["0", "0N"]);
        assert!(zero.transitions().all(|(_, l, _)| l != Label::Attack));
        assert_eq!(number_attack_model(3, &ev).len(), 11);
        for d in 0..6 {
            let a = number_attack_model(d, &ev);
            assert_eq!(a.len() as u32, 3 * d + 2);
            assert!(a.is_deterministic());
        }
    }

    #[test]
    fn game_structure_shape() {
        let g = two_branch_plant();
        let ev = event_labels(&g);
        let a = game_structure(&ev);
        assert_eq!(a.len(), 3);
        assert!(a.is_deterministic());
        let mut alphabet: Vec<String> = a.alphabet().iter().map(|&l| g.label_name(l)).collect();
        alphabet.sort();
        assert_eq!(alphabet, ["0", "1", "N", "Y", "a", "b", "c", "d"]);
        let wait = a.successor(0, Label::Attack).unwrap();
        let sys = a.successor(wait, Label::Outside).unwrap();
        assert_eq!(a.successor(sys, Label::Event(2)), Some(0));
    }

    #[test]
    fn bounded_game_structure_states() {
        let ev = [Label::Event(0), Label::Event(1)];
        let expected: BTreeSet<String> = ["(A,0)", "(S,0N)", "(AY,0Y)", "(S,1)", "(A,1)", "(S,1N)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(pair_names(&bounded_game_structure(1, &ev)), expected);
        let zero: BTreeSet<String> = ["(A,0)", "(S,0N)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(pair_names(&bounded_game_structure(0, &ev)), zero);
        for d in 0..6 {
            let b = bounded_game_structure(d, &ev);
            assert_eq!(b.len() as u32, 4 * d + 2);
            for (p, c) in b.states() {
                let ok = match p {
                    GamePhase::Attacker => matches!(c, GameCounter::Plain(_)),
                    GamePhase::AwaitingResult => matches!(c, GameCounter::Attacking(_)),
                    GamePhase::System => matches!(c, GameCounter::Waiting(_) | GameCounter::Plain(1..)),
                };
                assert!(ok, "({p},{c}) violates phase/counter consistency");
            }
        }
    }

    #[test]
    fn budget_is_respected_along_paths() {
        let ev = [Label::Event(0)];
        let b = bounded_game_structure(2, &ev);
        // depth-first over bounded paths, tracking attacks launched
        let mut stack = vec![(b.initial()[0], 0u32, 0usize)];
        while let Some((s, attacks, depth)) = stack.pop() {
            let (_, counter) = b.state(s);
            if let GameCounter::Plain(k) = counter {
                assert_eq!(*k, attacks);
            }
            if depth == 12 {
                continue;
            }
            for (l, ts) in b.outgoing(s) {
                let n = attacks + u32::from(l == Label::Attack);
                assert!(n <= 2);
                stack.extend(ts.iter().map(|&t| (t, n, depth + 1)));
            }
        }
    }
}
