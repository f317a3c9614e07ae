//! The attack-observer: the game graph between intruder and system.
//!
//! Each state records whose turn it is, the attack counter and the
//! intruder's current estimate of the plant state. It is the product of the
//! bounded game structure with the observer of the system attack model, so
//! attack results filter the estimate and plant events advance it.

use std::collections::BTreeSet;
use std::fmt;

use crate::attack_models::{
    bounded_game_structure, event_labels, system_attack_model, AttackSpec, GameCounter, GamePhase,
};
use crate::automaton::{compose, Automaton, EventId, Label};
use crate::error::ModelError;
use crate::observer::{observer, StateEstimate};
use crate::plant::Nfa;

/// A state `(phase, counter, estimate)` of the attack-observer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AObsState {
    pub phase: GamePhase,
    pub counter: GameCounter,
    pub estimate: StateEstimate,
}

/// Classification of attack-observer states by whose move it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateType {
    /// The system moves next (phase `S`).
    TypeI,
    /// An attack result is pending (phase `AY`).
    TypeII,
    /// The intruder decides (phase `A`).
    TypeIII,
}

impl fmt::Display for StateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateType::TypeI => "type-I",
            StateType::TypeII => "type-II",
            StateType::TypeIII => "type-III",
        })
    }
}

pub fn classify(x: &AObsState) -> StateType {
    match x.phase {
        GamePhase::System => StateType::TypeI,
        GamePhase::AwaitingResult => StateType::TypeII,
        GamePhase::Attacker => StateType::TypeIII,
    }
}

/// The attack-observer of a plant under an attack spec.
///
/// States are addressed by position; position `0` is the initial state.
/// Transitions are deterministic, and a reverse index supports the backward
/// fixpoints of the verification stages.
#[derive(Clone, Debug)]
pub struct AttackObserver {
    plant: Nfa,
    spec: AttackSpec,
    graph: Automaton<AObsState>,
    pred: Vec<Vec<(Label, usize)>>,
}

/// Builds the attack-observer of `g` under `spec`.
pub fn build_attack_observer(g: &Nfa, spec: &AttackSpec) -> Result<AttackObserver, ModelError> {
    spec.validate(g)?;
    let events = event_labels(g);
    let game = bounded_game_structure(spec.budget, &events);
    let obs = observer(&system_attack_model(g, &spec.attacked)?);
    let graph = compose(&game, &obs).map_states(|((phase, counter), estimate)| AObsState {
        phase: *phase,
        counter: *counter,
        estimate: estimate.clone(),
    });
    debug_assert!(graph.is_deterministic());
    debug_assert_eq!(graph.initial(), &[0]);
    let mut pred = vec![Vec::new(); graph.len()];
    for (s, l, t) in graph.transitions() {
        pred[t].push((l, s));
    }
    Ok(AttackObserver {
        plant: g.clone(),
        spec: spec.clone(),
        graph,
        pred,
    })
}

impl AttackObserver {
    pub fn plant(&self) -> &Nfa {
        &self.plant
    }

    pub fn spec(&self) -> &AttackSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Automaton<AObsState> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    /// Always false: the initial state exists.
    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn state(&self, id: usize) -> &AObsState {
        self.graph.state(id)
    }

    pub fn id_of(&self, state: &AObsState) -> Option<usize> {
        self.graph.id_of(state)
    }

    pub fn state_type(&self, id: usize) -> StateType {
        classify(self.state(id))
    }

    pub fn successor(&self, id: usize, label: Label) -> Option<usize> {
        self.graph.successor(id, label)
    }

    /// Outgoing `(label, target)` pairs of `id` in label order.
    pub fn outgoing(&self, id: usize) -> impl Iterator<Item = (Label, usize)> + '_ {
        self.graph.outgoing(id).map(|(l, t)| (l, t[0]))
    }

    /// Incoming `(label, source)` pairs of `id`.
    pub fn predecessors(&self, id: usize) -> &[(Label, usize)] {
        &self.pred[id]
    }

    /// Labels with a transition at `id`.
    pub fn enabled(&self, id: usize) -> BTreeSet<Label> {
        self.graph.enabled(id)
    }

    /// Plant events enabled at `id`.
    pub fn enabled_events(&self, id: usize) -> Vec<EventId> {
        self.outgoing(id)
            .filter_map(|(l, _)| match l {
                Label::Event(e) => Some(e),
                _ => None,
            })
            .collect()
    }

    /// Whether `id` is a type-I state whose estimate discloses the property.
    pub fn is_violating(&self, id: usize) -> bool {
        let x = self.state(id);
        classify(x) == StateType::TypeI && self.spec.mode.is_violated_by(&x.estimate)
    }

    /// Renders a state as `(S,0N,{1,10})`.
    pub fn state_label(&self, id: usize) -> String {
        self.format_state(self.state(id))
    }

    pub fn format_state(&self, x: &AObsState) -> String {
        format!("({},{},{})", x.phase, x.counter, self.plant.format_estimate(&x.estimate))
    }

    /// Looks a state up by its rendered form, ignoring whitespace.
    pub fn state_by_label(&self, label: &str) -> Option<usize> {
        let wanted: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        (0..self.len()).find(|&id| self.state_label(id) == wanted)
    }

    /// Follows a sequence of labels from `from`.
    pub fn run(&self, from: usize, labels: &[Label]) -> Option<usize> {
        labels.iter().try_fold(from, |s, &l| self.successor(s, l))
    }

    /// Renders a label using the plant's event names.
    pub fn label_name(&self, label: Label) -> String {
        self.plant.label_name(label)
    }
}

/// Alias matching [`AttackObserver::enabled`], phrased as a free function.
pub fn enabled_in_aobs(aobs: &AttackObserver, id: usize) -> BTreeSet<Label> {
    aobs.enabled(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::two_branch_plant;

    fn aobs(attacked: &[&str], budget: u32) -> AttackObserver {
        let g = two_branch_plant();
        let spec = AttackSpec::anonymity_named(&g, attacked, budget).unwrap();
        build_attack_observer(&g, &spec).unwrap()
    }

    fn labels(a: &AttackObserver, word: &str) -> Vec<Label> {
        word.chars()
            .map(|c| match c {
                'Y' => Label::Attack,
                'N' => Label::Skip,
                '0' => Label::Outside,
                '1' => Label::Inside,
                e => Label::Event(a.plant().event_id(&e.to_string()).unwrap()),
            })
            .collect()
    }

    #[test]
    fn attack_observer_for_two_attacked_states() {
        let a = aobs(&["2", "4"], 1);
        assert_eq!(a.len(), 34);
        assert_eq!(a.state_label(a.initial()), "(A,0,{1,10})");
        let end = |w: &str| a.run(a.initial(), &labels(&a, w)).map(|s| a.state_label(s));
        assert_eq!(end("NaY1").as_deref(), Some("(S,1,{2})"));
        assert_eq!(end("NaY0").as_deref(), Some("(S,1,{3})"));
    }

    #[test]
    fn attack_observer_for_four_attacked_states() {
        assert_eq!(aobs(&["2", "4", "8", "9"], 1).len(), 40);
    }

    #[test]
    fn classify_by_phase() {
        let a = aobs(&["2", "4"], 1);
        let ty = |l: &str| a.state_type(a.state_by_label(l).unwrap());
        assert_eq!(ty("(S,1,{3})"), StateType::TypeI);
        assert_eq!(ty("(AY,0Y,{2,3})"), StateType::TypeII);
        assert_eq!(ty("(A,0,{1,10})"), StateType::TypeIII);
    }

    #[test]
    fn enabled_labels_in_attack_observer() {
        let a = aobs(&["2", "4"], 1);
        let names = |l: &str| -> Vec<String> {
            enabled_in_aobs(&a, a.state_by_label(l).unwrap())
                .into_iter()
                .map(|x| a.label_name(x))
                .collect()
        };
        assert_eq!(names("(S,0N,{1,10})"), ["a", "d"]);
        assert_eq!(names("(AY,0Y,{1,10})"), ["0"]);
        let dead = Nfa::new(&["x", "y"], &["e"], &[], &["x", "y"]).unwrap();
        let d = build_attack_observer(&dead, &AttackSpec::anonymity([], 0)).unwrap();
        let s = d.state_by_label("(S,0N,{x,y})").unwrap();
        assert!(d.enabled(s).is_empty());
    }

    #[test]
    fn phases_alternate() {
        let a = aobs(&["2", "4", "8", "9"], 2);
        for id in 0..a.len() {
            for (l, _) in a.outgoing(id) {
                match a.state_type(id) {
                    StateType::TypeI => assert!(l.is_event()),
                    StateType::TypeII => assert!(l.is_result()),
                    StateType::TypeIII => assert!(l.is_decision()),
                }
            }
            if a.state_type(id) == StateType::TypeII {
                assert!(a.outgoing(id).next().is_some());
            }
        }
        assert!(a.len() <= (4 * 2 + 2) * (1 << 10));
    }

    #[test]
    fn predecessors_mirror_successors() {
        let a = aobs(&["2", "4"], 1);
        for id in 0..a.len() {
            for (l, t) in a.outgoing(id) {
                assert!(a.predecessors(t).contains(&(l, id)));
            }
        }
    }
}
