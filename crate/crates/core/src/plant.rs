//! The plant: a named nondeterministic finite automaton.

use std::collections::{BTreeSet, HashMap};

use crate::automaton::{format_set, Automaton, EventId, Label, StateId};
use crate::error::ModelError;
use crate::observer::StateEstimate;

/// Names that plant events may not use, since they spell the intruder's
/// decisions and attack results.
pub const RESERVED_LABELS: [&str; 5] = ["Y", "N", "0", "1", "ε"];

/// A nondeterministic finite automaton with named states and events.
///
/// States and events are indexed in declaration order; that order is also
/// the canonical order used when printing sets of states.
#[derive(Clone, Debug)]
pub struct Nfa {
    state_names: Vec<String>,
    event_names: Vec<String>,
    state_index: HashMap<String, StateId>,
    event_index: HashMap<String, EventId>,
    automaton: Automaton<StateId>,
}

impl Nfa {
    /// Builds a plant from names, checking referential integrity.
    pub fn new<S: AsRef<str>>(
        states: &[S],
        events: &[S],
        transitions: &[(S, S, S)],
        initial: &[S],
    ) -> Result<Nfa, ModelError> {
        let mut state_index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if state_index.insert(s.as_ref().to_string(), i).is_some() {
                return Err(ModelError::DuplicateState(s.as_ref().to_string()));
            }
        }
        let mut event_index = HashMap::new();
        for (i, e) in events.iter().enumerate() {
            let e = e.as_ref();
            if RESERVED_LABELS.contains(&e) {
                return Err(ModelError::ReservedLabel(e.to_string()));
            }
            if event_index.insert(e.to_string(), i).is_some() {
                return Err(ModelError::DuplicateEvent(e.to_string()));
            }
        }
        let state = |s: &S| {
            state_index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| ModelError::UnknownState(s.as_ref().to_string()))
        };
        let mut automaton = Automaton::new((0..events.len()).map(Label::Event));
        for i in 0..states.len() {
            automaton.add_state(i);
        }
        for s in initial {
            automaton.add_initial(state(s)?);
        }
        if automaton.initial().is_empty() {
            return Err(ModelError::NoInitialState);
        }
        for (src, ev, tgt) in transitions {
            let e = event_index
                .get(ev.as_ref())
                .copied()
                .ok_or_else(|| ModelError::UnknownEvent(ev.as_ref().to_string()))?;
            automaton.add_transition(state(src)?, Label::Event(e), state(tgt)?);
        }
        Ok(Nfa {
            state_names: states.iter().map(|s| s.as_ref().to_string()).collect(),
            event_names: events.iter().map(|e| e.as_ref().to_string()).collect(),
            state_index,
            event_index,
            automaton,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn event_count(&self) -> usize {
        self.event_names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn event_names(&self) -> &[String] {
        &self.event_names
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.state_names[id]
    }

    pub fn event_name(&self, id: EventId) -> &str {
        &self.event_names[id]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn event_id(&self, name: &str) -> Option<EventId> {
        self.event_index.get(name).copied()
    }

    /// Resolves a list of state names.
    pub fn state_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<StateId>, ModelError> {
        names
            .iter()
            .map(|n| {
                self.state_id(n.as_ref())
                    .ok_or_else(|| ModelError::UnknownState(n.as_ref().to_string()))
            })
            .collect()
    }

    pub fn initial(&self) -> &[StateId] {
        self.automaton.initial()
    }

    /// The underlying automaton; state values equal their positions.
    pub fn automaton(&self) -> &Automaton<StateId> {
        &self.automaton
    }

    /// Targets of `event` from `state`.
    pub fn successors(&self, state: StateId, event: EventId) -> &[StateId] {
        self.automaton.successors(state, Label::Event(event))
    }

    /// Events with at least one transition leaving `state`.
    pub fn enabled_at(&self, state: StateId) -> BTreeSet<EventId> {
        self.automaton
            .outgoing(state)
            .filter_map(|(l, _)| match l {
                Label::Event(e) => Some(e),
                _ => None,
            })
            .collect()
    }

    /// All transitions `(source, event, target)` in canonical order.
    pub fn transitions(&self) -> Vec<(StateId, EventId, StateId)> {
        self.automaton
            .transitions()
            .filter_map(|(s, l, t)| match l {
                Label::Event(e) => Some((s, e, t)),
                _ => None,
            })
            .collect()
    }

    /// Renders a set of states as `{1,10}`.
    pub fn format_states<'a>(&self, states: impl IntoIterator<Item = &'a StateId>) -> String {
        let mut ids: Vec<StateId> = states.into_iter().copied().collect();
        ids.sort_unstable();
        ids.dedup();
        format_set(ids.iter().map(|&s| self.state_names[s].as_str()))
    }

    pub fn format_estimate(&self, q: &StateEstimate) -> String {
        self.format_states(q.members())
    }

    pub fn label_name(&self, label: Label) -> String {
        label.name(&self.event_names).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_event_names() {
        for name in RESERVED_LABELS {
            let err = Nfa::new(&["x"], &[name], &[], &["x"]).unwrap_err();
            assert_eq!(err, ModelError::ReservedLabel(name.to_string()));
        }
    }

    #[test]
    fn rejects_dangling_references() {
        assert_eq!(
            Nfa::new(&["x"], &["a"], &[("x", "a", "y")], &["x"]).unwrap_err(),
            ModelError::UnknownState("y".into())
        );
        assert_eq!(
            Nfa::new(&["x"], &["a"], &[("x", "b", "x")], &["x"]).unwrap_err(),
            ModelError::UnknownEvent("b".into())
        );
        assert_eq!(Nfa::new(&["x"], &["a"], &[], &[]).unwrap_err(), ModelError::NoInitialState);
        assert_eq!(
            Nfa::new(&["x", "x"], &["a"], &[], &["x"]).unwrap_err(),
            ModelError::DuplicateState("x".into())
        );
    }

    #[test]
    fn formats_sets_in_declaration_order() {
        let g = Nfa::new(&["1", "2", "10"], &["a"], &[], &["10", "1"]).unwrap();
        assert_eq!(g.format_states(g.initial()), "{1,10}");
    }
}
