//! Subset-construction observers and the attack-free anonymity and opacity
//! checks.

use std::collections::{BTreeSet, VecDeque};
use std::hash::Hash;

use crate::automaton::{Automaton, EventId, Label, StateId};
use crate::plant::Nfa;

/// A nonempty set of states, kept sorted so that equal sets are equal values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateEstimate(Vec<usize>);

impl StateEstimate {
    /// Builds an estimate, or `None` when `members` is empty.
    pub fn new(members: impl IntoIterator<Item = usize>) -> Option<Self> {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            None
        } else {
            Some(StateEstimate(v))
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, set: &BTreeSet<usize>) -> bool {
        self.0.iter().all(|x| set.contains(x))
    }

    pub fn intersects(&self, set: &BTreeSet<usize>) -> bool {
        self.0.iter().any(|x| set.contains(x))
    }

    /// Members satisfying `keep`, or `None` if none do.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Option<Self> {
        StateEstimate::new(self.0.iter().copied().filter(|&x| keep(x)))
    }
}

/// Image of `q` under `label`, or `None` if it is empty.
pub fn image<S: Clone + Eq + Hash>(a: &Automaton<S>, q: &StateEstimate, label: Label) -> Option<StateEstimate> {
    StateEstimate::new(q.members().iter().flat_map(|&x| a.successors(x, label).iter().copied()))
}

/// The observer of `a`: a deterministic automaton over estimates.
///
/// Its single initial state is the set of initial states of `a`, and a
/// transition on `label` exists from `q` exactly when some member of `q`
/// has a `label`-successor. Only reachable estimates are built. Estimates
/// hold positions of `a`.
pub fn observer<S: Clone + Eq + Hash>(a: &Automaton<S>) -> Automaton<StateEstimate> {
    let mut obs = Automaton::new(a.alphabet().iter().copied());
    let Some(start) = StateEstimate::new(a.initial().iter().copied()) else {
        return obs;
    };
    let id = obs.add_state(start);
    obs.add_initial(id);
    let mut queue = VecDeque::from([id]);
    while let Some(id) = queue.pop_front() {
        let q = obs.state(id).clone();
        for &label in a.alphabet() {
            if let Some(next) = image(a, &q, label) {
                let before = obs.len();
                let t = obs.add_state(next);
                if t == before {
                    queue.push_back(t);
                }
                obs.add_transition(id, label, t);
            }
        }
    }
    obs
}

impl Nfa {
    /// The observer of this plant.
    pub fn observer(&self) -> Automaton<StateEstimate> {
        observer(self.automaton())
    }
}

/// Events enabled at some member of `q`.
pub fn enabled_events(g: &Nfa, q: &StateEstimate) -> BTreeSet<EventId> {
    q.members().iter().flat_map(|&x| g.enabled_at(x)).collect()
}

/// Whether no observation ever narrows the estimate to a single state.
pub fn check_anonymity_classic(g: &Nfa) -> bool {
    g.observer().states().iter().all(|q| q.len() > 1)
}

/// Whether every reachable estimate contains a state outside `secret`.
pub fn check_opacity_classic(g: &Nfa, secret: &BTreeSet<StateId>) -> bool {
    g.observer().states().iter().all(|q| !q.is_subset_of(secret))
}
