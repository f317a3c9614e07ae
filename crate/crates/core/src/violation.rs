//! Deciding whether the intruder can disclose the plant state at all.
//!
//! A state of the attack-observer is *intermediate violating* when some
//! choice of system events and attack decisions, robust to every attack
//! result, leads to a violating estimate. The verifier is the
//! attack-observer restricted to those states; the plant can be violated
//! exactly when the verifier keeps the initial state.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::attack_models::{AttackSpec, ViolationMode};
use crate::attack_observer::{build_attack_observer, AttackObserver, StateType};
use crate::automaton::Label;
use crate::error::ModelError;
use crate::observer::StateEstimate;
use crate::plant::Nfa;

/// Whether `estimate` discloses what `mode` protects.
pub fn violation_predicate(estimate: &StateEstimate, mode: &ViolationMode) -> bool {
    mode.is_violated_by(estimate)
}

/// A restriction of an attack-observer to a subset of its states.
///
/// Transitions are those of the parent between kept states. When the
/// parent's initial state is not kept the sub-automaton is empty.
#[derive(Clone, Debug)]
pub struct SubAutomaton {
    parent: Arc<AttackObserver>,
    kept: BTreeSet<usize>,
}

impl SubAutomaton {
    /// Restricts `parent` to the part of `states` reachable from the
    /// initial state without leaving `states`.
    pub fn restrict(parent: Arc<AttackObserver>, states: &BTreeSet<usize>) -> SubAutomaton {
        let mut kept = BTreeSet::new();
        let root = parent.initial();
        if states.contains(&root) {
            kept.insert(root);
            let mut queue = VecDeque::from([root]);
            while let Some(s) = queue.pop_front() {
                for (_, t) in parent.outgoing(s) {
                    if states.contains(&t) && kept.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
        }
        SubAutomaton { parent, kept }
    }

    pub fn parent(&self) -> &Arc<AttackObserver> {
        &self.parent
    }

    /// Kept states, as positions in the parent.
    pub fn kept(&self) -> &BTreeSet<usize> {
        &self.kept
    }

    pub fn contains(&self, id: usize) -> bool {
        self.kept.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    /// The parent's initial state, if kept.
    pub fn initial(&self) -> Option<usize> {
        let root = self.parent.initial();
        self.kept.contains(&root).then_some(root)
    }

    /// The transition on `label` from `id`, if both ends are kept.
    pub fn successor(&self, id: usize, label: Label) -> Option<usize> {
        if !self.contains(id) {
            return None;
        }
        self.parent.successor(id, label).filter(|t| self.contains(*t))
    }

    /// Kept transitions as `(source, label, target)`.
    pub fn transitions(&self) -> Vec<(usize, Label, usize)> {
        self.kept
            .iter()
            .flat_map(|&s| {
                self.parent
                    .outgoing(s)
                    .filter(|(_, t)| self.contains(*t))
                    .map(move |(l, t)| (s, l, t))
            })
            .collect()
    }

    /// Rendered labels of the kept states, sorted.
    pub fn state_labels(&self) -> BTreeSet<String> {
        self.kept.iter().map(|&s| self.parent.state_label(s)).collect()
    }

    /// Kept states of the given type.
    pub fn states_of_type(&self, ty: StateType) -> impl Iterator<Item = usize> + '_ {
        self.kept.iter().copied().filter(move |&s| self.parent.state_type(s) == ty)
    }

    /// A shortest kept path from the initial state to a violating state,
    /// as the labels along it.
    pub fn witness(&self) -> Option<Vec<Label>> {
        let root = self.initial()?;
        let mut back: Vec<Option<(Label, usize)>> = vec![None; self.parent.len()];
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            if self.parent.is_violating(s) {
                let mut path = Vec::new();
                let mut cur = s;
                while let Some((l, p)) = back[cur] {
                    path.push(l);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for (l, t) in self.parent.outgoing(s) {
                if self.contains(t) && seen.insert(t) {
                    back[t] = Some((l, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }
}

/// The intermediate-violating states of `aobs`, by backward worklist.
///
/// Least set containing the violating type-I states and closed under:
/// a type-II state joins once every result it can receive leads into the
/// set; a type-III state joins once some decision does; a type-I state
/// joins once some event does.
pub fn intermediate_violating_fixpoint(aobs: &AttackObserver) -> BTreeSet<usize> {
    let n = aobs.len();
    let mut pending: Vec<usize> = (0..n)
        .map(|s| match aobs.state_type(s) {
            StateType::TypeII => aobs.outgoing(s).count(),
            _ => 1,
        })
        .collect();
    let mut member: Vec<bool> = (0..n).map(|s| aobs.is_violating(s)).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&s| member[s]).collect();
    while let Some(t) = queue.pop_front() {
        for &(_, s) in aobs.predecessors(t) {
            if member[s] {
                continue;
            }
            pending[s] -= 1;
            if pending[s] == 0 {
                member[s] = true;
                queue.push_back(s);
            }
        }
    }
    (0..n).filter(|&s| member[s]).collect()
}

/// The same fixpoint computed by repeated sweeps over type-I, type-II and
/// type-III states until nothing changes.
pub fn intermediate_violating_sweep(aobs: &AttackObserver) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = (0..aobs.len()).filter(|&s| aobs.is_violating(s)).collect();
    loop {
        let before = set.len();
        for ty in [StateType::TypeI, StateType::TypeII, StateType::TypeIII] {
            for s in 0..aobs.len() {
                if aobs.state_type(s) != ty || set.contains(&s) {
                    continue;
                }
                let mut next = aobs.outgoing(s).map(|(_, t)| t);
                let joins = match ty {
                    StateType::TypeII => next.all(|t| set.contains(&t)),
                    _ => next.any(|t| set.contains(&t)),
                };
                if joins {
                    set.insert(s);
                }
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// The attack-observer restricted to `iav`, keeping the part reachable
/// from the initial state.
pub fn build_verifier(aobs: Arc<AttackObserver>, iav: &BTreeSet<usize>) -> SubAutomaton {
    SubAutomaton::restrict(aobs, iav)
}

/// Result of [`check_violation`].
#[derive(Clone, Debug)]
pub struct ViolationOutcome {
    /// Whether some attack sequence discloses the property.
    pub verdict: bool,
    pub verifier: SubAutomaton,
}

/// Builds the verifier for `g` under `spec` and decides violation.
pub fn check_violation(g: &Nfa, spec: &AttackSpec) -> Result<ViolationOutcome, ModelError> {
    let aobs = Arc::new(build_attack_observer(g, spec)?);
    Ok(verify(aobs))
}

/// [`check_violation`] on an attack-observer that is already built.
pub fn verify(aobs: Arc<AttackObserver>) -> ViolationOutcome {
    let iav = intermediate_violating_fixpoint(&aobs);
    let verifier = build_verifier(aobs, &iav);
    ViolationOutcome {
        verdict: !verifier.is_empty(),
        verifier,
    }
}
