//! Explicit finite automata over the shared [`Label`] alphabet.
//!
//! Every structure built by this crate (the plant, its attack model, the
//! counters of the game, their products and observers) is an
//! [`Automaton`]: a finite set of states of some type `S`, a label
//! alphabet, a transition relation and a set of initial states. States are
//! stored densely and addressed by their position; the original values are
//! kept for display and lookup.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

/// Index of a plant state inside its [`crate::Nfa`].
pub type StateId = usize;

/// Index of a plant event inside its [`crate::Nfa`].
pub type EventId = usize;

/// A transition label.
///
/// Plant events are referenced by index. The remaining four labels are the
/// intruder's vocabulary: the decision to attack (`Y`) or not (`N`), and the
/// two possible answers of an attack (`0`: the current state is outside the
/// attacked set, `1`: it is inside).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Event(EventId),
    /// `Y`
    Attack,
    /// `N`
    Skip,
    /// `0`
    Outside,
    /// `1`
    Inside,
}

impl Label {
    pub fn is_event(&self) -> bool {
        matches!(self, Label::Event(_))
    }

    pub fn is_decision(&self) -> bool {
        matches!(self, Label::Attack | Label::Skip)
    }

    pub fn is_result(&self) -> bool {
        matches!(self, Label::Outside | Label::Inside)
    }

    /// The result label reporting membership `inside`.
    pub fn result(inside: bool) -> Label {
        if inside {
            Label::Inside
        } else {
            Label::Outside
        }
    }

    /// Renders the label, resolving plant events through `events`.
    pub fn name<'a>(&self, events: &'a [String]) -> std::borrow::Cow<'a, str> {
        match self {
            Label::Event(e) => std::borrow::Cow::Borrowed(events[*e].as_str()),
            Label::Attack => "Y".into(),
            Label::Skip => "N".into(),
            Label::Outside => "0".into(),
            Label::Inside => "1".into(),
        }
    }

    /// The four intruder labels, `Y`, `N`, `0`, `1`.
    pub fn intruder_labels() -> [Label; 4] {
        [Label::Attack, Label::Skip, Label::Outside, Label::Inside]
    }
}

/// A finite automaton with states of type `S`.
///
/// The transition relation may be nondeterministic; [`Automaton::is_deterministic`]
/// tells whether it is a (partial) function with a single initial state.
#[derive(Clone, Debug)]
pub struct Automaton<S> {
    states: Vec<S>,
    index: HashMap<S, usize>,
    alphabet: BTreeSet<Label>,
    edges: Vec<BTreeMap<Label, Vec<usize>>>,
    initial: Vec<usize>,
}

impl<S: Clone + Eq + Hash> Automaton<S> {
    pub fn new(alphabet: impl IntoIterator<Item = Label>) -> Self {
        Automaton {
            states: Vec::new(),
            index: HashMap::new(),
            alphabet: alphabet.into_iter().collect(),
            edges: Vec::new(),
            initial: Vec::new(),
        }
    }

    /// Inserts `state` if absent and returns its position.
    pub fn add_state(&mut self, state: S) -> usize {
        if let Some(&id) = self.index.get(&state) {
            return id;
        }
        let id = self.states.len();
        self.index.insert(state.clone(), id);
        self.states.push(state);
        self.edges.push(BTreeMap::new());
        id
    }

    pub fn add_initial(&mut self, id: usize) {
        if let Err(pos) = self.initial.binary_search(&id) {
            self.initial.insert(pos, id);
        }
    }

    /// Adds `source -label-> target`, extending the alphabet if needed.
    /// Declares `label` part of the alphabet even if no transition uses it,
    /// so composition synchronizes on it.
    pub fn add_label(&mut self, label: Label) {
        self.alphabet.insert(label);
    }

    pub fn add_transition(&mut self, source: usize, label: Label, target: usize) {
        self.alphabet.insert(label);
        let targets = self.edges[source].entry(label).or_default();
        if let Err(pos) = targets.binary_search(&target) {
            targets.insert(pos, target);
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &S {
        &self.states[id]
    }

    pub fn id_of(&self, state: &S) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn alphabet(&self) -> &BTreeSet<Label> {
        &self.alphabet
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    /// Targets of `label` from `id`, empty when undefined.
    pub fn successors(&self, id: usize, label: Label) -> &[usize] {
        self.edges[id].get(&label).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The unique target of `label` from `id`, if defined.
    ///
    /// # Panics
    ///
    /// Panics if the transition is nondeterministic.
    pub fn successor(&self, id: usize, label: Label) -> Option<usize> {
        match self.successors(id, label) {
            [] => None,
            [t] => Some(*t),
            _ => panic!("nondeterministic transition queried as a function"),
        }
    }

    /// Outgoing transitions of `id`, grouped by label in label order.
    pub fn outgoing(&self, id: usize) -> impl Iterator<Item = (Label, &[usize])> + '_ {
        self.edges[id].iter().map(|(l, t)| (*l, t.as_slice()))
    }

    /// Labels with at least one outgoing transition at `id`.
    pub fn enabled(&self, id: usize) -> BTreeSet<Label> {
        self.edges[id].keys().copied().collect()
    }

    /// All transitions as `(source, label, target)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Label, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(s, m)| {
            m.iter()
                .flat_map(move |(l, ts)| ts.iter().map(move |t| (s, *l, *t)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.edges
            .iter()
            .map(|m| m.values().map(Vec::len).sum::<usize>())
            .sum()
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.edges.iter().all(|m| m.values().all(|t| t.len() <= 1))
    }

    /// Positions reachable from the initial states, in ascending order.
    pub fn reachable(&self) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = self.initial.iter().copied().collect();
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for targets in self.edges[s].values() {
                for &t in targets {
                    if seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    /// The sub-automaton of states reachable from the initial states.
    ///
    /// Surviving states keep their relative order and the alphabet is
    /// unchanged.
    pub fn accessible_part(&self) -> Automaton<S> {
        let keep = self.reachable();
        let mut out = Automaton::new(self.alphabet.iter().copied());
        let mut remap = HashMap::new();
        for &s in &keep {
            remap.insert(s, out.add_state(self.states[s].clone()));
        }
        for &s in &self.initial {
            out.add_initial(remap[&s]);
        }
        for (s, l, t) in self.transitions() {
            if let (Some(&s2), Some(&t2)) = (remap.get(&s), remap.get(&t)) {
                out.add_transition(s2, l, t2);
            }
        }
        out
    }

    /// Maps every state through `f`, which must be injective.
    pub fn map_states<T: Clone + Eq + Hash>(&self, mut f: impl FnMut(&S) -> T) -> Automaton<T> {
        let mut out = Automaton::new(self.alphabet.iter().copied());
        for s in &self.states {
            let id = out.add_state(f(s));
            debug_assert_eq!(id + 1, out.len(), "map_states requires an injective map");
        }
        for &s in &self.initial {
            out.add_initial(s);
        }
        for (s, l, t) in self.transitions() {
            out.add_transition(s, l, t);
        }
        out
    }
}

/// Product of two automata.
///
/// Shared labels synchronize and combine every pair of targets; labels
/// private to one side move that side only. The initial states are all
/// pairs of initial states, and only the part reachable from them is built.
pub fn compose<A, B>(left: &Automaton<A>, right: &Automaton<B>) -> Automaton<(A, B)>
where
    A: Clone + Eq + Hash,
    B: Clone + Eq + Hash,
{
    let alphabet: BTreeSet<Label> = left.alphabet.union(&right.alphabet).copied().collect();
    let mut product = Product {
        out: Automaton::new(alphabet.iter().copied()),
        pairs: Vec::new(),
        queue: VecDeque::new(),
        left,
        right,
    };

    for &l in &left.initial {
        for &r in &right.initial {
            let id = product.intern(l, r);
            product.out.add_initial(id);
        }
    }

    while let Some(id) = product.queue.pop_front() {
        let (l, r) = product.pairs[id];
        for &label in &alphabet {
            let ls: &[usize] = if left.alphabet.contains(&label) {
                left.successors(l, label)
            } else {
                std::slice::from_ref(&l)
            };
            let rs: &[usize] = if right.alphabet.contains(&label) {
                right.successors(r, label)
            } else {
                std::slice::from_ref(&r)
            };
            for &a in ls {
                for &b in rs {
                    let t = product.intern(a, b);
                    product.out.add_transition(id, label, t);
                }
            }
        }
    }
    product.out
}

struct Product<'a, A, B> {
    out: Automaton<(A, B)>,
    pairs: Vec<(usize, usize)>,
    queue: VecDeque<usize>,
    left: &'a Automaton<A>,
    right: &'a Automaton<B>,
}

impl<A: Clone + Eq + Hash, B: Clone + Eq + Hash> Product<'_, A, B> {
    fn intern(&mut self, l: usize, r: usize) -> usize {
        let before = self.out.len();
        let id = self
            .out
            .add_state((self.left.states[l].clone(), self.right.states[r].clone()));
        if id == before {
            self.pairs.push((l, r));
            self.queue.push_back(id);
        }
        id
    }
}

/// Canonical rendering of a set of state names, e.g. `{1,10}`.
pub fn format_set<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::from("{");
    for (i, n) in names.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(n);
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Automaton<u8> {
        let mut a = Automaton::new([Label::Event(0)]);
        let s0 = a.add_state(0);
        let s1 = a.add_state(1);
        let s2 = a.add_state(2);
        a.add_initial(s0);
        a.add_transition(s0, Label::Event(0), s1);
        a.add_transition(s1, Label::Event(0), s0);
        let _ = s2;
        a
    }

    #[test]
    fn accessible_part_drops_isolated_state() {
        let a = chain();
        let acc = a.accessible_part();
        assert_eq!(acc.states(), &[0, 1]);
        assert_eq!(acc.initial(), &[0]);
        assert_eq!(acc.transition_count(), 2);
    }

    #[test]
    fn accessible_part_of_connected_automaton_is_identity() {
        let mut a = chain();
        a.add_transition(1, Label::Event(0), 2);
        let acc = a.accessible_part();
        assert_eq!(acc.states(), a.states());
        assert_eq!(acc.transitions().collect::<Vec<_>>(), a.transitions().collect::<Vec<_>>());
    }

    #[test]
    fn compose_with_neutral_automaton() {
        let a = chain().accessible_part();
        let mut unit: Automaton<()> = Automaton::new([]);
        let u = unit.add_state(());
        unit.add_initial(u);
        let c = compose(&a, &unit);
        assert_eq!(c.len(), a.len());
        let projected: Vec<_> = c.transitions().map(|(s, l, t)| (c.state(s).0, l, c.state(t).0)).collect();
        let original: Vec<_> = a.transitions().map(|(s, l, t)| (*a.state(s), l, *a.state(t))).collect();
        assert_eq!(projected, original);
    }

    #[test]
    fn shared_label_requires_both_sides() {
        let mut a: Automaton<u8> = Automaton::new([Label::Event(0), Label::Event(1)]);
        let a0 = a.add_state(0);
        let a1 = a.add_state(1);
        a.add_initial(a0);
        a.add_transition(a0, Label::Event(0), a1);
        a.add_transition(a0, Label::Event(1), a1);
        let mut b: Automaton<u8> = Automaton::new([Label::Event(1), Label::Attack]);
        let b0 = b.add_state(0);
        let b1 = b.add_state(1);
        b.add_initial(b0);
        b.add_transition(b0, Label::Attack, b1);
        let c = compose(&a, &b);
        let start = c.initial()[0];
        assert_eq!(c.successors(start, Label::Event(1)), &[] as &[usize]);
        assert_eq!(c.successors(start, Label::Event(0)).len(), 1);
        assert_eq!(c.successors(start, Label::Attack).len(), 1);
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn label_names() {
        let events = vec!["a".to_string()];
        let names: Vec<_> = [Label::Event(0), Label::Attack, Label::Skip, Label::Outside, Label::Inside]
            .iter()
            .map(|l| l.name(&events).into_owned())
            .collect();
        assert_eq!(names, ["a", "Y", "N", "0", "1"]);
    }
}
