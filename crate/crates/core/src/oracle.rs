//! Brute-force reference semantics evaluated directly on the plant.
//!
//! Nothing here uses the attack-observer: estimates are recomputed from
//! the plant's transition relation and the attacked set. These functions
//! exist to cross-check the pipeline on small instances, not to be fast.

use std::collections::{BTreeSet, HashMap};

use crate::attack_models::{AttackSpec, GamePhase};
use crate::automaton::{EventId, Label, StateId};
use crate::observer::StateEstimate;
use crate::plant::Nfa;
use crate::strategy::Decision;

/// One round of an attacked run: the system's event (none in the opening
/// round), the intruder's decision and, after an attack, its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AttackRound {
    pub event: Option<EventId>,
    pub decision: Decision,
    /// `Some(true)` for result `1`, `Some(false)` for `0`, `None` without
    /// an attack.
    pub result: Option<bool>,
}

/// An attacked run, round by round.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AttackTrace {
    pub rounds: Vec<AttackRound>,
}

impl AttackTrace {
    /// Number of attacks in the trace.
    pub fn attacks(&self) -> usize {
        self.rounds.iter().filter(|r| r.decision == Decision::Attack).count()
    }

    /// The trace as attack-observer labels.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        for r in &self.rounds {
            out.extend(r.event.map(Label::Event));
            out.push(r.decision.label());
            out.extend(r.result.map(Label::result));
        }
        out
    }
}

fn plant_image(g: &Nfa, q: &BTreeSet<StateId>, e: EventId) -> BTreeSet<StateId> {
    q.iter().flat_map(|&x| g.successors(x, e).iter().copied()).collect()
}

fn attack_filter(spec: &AttackSpec, q: &BTreeSet<StateId>, inside: bool) -> BTreeSet<StateId> {
    q.iter().copied().filter(|x| spec.attacked.contains(x) == inside).collect()
}

/// The intruder's estimate after `trace`, or `None` once it becomes empty.
///
/// Starting from the initial states, each round applies its event to the
/// current set and, after an attack, keeps the attacked states (result
/// `1`) or the others (result `0`).
pub fn filtered_estimate(g: &Nfa, spec: &AttackSpec, trace: &AttackTrace) -> Option<StateEstimate> {
    let mut q: BTreeSet<StateId> = g.initial().iter().copied().collect();
    for round in &trace.rounds {
        if let Some(e) = round.event {
            q = plant_image(g, &q, e);
        }
        if let Some(inside) = round.result {
            q = attack_filter(spec, &q, inside);
        }
        if q.is_empty() {
            return None;
        }
    }
    StateEstimate::new(q)
}

/// Whether the event string `s` with decisions `r_a` is a violating attack
/// sequence, read literally: some choice of results for all rounds but the
/// last makes every possible result of the last round violating.
///
/// `r_a` has one decision per round, so `r_a.len() == s.len() + 1`.
pub fn is_violating_attack_sequence(g: &Nfa, spec: &AttackSpec, s: &[EventId], r_a: &[Decision]) -> bool {
    assert_eq!(r_a.len(), s.len() + 1, "one decision per round");
    let events: Vec<Option<EventId>> = std::iter::once(None).chain(s.iter().map(|&e| Some(e))).collect();
    let attacks: Vec<usize> = (0..s.len()).filter(|&i| r_a[i] == Decision::Attack).collect();
    let build = |results: &[Option<bool>]| AttackTrace {
        rounds: events
            .iter()
            .zip(r_a)
            .zip(results)
            .map(|((&event, &decision), &result)| AttackRound { event, decision, result })
            .collect(),
    };
    (0u32..1 << attacks.len()).any(|bits| {
        let mut results = vec![None; s.len() + 1];
        for (j, &i) in attacks.iter().enumerate() {
            results[i] = Some(bits >> j & 1 == 1);
        }
        let finals: Vec<Option<bool>> = match r_a[s.len()] {
            Decision::Skip => vec![None],
            Decision::Attack => vec![Some(false), Some(true)],
        };
        let mut defined = 0;
        let all_violate = finals.iter().all(|&last| {
            results[s.len()] = last;
            match filtered_estimate(g, spec, &build(&results)) {
                Some(q) => {
                    defined += 1;
                    spec.mode.is_violated_by(&q)
                }
                None => last.is_some(),
            }
        });
        all_violate && defined > 0
    })
}

/// Enumerates every event string of length at most `horizon` and every
/// decision sequence within budget, and reports whether one is a violating
/// attack sequence in the literal sense of [`is_violating_attack_sequence`].
///
/// This reading lets the intruder pick the results of its earlier attacks,
/// so it can report violations that no actual play achieves.
pub fn oracle_check_violation_literal(g: &Nfa, spec: &AttackSpec, horizon: usize) -> bool {
    fn strings(n_events: usize, len: usize) -> Vec<Vec<EventId>> {
        (0..len).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|s| {
                    (0..n_events).map(move |e| {
                        let mut t = s.clone();
                        t.push(e);
                        t
                    })
                })
                .collect()
        })
    }
    (0..=horizon).any(|len| {
        strings(g.event_count(), len).into_iter().any(|s| {
            (0u32..1 << (len + 1)).any(|bits| {
                let r_a: Vec<Decision> = (0..=len)
                    .map(|i| if bits >> i & 1 == 1 { Decision::Attack } else { Decision::Skip })
                    .collect();
                r_a.iter().filter(|&&d| d == Decision::Attack).count() <= spec.budget as usize
                    && is_violating_attack_sequence(g, spec, &s, &r_a)
            })
        })
    })
}

type Node = (BTreeSet<StateId>, u32);

/// Game-tree search on the plant with memoization.
struct Search<'a> {
    g: &'a Nfa,
    spec: &'a AttackSpec,
    reach: HashMap<(Node, usize), bool>,
    safe: HashMap<(Node, usize), bool>,
    horizon: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a Nfa, spec: &'a AttackSpec, horizon: usize) -> Self {
        Search {
            g,
            spec,
            reach: HashMap::new(),
            safe: HashMap::new(),
            horizon,
        }
    }

    fn violating(&self, q: &BTreeSet<StateId>) -> bool {
        StateEstimate::new(q.iter().copied()).is_some_and(|q| self.spec.mode.is_violated_by(&q))
    }

    /// Nodes reachable by a decision at `q` with `k` attacks used, grouped
    /// per decision: skipping gives one node, attacking one per nonempty
    /// result.
    fn decisions(&self, q: &BTreeSet<StateId>, k: u32) -> Vec<Vec<Node>> {
        let mut out = vec![vec![(q.clone(), k)]];
        if k < self.spec.budget {
            let results: Vec<Node> = [false, true]
                .iter()
                .map(|&inside| attack_filter(self.spec, q, inside))
                .filter(|r| !r.is_empty())
                .map(|r| (r, k + 1))
                .collect();
            out.push(results);
        }
        out
    }

    fn events(&self, q: &BTreeSet<StateId>) -> Vec<BTreeSet<StateId>> {
        (0..self.g.event_count())
            .map(|e| plant_image(self.g, q, e))
            .filter(|q| !q.is_empty())
            .collect()
    }

    /// Whether the intruder, choosing events and decisions, can reach a
    /// violating estimate from `node` within `h` events whatever the
    /// attack results.
    fn can_reach(&mut self, node: &Node, h: usize) -> bool {
        if self.violating(&node.0) {
            return true;
        }
        if h == 0 {
            return false;
        }
        let key = (node.clone(), h);
        if let Some(&v) = self.reach.get(&key) {
            return v;
        }
        let mut win = false;
        'outer: for next in self.events(&node.0) {
            for results in self.decisions(&next, node.1) {
                if results.iter().all(|n| self.can_reach(n, h - 1)) {
                    win = true;
                    break 'outer;
                }
            }
        }
        self.reach.insert(key, win);
        win
    }

    /// Whether, for `h` more rounds, the intruder can answer every event
    /// with a decision that keeps every attack result at a node from which
    /// violation is still reachable.
    fn stays_winning(&mut self, node: &Node, h: usize) -> bool {
        if !self.can_reach(node, self.horizon) {
            return false;
        }
        if h == 0 {
            return true;
        }
        let key = (node.clone(), h);
        if let Some(&v) = self.safe.get(&key) {
            return v;
        }
        let mut ok = true;
        for next in self.events(&node.0) {
            let answered = self
                .decisions(&next, node.1)
                .into_iter()
                .any(|results| results.iter().all(|n| self.stays_winning(n, h - 1)));
            if !answered {
                ok = false;
                break;
            }
        }
        self.safe.insert(key, ok);
        ok
    }

    fn start(&self) -> BTreeSet<StateId> {
        self.g.initial().iter().copied().collect()
    }
}

/// Whether some event string of length at most `horizon`, with decisions
/// chosen along the way, leads to a violating estimate whatever the attack
/// results.
pub fn oracle_check_violation(g: &Nfa, spec: &AttackSpec, horizon: usize) -> bool {
    let mut search = Search::new(g, spec, horizon);
    let start = search.start();
    search
        .decisions(&start, 0)
        .into_iter()
        .any(|results| results.iter().all(|n| search.can_reach(n, horizon)))
}

/// [`oracle_check_violation`] started from an arbitrary game position:
/// the phase, the estimate and the number of attacks already launched
/// (including a pending one in the awaiting-result phase).
pub fn oracle_position_violating(
    g: &Nfa,
    spec: &AttackSpec,
    phase: GamePhase,
    estimate: &BTreeSet<StateId>,
    attacks: u32,
    horizon: usize,
) -> bool {
    let mut search = Search::new(g, spec, horizon);
    match phase {
        GamePhase::System => search.can_reach(&(estimate.clone(), attacks), horizon),
        GamePhase::Attacker => search
            .decisions(estimate, attacks)
            .into_iter()
            .any(|results| results.iter().all(|n| search.can_reach(n, horizon))),
        GamePhase::AwaitingResult => [false, true]
            .iter()
            .map(|&inside| attack_filter(spec, estimate, inside))
            .filter(|r| !r.is_empty())
            .all(|r| search.can_reach(&(r, attacks), horizon)),
    }
}

/// Whether the intruder can keep violation reachable for `depth` rounds
/// against every system event and attack result.
///
/// Once `depth` reaches the number of distinct `(estimate, attacks used)`
/// pairs, the answer no longer changes.
pub fn oracle_check_enforced(g: &Nfa, spec: &AttackSpec, depth: usize) -> bool {
    let mut search = Search::new(g, spec, depth);
    let start = search.start();
    search
        .decisions(&start, 0)
        .into_iter()
        .any(|results| results.iter().all(|n| search.stays_winning(n, depth)))
}
