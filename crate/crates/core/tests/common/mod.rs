//! Generators and brute-force helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use stateattack::attack_models::{AttackSpec, ViolationMode};
use stateattack::oracle::{AttackRound, AttackTrace};
use stateattack::plant::Nfa;
use stateattack::strategy::Decision;

/// Random plants with up to `max_states` states and `max_events` events.
pub fn arb_plant(max_states: usize, max_events: usize) -> impl Strategy<Value = Nfa> {
    (1..=max_states, 1..=max_events)
        .prop_flat_map(|(n, m)| {
            (
                Just(n),
                Just(m),
                proptest::collection::vec(proptest::bool::weighted(0.25), n * m * n),
                proptest::collection::vec(proptest::bool::weighted(0.6), n),
                0..n,
            )
        })
        .prop_map(|(n, m, edges, init, fallback)| {
            let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
            let events: Vec<String> = (0..m).map(|i| format!("e{i}")).collect();
            let mut transitions = Vec::new();
            for s in 0..n {
                for e in 0..m {
                    for t in 0..n {
                        if edges[(s * m + e) * n + t] {
                            transitions.push((states[s].clone(), events[e].clone(), states[t].clone()));
                        }
                    }
                }
            }
            let mut initial: Vec<String> = (0..n).filter(|&i| init[i]).map(|i| states[i].clone()).collect();
            if initial.is_empty() {
                initial.push(states[fallback].clone());
            }
            Nfa::new(&states, &events, &transitions, &initial).unwrap()
        })
}

/// Random subset of `0..n`.
pub fn arb_subset(n: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|bits| (0..bits.len()).filter(|&i| bits[i]).collect())
}

/// Random plant with an anonymity or opacity spec, budget up to `max_budget`.
pub fn arb_instance(max_states: usize, max_events: usize, max_budget: u32) -> impl Strategy<Value = (Nfa, AttackSpec)> {
    arb_plant(max_states, max_events).prop_flat_map(move |g| {
        let n = g.state_count();
        (Just(g), arb_subset(n), 0..=max_budget, proptest::option::weighted(0.3, arb_subset(n))).prop_map(
            |(g, attacked, budget, secret)| {
                let mode = match secret {
                    Some(secret) => ViolationMode::Opacity { secret },
                    None => ViolationMode::Anonymity,
                };
                (g, AttackSpec { attacked, budget, mode })
            },
        )
    })
}

/// All strings over `0..events` of length at most `max_len`.
pub fn strings(events: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<usize>| {
                (0..events).map(move |e| {
                    let mut t = s.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// States reachable from the initial states under `s`, straight from the
/// transition list.
pub fn reach_under(g: &Nfa, s: &[usize]) -> BTreeSet<usize> {
    let trans = g.transitions();
    let mut cur: BTreeSet<usize> = g.initial().iter().copied().collect();
    for &e in s {
        cur = trans
            .iter()
            .filter(|(src, ev, _)| *ev == e && cur.contains(src))
            .map(|&(_, _, t)| t)
            .collect();
    }
    cur
}

/// Every attack trace with at most `rounds` rounds and at most `budget`
/// attacks, over `events` events.
pub fn all_traces(events: usize, rounds: usize, budget: usize) -> Vec<AttackTrace> {
    let options = |event: Option<usize>| {
        let mut v = vec![AttackRound {
            event,
            decision: Decision::Skip,
            result: None,
        }];
        for r in [false, true] {
            v.push(AttackRound {
                event,
                decision: Decision::Attack,
                result: Some(r),
            });
        }
        v
    };
    let mut out = Vec::new();
    let mut layer: Vec<AttackTrace> = options(None)
        .into_iter()
        .map(|r| AttackTrace { rounds: vec![r] })
        .collect();
    for _ in 0..rounds {
        layer.retain(|t| t.attacks() <= budget);
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|t| {
                (0..events).flat_map(move |e| {
                    options(Some(e)).into_iter().map(move |r| {
                        let mut t = t.clone();
                        t.rounds.push(r);
                        t
                    })
                })
            })
            .collect();
    }
    out
}
