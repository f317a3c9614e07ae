//! Seeded random plants and attack specs for differential testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::attack_models::{AttackSpec, ViolationMode};
use crate::plant::Nfa;

/// Shape of the generated plants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Any transition relation, including states without outgoing events.
    General,
    /// Every state has at least one outgoing transition, so runs never halt.
    NonBlocking,
}

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_states: usize,
    pub max_events: usize,
    pub max_budget: u32,
    /// Probability that a given `(source, event, target)` triple exists.
    pub density: f64,
    /// Probability of an opacity spec instead of an anonymity one.
    pub opacity_share: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 5,
            max_events: 3,
            max_budget: 2,
            density: 0.25,
            opacity_share: 0.3,
        }
    }
}

/// A generated plant together with an attack spec.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub plant: Nfa,
    pub spec: AttackSpec,
}

/// Generates one instance from `seed`.
pub fn random_instance(seed: u64, flavor: Flavor, limits: &Limits) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=limits.max_states);
    let m = rng.gen_range(1..=limits.max_events);
    let states: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let events: Vec<String> = (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut transitions = Vec::new();
    for s in 0..n {
        let before = transitions.len();
        for event in &events {
            for t in 0..n {
                if rng.gen_bool(limits.density) {
                    transitions.push((states[s].clone(), event.clone(), states[t].clone()));
                }
            }
        }
        if flavor == Flavor::NonBlocking && transitions.len() == before {
            let e = rng.gen_range(0..m);
            let t = rng.gen_range(0..n);
            transitions.push((states[s].clone(), events[e].clone(), states[t].clone()));
        }
    }
    // a single initial state makes most instances violate immediately
    let mut initial: Vec<String> = states.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    while initial.len() < n.min(2) {
        let s = &states[rng.gen_range(0..n)];
        if !initial.contains(s) {
            initial.push(s.clone());
        }
    }
    let plant = Nfa::new(&states, &events, &transitions, &initial).expect("generated plant is well formed");
    let attacked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let budget = rng.gen_range(0..=limits.max_budget);
    let mode = if rng.gen_bool(limits.opacity_share) {
        ViolationMode::Opacity {
            secret: (0..n).filter(|_| rng.gen_bool(0.4)).collect(),
        }
    } else {
        ViolationMode::Anonymity
    };
    let spec = AttackSpec {
        attacked: attacked.into_iter().collect(),
        budget,
        mode,
    };
    Instance { seed, plant, spec }
}

/// `count` instances generated from consecutive seeds starting at `first_seed`.
pub fn corpus(first_seed: u64, count: usize, flavor: Flavor, limits: &Limits) -> Vec<Instance> {
    (0..count as u64)
        .map(|i| random_instance(first_seed + i, flavor, limits))
        .collect()
}
