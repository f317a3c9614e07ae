//! Graphviz DOT export.
//!
//! Output is deterministic: nodes appear in state order and edges in
//! transition order. Attack-observer states are filled by type: type-I
//! red, type-II blue, type-III green.

use std::fmt::Write;
use std::hash::Hash;

use crate::attack_observer::{AttackObserver, StateType};
use crate::automaton::Automaton;
use crate::plant::Nfa;
use crate::strategy::MealyStrategy;
use crate::violation::SubAutomaton;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn fill(ty: StateType) -> &'static str {
    match ty {
        StateType::TypeI => "#f4a6a6",
        StateType::TypeII => "#a6c8f4",
        StateType::TypeIII => "#b8e6b0",
    }
}

struct Graph {
    out: String,
}

impl Graph {
    fn new(name: &str) -> Self {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=box, style=\"rounded,filled\", fillcolor=white];").unwrap();
        Graph { out }
    }

    fn empty(name: &str) -> String {
        format!("digraph {name} {{\n  empty [shape=plaintext, label=\"empty\"];\n}}\n")
    }

    fn node(&mut self, id: usize, label: &str, color: Option<&str>) {
        match color {
            Some(c) => writeln!(self.out, "  n{id} [label=\"{}\", fillcolor=\"{c}\"];", escape(label)),
            None => writeln!(self.out, "  n{id} [label=\"{}\"];", escape(label)),
        }
        .unwrap();
    }

    fn start(&mut self, targets: &[usize]) {
        writeln!(self.out, "  start [shape=point];").unwrap();
        for t in targets {
            writeln!(self.out, "  start -> n{t};").unwrap();
        }
    }

    fn edge(&mut self, s: usize, t: usize, label: &str) {
        writeln!(self.out, "  n{s} -> n{t} [label=\"{}\"];", escape(label)).unwrap();
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

/// Any automaton, naming states and labels through the given closures.
pub fn automaton_to_dot<S: Clone + Eq + Hash>(
    name: &str,
    a: &Automaton<S>,
    state_name: impl Fn(&S) -> String,
    label_name: impl Fn(crate::automaton::Label) -> String,
) -> String {
    if a.is_empty() {
        return Graph::empty(name);
    }
    let mut g = Graph::new(name);
    for (id, s) in a.states().iter().enumerate() {
        g.node(id, &state_name(s), None);
    }
    g.start(a.initial());
    for (s, l, t) in a.transitions() {
        g.edge(s, t, &label_name(l));
    }
    g.finish()
}

pub fn plant_to_dot(g: &Nfa) -> String {
    automaton_to_dot("plant", g.automaton(), |&x| g.state_name(x).to_string(), |l| g.label_name(l))
}

pub fn observer_to_dot(g: &Nfa) -> String {
    automaton_to_dot("observer", &g.observer(), |q| g.format_estimate(q), |l| g.label_name(l))
}

/// The full attack-observer.
pub fn aobs_to_dot(aobs: &AttackObserver) -> String {
    let mut g = Graph::new("attack_observer");
    for id in 0..aobs.len() {
        g.node(id, &aobs.state_label(id), Some(fill(aobs.state_type(id))));
    }
    g.start(&[aobs.initial()]);
    for id in 0..aobs.len() {
        for (l, t) in aobs.outgoing(id) {
            g.edge(id, t, &aobs.label_name(l));
        }
    }
    g.finish()
}

/// A verifier or final verifier; an empty one renders as a single
/// `empty` node.
pub fn sub_automaton_to_dot(name: &str, v: &SubAutomaton) -> String {
    let Some(root) = v.initial() else {
        return Graph::empty(name);
    };
    let aobs = v.parent();
    let mut g = Graph::new(name);
    for &id in v.kept() {
        g.node(id, &aobs.state_label(id), Some(fill(aobs.state_type(id))));
    }
    g.start(&[root]);
    for (s, l, t) in v.transitions() {
        g.edge(s, t, &aobs.label_name(l));
    }
    g.finish()
}

/// A strategy, with edges labeled `e/N`, `e/Y0` or `e/Y1`.
pub fn strategy_to_dot(s: &MealyStrategy) -> String {
    let aobs = s.aobs();
    let mut g = Graph::new("strategy");
    for &id in s.states() {
        g.node(id, &aobs.state_label(id), Some(fill(aobs.state_type(id))));
    }
    g.start(&[s.initial()]);
    for e in s.edges() {
        g.edge(e.source, e.target, &s.edge_label(e.input, e.output));
    }
    g.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attack_models::AttackSpec;
    use crate::enforcement::{check_enforced, TypeIIReading};
    use crate::samples::two_branch_plant;
    use crate::strategy::{synthesize_strategy, Policy};

    #[test]
    fn empty_final_verifier_renders_empty_node() {
        let g = two_branch_plant();
        let spec = AttackSpec::anonymity_named(&g, &["2", "4"], 1).unwrap();
        let fv = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().final_verifier;
        assert_eq!(
            sub_automaton_to_dot("final_verifier", &fv),
            "digraph final_verifier {\n  empty [shape=plaintext, label=\"empty\"];\n}\n"
        );
    }

    #[test]
    fn strategy_edges_use_slash_labels() {
        let g = two_branch_plant();
        let spec = AttackSpec::anonymity_named(&g, &["2", "4", "8", "9"], 1).unwrap();
        let fv = check_enforced(&g, &spec, TypeIIReading::AllResults).unwrap().final_verifier;
        let dot = strategy_to_dot(&synthesize_strategy(&fv, Policy::Ranked).unwrap());
        for l in ["ε/N", "a/N", "d/N", "b/Y0", "b/Y1"] {
            assert!(dot.contains(&format!("[label=\"{l}\"]")), "{l} missing");
        }
    }

    #[test]
    fn observer_dot_is_deterministic() {
        let g = two_branch_plant();
        assert_eq!(observer_to_dot(&g), observer_to_dot(&g));
        assert!(observer_to_dot(&g).contains("n0 [label=\"{1,10}\"]"));
    }
}
