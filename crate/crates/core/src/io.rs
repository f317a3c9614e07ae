//! JSON documents for plants and attack specs.
//!
//! A model document lists states, events, initial states and transitions
//! as `[source, event, target]` triples:
//!
//! ```json
//! {
//!   "states": ["1", "2"],
//!   "events": ["a"],
//!   "initial": ["1"],
//!   "transitions": [["1", "a", "2"]]
//! }
//! ```
//!
//! A spec document names the attacked states, the budget and the mode,
//! which is either `"anonymity"` or `{"opacity": {"secret_states": [...]}}`:
//!
//! ```json
//! { "attacked_states": ["2"], "budget": 1, "mode": "anonymity" }
//! ```
//!
//! Event names `Y`, `N`, `0`, `1` and `ε` are reserved.

use serde::{Deserialize, Serialize};

use crate::attack_models::{AttackSpec, ViolationMode};
use crate::error::{ModelError, ParseError};
use crate::plant::Nfa;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub states: Vec<String>,
    pub events: Vec<String>,
    pub initial: Vec<String>,
    pub transitions: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeDocument {
    Anonymity,
    Opacity { secret_states: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub attacked_states: Vec<String>,
    pub budget: i64,
    pub mode: ModeDocument,
}

impl ModelDocument {
    pub fn from_nfa(g: &Nfa) -> Self {
        ModelDocument {
            states: g.state_names().to_vec(),
            events: g.event_names().to_vec(),
            initial: g.initial().iter().map(|&x| g.state_name(x).to_string()).collect(),
            transitions: g
                .transitions()
                .into_iter()
                .map(|(s, e, t)| {
                    (
                        g.state_name(s).to_string(),
                        g.event_name(e).to_string(),
                        g.state_name(t).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_nfa(&self) -> Result<Nfa, ModelError> {
        Nfa::new(&self.states, &self.events, &self.transitions, &self.initial)
    }
}

impl SpecDocument {
    pub fn from_spec(g: &Nfa, spec: &AttackSpec) -> Self {
        let names = |set: &std::collections::BTreeSet<usize>| set.iter().map(|&x| g.state_name(x).to_string()).collect();
        SpecDocument {
            attacked_states: names(&spec.attacked),
            budget: i64::from(spec.budget),
            mode: match &spec.mode {
                ViolationMode::Anonymity => ModeDocument::Anonymity,
                ViolationMode::Opacity { secret } => ModeDocument::Opacity {
                    secret_states: names(secret),
                },
            },
        }
    }

    pub fn to_spec(&self, g: &Nfa) -> Result<AttackSpec, ModelError> {
        let budget = u32::try_from(self.budget).map_err(|_| ModelError::NegativeBudget(self.budget))?;
        let mode = match &self.mode {
            ModeDocument::Anonymity => ViolationMode::Anonymity,
            ModeDocument::Opacity { secret_states } => ViolationMode::Opacity {
                secret: g.state_set(secret_states)?,
            },
        };
        Ok(AttackSpec {
            attacked: g.state_set(&self.attacked_states)?,
            budget,
            mode,
        })
    }
}

/// Reads a plant from a model document.
pub fn parse_model(text: &str) -> Result<Nfa, ParseError> {
    let doc: ModelDocument = serde_json::from_str(text)?;
    Ok(doc.to_nfa()?)
}

/// Reads an attack spec whose state names refer to `g`.
pub fn parse_spec(text: &str, g: &Nfa) -> Result<AttackSpec, ParseError> {
    let doc: SpecDocument = serde_json::from_str(text)?;
    Ok(doc.to_spec(g)?)
}

/// Writes `g` as a pretty-printed model document.
pub fn serialize_model(g: &Nfa) -> String {
    serde_json::to_string_pretty(&ModelDocument::from_nfa(g)).expect("model documents serialize")
}

/// Writes `spec` as a pretty-printed spec document.
pub fn serialize_spec(g: &Nfa, spec: &AttackSpec) -> String {
    serde_json::to_string_pretty(&SpecDocument::from_spec(g, spec)).expect("spec documents serialize")
}
