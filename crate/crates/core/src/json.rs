//! Automaton JSON interchange.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::alphabet::Alphabet;
use crate::automaton::Automaton;
use crate::dfa::Dfa;
use crate::error::AutomatonError;
use crate::nfa::Nfa;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialJson {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionJson {
    pub from: usize,
    pub symbol: String,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsilonJson {
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub kind: String,
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: InitialJson,
    pub accepting: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub epsilon: Vec<EpsilonJson>,
}

fn format_err(e: impl std::fmt::Display) -> AutomatonError {
    AutomatonError::Format(e.to_string())
}

impl AutomatonJson {
    pub fn into_automaton(self) -> Result<Automaton, AutomatonError> {
        let alphabet = Alphabet::new(self.alphabet)?;
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for t in &self.transitions {
            transitions.push((t.from, alphabet.symbol(&t.symbol)?, t.to));
        }
        let accepting = self.accepting;
        match self.kind.as_str() {
            "dfa" => {
                if !self.epsilon.is_empty() {
                    return Err(AutomatonError::Format("a DFA cannot have epsilon edges".into()));
                }
                let InitialJson::One(initial) = self.initial else {
                    return Err(AutomatonError::Format("a DFA has a single initial state".into()));
                };
                Ok(Automaton::Dfa(Dfa::from_parts(
                    alphabet,
                    self.states,
                    initial,
                    &accepting,
                    &transitions,
                )?))
            }
            "nfa" => {
                let initial = match self.initial {
                    InitialJson::One(q) => vec![q],
                    InitialJson::Many(qs) => qs,
                };
                let eps: Vec<(usize, usize)> = self.epsilon.iter().map(|e| (e.from, e.to)).collect();
                Ok(Automaton::Nfa(Nfa::from_parts(
                    alphabet,
                    self.states,
                    &initial,
                    &accepting,
                    &transitions,
                    &eps,
                )?))
            }
            "pfa" => Err(AutomatonError::PfaUnsupported),
            other => Err(AutomatonError::Format(format!(
                "unknown kind `{other}` (expected dfa or nfa)"
            ))),
        }
    }

    pub fn from_automaton(automaton: &Automaton) -> Self {
        match automaton {
            Automaton::Dfa(d) => AutomatonJson {
                kind: "dfa".into(),
                alphabet: d.alphabet().labels().to_vec(),
                states: d.state_count(),
                initial: InitialJson::One(d.initial()),
                accepting: d.accepting_states().collect(),
                transitions: d
                    .transitions()
                    .map(|(from, s, to)| TransitionJson {
                        from,
                        symbol: d.alphabet().label(s).to_string(),
                        to,
                    })
                    .collect(),
                epsilon: Vec::new(),
            },
            Automaton::Nfa(n) => AutomatonJson {
                kind: "nfa".into(),
                alphabet: n.alphabet().labels().to_vec(),
                states: n.state_count(),
                initial: InitialJson::Many(n.initial().iter().copied().collect()),
                accepting: n.accepting_states().collect(),
                transitions: n
                    .transitions()
                    .map(|(from, s, to)| TransitionJson {
                        from,
                        symbol: n.alphabet().label(s).to_string(),
                        to,
                    })
                    .collect(),
                epsilon: n
                    .epsilon_edges()
                    .map(|(from, to)| EpsilonJson { from, to })
                    .collect(),
            },
        }
    }
}

/// Parses an automaton object. A `"kind": "pfa"` object is refused before
/// any other validation.
pub fn automaton_from_value(value: Value) -> Result<Automaton, AutomatonError> {
    if value.get("kind").and_then(Value::as_str) == Some("pfa") {
        return Err(AutomatonError::PfaUnsupported);
    }
    let parsed: AutomatonJson = serde_json::from_value(value).map_err(format_err)?;
    parsed.into_automaton()
}

pub fn automaton_from_str(text: &str) -> Result<Automaton, AutomatonError> {
    let value: Value = serde_json::from_str(text).map_err(format_err)?;
    automaton_from_value(value)
}

pub fn automaton_to_string(automaton: &Automaton) -> String {
    serde_json::to_string_pretty(&AutomatonJson::from_automaton(automaton))
        .expect("automaton JSON serializes")
}
