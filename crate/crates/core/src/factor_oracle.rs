//! Factor oracles and the windowed non-direct-transition admissibility DFA.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::dfa::{Dfa, StateId};
use crate::error::AutomatonError;
use crate::nfa::Nfa;

/// Oracle over a reference word of length N: states 0..=N, all accepting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorOracle {
    alphabet: Alphabet,
    word: Vec<Symbol>,
    forward: Vec<Vec<Option<StateId>>>,
    suffix: Vec<Option<StateId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionClass {
    Direct,
    NonDirect,
    None,
}

/// Edge listing used for export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEdges {
    pub direct: Vec<(StateId, String, StateId)>,
    pub external: Vec<(StateId, String, StateId)>,
    pub suffix_links: Vec<(StateId, StateId)>,
}

impl FactorOracle {
    /// Online construction: each new state i gets the chain edge i−1 → i;
    /// then suffix links are followed from i−1, adding an external edge to i
    /// wherever the new symbol is missing, and the link of i is the target
    /// found where the walk stops (or 0).
    pub fn build(alphabet: Alphabet, word: &[Symbol]) -> Result<Self, AutomatonError> {
        if word.is_empty() {
            return Err(AutomatonError::Invalid("reference word is empty".into()));
        }
        if let Some(&s) = word.iter().find(|&&s| s >= alphabet.len()) {
            return Err(AutomatonError::Invalid(format!("symbol {s} out of range")));
        }
        let width = alphabet.len();
        let mut forward: Vec<Vec<Option<StateId>>> = vec![vec![None; width]; word.len() + 1];
        let mut suffix: Vec<Option<StateId>> = vec![None; word.len() + 1];
        for i in 1..=word.len() {
            let sigma = word[i - 1];
            forward[i - 1][sigma] = Some(i);
            let mut k = suffix[i - 1];
            while let Some(state) = k {
                if forward[state][sigma].is_some() {
                    break;
                }
                forward[state][sigma] = Some(i);
                k = suffix[state];
            }
            suffix[i] = Some(match k {
                None => 0,
                Some(state) => forward[state][sigma].unwrap(),
            });
        }
        Ok(FactorOracle {
            alphabet,
            word: word.to_vec(),
            forward,
            suffix,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn reference(&self) -> &[Symbol] {
        &self.word
    }

    pub fn state_count(&self) -> usize {
        self.word.len() + 1
    }

    pub fn forward(&self, q: StateId, symbol: Symbol) -> Option<StateId> {
        self.forward.get(q)?.get(symbol).copied().flatten()
    }

    pub fn suffix_link(&self, q: StateId) -> Option<StateId> {
        self.suffix[q]
    }

    pub fn classify_transition(&self, from: StateId, symbol: Symbol) -> TransitionClass {
        match self.forward(from, symbol) {
            Some(t) if t == from + 1 => TransitionClass::Direct,
            Some(_) => TransitionClass::NonDirect,
            None => TransitionClass::None,
        }
    }

    pub fn forward_transition_count(&self) -> usize {
        self.forward.iter().flatten().filter(|t| t.is_some()).count()
    }

    pub fn edges(&self) -> OracleEdges {
        let mut edges = OracleEdges {
            direct: Vec::new(),
            external: Vec::new(),
            suffix_links: Vec::new(),
        };
        for (q, row) in self.forward.iter().enumerate() {
            for (s, t) in row.iter().enumerate() {
                if let Some(t) = *t {
                    let e = (q, self.alphabet.label(s).to_string(), t);
                    if t == q + 1 && self.word[q] == s {
                        edges.direct.push(e);
                    } else {
                        edges.external.push(e);
                    }
                }
            }
        }
        for (q, link) in self.suffix.iter().enumerate() {
            if let Some(l) = link {
                edges.suffix_links.push((q, *l));
            }
        }
        edges
    }

    /// The forward automaton as an NFA, optionally with suffix links as ε-edges.
    pub fn as_nfa(&self, include_eps_links: bool) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.state_count());
        nfa.add_initial(0);
        for q in 0..self.state_count() {
            nfa.set_accepting(q, true);
            for s in 0..self.alphabet.len() {
                if let Some(t) = self.forward[q][s] {
                    nfa.add_transition(q, s, t);
                }
            }
            if include_eps_links {
                if let Some(l) = self.suffix[q] {
                    nfa.add_epsilon(q, l);
                }
            }
        }
        nfa
    }

    pub fn as_dfa(&self) -> Dfa {
        let mut dfa = Dfa::new(self.alphabet.clone(), self.state_count(), 0).unwrap();
        for q in 0..self.state_count() {
            dfa.set_accepting(q, true);
            for s in 0..self.alphabet.len() {
                if let Some(t) = self.forward[q][s] {
                    dfa.set_transition(q, s, t);
                }
            }
        }
        dfa
    }
}

/// Window of the last `k` transitions whose non-direct count must lie in `[l, h]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    pub k: u32,
    pub l: u32,
    pub h: u32,
}

impl WindowSpec {
    pub fn new(k: u32, l: u32, h: u32) -> Result<Self, AutomatonError> {
        if k == 0 || k > 16 {
            return Err(AutomatonError::Invalid(format!("window length {k} not in 1..=16")));
        }
        if l > h || h > k {
            return Err(AutomatonError::Invalid(format!(
                "window bounds need 0 <= l <= h <= k, got l={l} h={h} k={k}"
            )));
        }
        Ok(WindowSpec { k, l, h })
    }

    fn allows(&self, history: u32) -> bool {
        (self.l..=self.h).contains(&history.count_ones())
    }
}

/// DFA over (oracle state, last-k history bits) accepting the words whose
/// every prefix keeps the window's non-direct count within bounds.
///
/// History starts at all zeros. A step whose new history leaves `[l, h]` is
/// omitted, so a violated bound rejects the rest of the word. The initial
/// state, before any step, accepts only when `l == 0`.
pub fn window_admissibility_dfa(
    oracle: &FactorOracle,
    window: WindowSpec,
) -> Dfa {
    let mask = (1u32 << window.k) - 1;
    let mut ids: HashMap<(StateId, u32), StateId> = HashMap::new();
    let mut states = vec![(0usize, 0u32)];
    ids.insert((0, 0), 0);
    let mut dfa = Dfa::new(oracle.alphabet.clone(), 1, 0).unwrap();
    dfa.set_accepting(0, window.allows(0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (q, hist) = states[id];
        for s in 0..oracle.alphabet.len() {
            let Some(t) = oracle.forward(q, s) else { continue };
            let bit = u32::from(oracle.classify_transition(q, s) == TransitionClass::NonDirect);
            let next_hist = ((hist << 1) | bit) & mask;
            if !window.allows(next_hist) {
                continue;
            }
            let target = *ids.entry((t, next_hist)).or_insert_with(|| {
                states.push((t, next_hist));
                queue.push_back(states.len() - 1);
                let new = dfa.add_state();
                dfa.set_accepting(new, true);
                new
            });
            dfa.set_transition(id, s, target);
        }
    }
    dfa
}
