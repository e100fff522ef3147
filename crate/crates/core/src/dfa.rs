use std::collections::HashMap;
use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::AutomatonError;
use crate::nfa::Nfa;

pub type StateId = usize;

/// A deterministic automaton with a partial transition map; a missing
/// transition rejects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<StateId>>>,
}

impl Dfa {
    /// A DFA with `states` states, no transitions and nothing accepting.
    pub fn new(alphabet: Alphabet, states: usize, initial: StateId) -> Result<Self, AutomatonError> {
        if states == 0 {
            return Err(AutomatonError::Invalid("a DFA needs at least one state".into()));
        }
        if initial >= states {
            return Err(AutomatonError::Invalid(format!(
                "initial state {initial} out of range"
            )));
        }
        let width = alphabet.len();
        Ok(Dfa {
            alphabet,
            initial,
            accepting: vec![false; states],
            delta: vec![vec![None; width]; states],
        })
    }

    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        initial: StateId,
        accepting: &[StateId],
        transitions: &[(StateId, Symbol, StateId)],
    ) -> Result<Self, AutomatonError> {
        let mut dfa = Dfa::new(alphabet, states, initial)?;
        for &q in accepting {
            dfa.check_state(q)?;
            dfa.accepting[q] = true;
        }
        for &(from, sym, to) in transitions {
            dfa.check_state(from)?;
            dfa.check_state(to)?;
            if sym >= dfa.alphabet.len() {
                return Err(AutomatonError::Invalid(format!("symbol {sym} out of range")));
            }
            match dfa.delta[from][sym] {
                Some(existing) if existing != to => {
                    return Err(AutomatonError::Invalid(format!(
                        "nondeterministic transitions from state {from} on `{}`",
                        dfa.alphabet.label(sym)
                    )))
                }
                _ => dfa.delta[from][sym] = Some(to),
            }
        }
        Ok(dfa)
    }

    /// The one-state DFA accepting Σ*.
    pub fn universal(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let mut dfa = Dfa::new(alphabet, 1, 0).unwrap();
        dfa.accepting[0] = true;
        for s in 0..n {
            dfa.delta[0][s] = Some(0);
        }
        dfa
    }

    /// The one-state DFA accepting nothing.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        Dfa::new(alphabet, 1, 0).unwrap()
    }

    /// The trie DFA accepting exactly `words`.
    pub fn from_words<W: AsRef<[Symbol]>>(alphabet: Alphabet, words: &[W]) -> Self {
        let mut dfa = Dfa::new(alphabet, 1, 0).unwrap();
        for word in words {
            let mut q = 0;
            for &s in word.as_ref() {
                q = match dfa.delta[q][s] {
                    Some(t) => t,
                    None => {
                        let t = dfa.add_state();
                        dfa.delta[q][s] = Some(t);
                        t
                    }
                };
            }
            dfa.accepting[q] = true;
        }
        dfa
    }

    fn check_state(&self, q: StateId) -> Result<(), AutomatonError> {
        if q >= self.state_count() {
            return Err(AutomatonError::Invalid(format!("state {q} out of range")));
        }
        Ok(())
    }

    pub fn add_state(&mut self) -> StateId {
        self.accepting.push(false);
        self.delta.push(vec![None; self.alphabet.len()]);
        self.accepting.len() - 1
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn set_transition(&mut self, from: StateId, symbol: Symbol, to: StateId) {
        assert!(to < self.state_count());
        self.delta[from][symbol] = Some(to);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn next(&self, q: StateId, symbol: Symbol) -> Option<StateId> {
        self.delta[q][symbol]
    }

    /// Outgoing transitions of `q` in symbol order.
    pub fn successors(&self, q: StateId) -> impl Iterator<Item = (Symbol, StateId)> + '_ {
        self.delta[q]
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t)))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        (0..self.state_count()).flat_map(move |q| self.successors(q).map(move |(s, t)| (q, s, t)))
    }

    /// State reached from `from` on `word`, if every step is defined.
    pub fn run_from(&self, from: StateId, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(from, |q, &s| self.delta[q].get(s).copied().flatten())
    }

    pub fn run(&self, word: &[Symbol]) -> Option<StateId> {
        self.run_from(self.initial, word)
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run(word).is_some_and(|q| self.accepting[q])
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Same language, with every missing transition sent to a rejecting sink.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.add_state();
        for row in &mut out.delta {
            for t in row.iter_mut() {
                t.get_or_insert(sink);
            }
        }
        out
    }

    /// A complete DFA for Σ* ∖ L(self).
    pub fn complement(&self) -> Dfa {
        let mut out = self.complete();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out
    }

    /// The synchronous product, restricted to reachable pairs; accepts L(a) ∩ L(b).
    pub fn product(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
        if a.alphabet != b.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(a.initial, b.initial)];
        ids.insert((a.initial, b.initial), 0);
        let mut out = Dfa::new(a.alphabet.clone(), 1, 0)?;
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            out.accepting[id] = a.accepting[p] && b.accepting[q];
            for s in 0..a.alphabet.len() {
                let (Some(p2), Some(q2)) = (a.delta[p][s], b.delta[q][s]) else {
                    continue;
                };
                let target = *ids.entry((p2, q2)).or_insert_with(|| {
                    pairs.push((p2, q2));
                    queue.push_back(pairs.len() - 1);
                    out.add_state()
                });
                out.delta[id][s] = Some(target);
            }
        }
        Ok(out)
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.state_count());
        nfa.add_initial(self.initial);
        for q in self.accepting_states() {
            nfa.set_accepting(q, true);
        }
        for (from, s, to) in self.transitions() {
            nfa.add_transition(from, s, to);
        }
        nfa
    }
}
