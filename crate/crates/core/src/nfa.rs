use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol};
use crate::dfa::{Dfa, StateId};
use crate::error::AutomatonError;

/// Default bound on subset states created by [`Nfa::determinize`].
pub const DEFAULT_DETERMINIZE_CAP: usize = 1 << 20;

/// A nondeterministic automaton with ε-moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: BTreeSet<StateId>,
    accepting: Vec<bool>,
    delta: Vec<Vec<Vec<StateId>>>,
    eps: Vec<Vec<StateId>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let width = alphabet.len();
        Nfa {
            alphabet,
            initial: BTreeSet::new(),
            accepting: vec![false; states],
            delta: vec![vec![Vec::new(); width]; states],
            eps: vec![Vec::new(); states],
        }
    }

    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        initial: &[StateId],
        accepting: &[StateId],
        transitions: &[(StateId, Symbol, StateId)],
        epsilon: &[(StateId, StateId)],
    ) -> Result<Self, AutomatonError> {
        let mut nfa = Nfa::new(alphabet, states);
        let check = |q: StateId| {
            if q >= states {
                Err(AutomatonError::Invalid(format!("state {q} out of range")))
            } else {
                Ok(())
            }
        };
        for &q in initial {
            check(q)?;
            nfa.add_initial(q);
        }
        for &q in accepting {
            check(q)?;
            nfa.set_accepting(q, true);
        }
        for &(from, s, to) in transitions {
            check(from)?;
            check(to)?;
            if s >= nfa.alphabet.len() {
                return Err(AutomatonError::Invalid(format!("symbol {s} out of range")));
            }
            nfa.add_transition(from, s, to);
        }
        for &(from, to) in epsilon {
            check(from)?;
            check(to)?;
            nfa.add_epsilon(from, to);
        }
        Ok(nfa)
    }

    pub fn add_state(&mut self) -> StateId {
        self.accepting.push(false);
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.eps.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn add_initial(&mut self, q: StateId) {
        self.initial.insert(q);
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn add_transition(&mut self, from: StateId, symbol: Symbol, to: StateId) {
        let targets = &mut self.delta[from][symbol];
        if let Err(pos) = targets.binary_search(&to) {
            targets.insert(pos, to);
        }
    }

    pub fn add_epsilon(&mut self, from: StateId, to: StateId) {
        let targets = &mut self.eps[from];
        if let Err(pos) = targets.binary_search(&to) {
            targets.insert(pos, to);
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn targets(&self, q: StateId, symbol: Symbol) -> &[StateId] {
        &self.delta[q][symbol]
    }

    pub fn epsilon_targets(&self, q: StateId) -> &[StateId] {
        &self.eps[q]
    }

    pub fn has_epsilon(&self) -> bool {
        self.eps.iter().any(|e| !e.is_empty())
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(s, ts)| ts.iter().map(move |&t| (q, s, t)))
        })
    }

    pub fn epsilon_edges(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.eps
            .iter()
            .enumerate()
            .flat_map(|(q, ts)| ts.iter().map(move |&t| (q, t)))
    }

    /// ε-closure of a state set.
    pub fn closure<I: IntoIterator<Item = StateId>>(&self, states: I) -> BTreeSet<StateId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<StateId> = states.into_iter().collect();
        while let Some(q) = stack.pop() {
            if out.insert(q) {
                stack.extend(self.eps[q].iter().copied().filter(|t| !out.contains(t)));
            }
        }
        out
    }

    pub fn initial_closure(&self) -> BTreeSet<StateId> {
        self.closure(self.initial.iter().copied())
    }

    /// ε-closed successor set of an ε-closed set.
    pub fn step(&self, set: &BTreeSet<StateId>, symbol: Symbol) -> BTreeSet<StateId> {
        self.closure(
            set.iter()
                .flat_map(|&q| self.delta[q][symbol].iter().copied()),
        )
    }

    pub fn set_accepts(&self, set: &BTreeSet<StateId>) -> bool {
        set.iter().any(|&q| self.accepting[q])
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut set = self.initial_closure();
        for &s in word {
            if s >= self.alphabet.len() {
                return false;
            }
            set = self.step(&set, s);
            if set.is_empty() {
                return false;
            }
        }
        self.set_accepts(&set)
    }

    /// An equivalent NFA without ε-moves on the same state numbering.
    pub fn without_epsilon(&self) -> Nfa {
        if !self.has_epsilon() {
            return self.clone();
        }
        let closures: Vec<BTreeSet<StateId>> =
            (0..self.state_count()).map(|q| self.closure([q])).collect();
        let mut out = Nfa::new(self.alphabet.clone(), self.state_count());
        for q in self.initial_closure() {
            out.add_initial(q);
        }
        for q in 0..self.state_count() {
            out.accepting[q] = closures[q].iter().any(|&p| self.accepting[p]);
            for s in 0..self.alphabet.len() {
                let mut targets = BTreeSet::new();
                for &p in &closures[q] {
                    for &t in &self.delta[p][s] {
                        targets.extend(closures[t].iter().copied());
                    }
                }
                out.delta[q][s] = targets.into_iter().collect();
            }
        }
        out
    }

    /// Subset construction over reachable ε-closed sets. The empty set is
    /// never materialized; it is the implicit rejecting state.
    pub fn determinize(&self, cap: usize) -> Result<Dfa, AutomatonError> {
        let start = self.initial_closure();
        let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut dfa = Dfa::new(self.alphabet.clone(), 1, 0)?;
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let set = sets[id].clone();
            dfa.set_accepting(id, self.set_accepts(&set));
            for s in 0..self.alphabet.len() {
                let next = self.step(&set, s);
                if next.is_empty() {
                    continue;
                }
                let target = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        if sets.len() >= cap {
                            return Err(AutomatonError::DeterminizeCap { cap });
                        }
                        let t = dfa.add_state();
                        ids.insert(next.clone(), t);
                        sets.push(next);
                        queue.push_back(t);
                        t
                    }
                };
                dfa.set_transition(id, s, target);
            }
        }
        Ok(dfa)
    }

    /// Product automaton accepting L(a) ∩ L(b), built over reachable pairs of
    /// the ε-free forms.
    pub fn product(a: &Nfa, b: &Nfa) -> Result<Nfa, AutomatonError> {
        if a.alphabet != b.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let a = a.without_epsilon();
        let b = b.without_epsilon();
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let mut out = Nfa::new(a.alphabet.clone(), 0);
        let mut queue = VecDeque::new();
        for &p in &a.initial {
            for &q in &b.initial {
                let id = out.add_state();
                ids.insert((p, q), id);
                pairs.push((p, q));
                out.add_initial(id);
                queue.push_back(id);
            }
        }
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            out.accepting[id] = a.accepting[p] && b.accepting[q];
            for s in 0..a.alphabet.len() {
                for &p2 in &a.delta[p][s] {
                    for &q2 in &b.delta[q][s] {
                        let target = match ids.get(&(p2, q2)) {
                            Some(&t) => t,
                            None => {
                                let t = out.add_state();
                                ids.insert((p2, q2), t);
                                pairs.push((p2, q2));
                                queue.push_back(t);
                                t
                            }
                        };
                        out.add_transition(id, s, target);
                    }
                }
            }
        }
        if out.state_count() == 0 {
            out.add_state();
        }
        Ok(out)
    }
}
