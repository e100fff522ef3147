use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::{Symbol, Word};
use crate::automaton::AsNfa;
use crate::dfa::StateId;
use crate::error::SampleError;
use crate::nfa::Nfa;
use crate::trim::{is_language_infinite, trim_nfa};

/// Words x, y, z with x yⁱ z accepted for every i ≥ 0 and |y| ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpWitness {
    pub x: Word,
    pub y: Word,
    pub z: Word,
}

impl PumpWitness {
    /// x yⁱ z.
    pub fn word(&self, i: usize) -> Word {
        let mut w = Vec::with_capacity(self.x.len() + i * self.y.len() + self.z.len());
        w.extend_from_slice(&self.x);
        for _ in 0..i {
            w.extend_from_slice(&self.y);
        }
        w.extend_from_slice(&self.z);
        w
    }

    /// The `i` with `word == x yⁱ z`, if any.
    pub fn exponent_of(&self, word: &[Symbol]) -> Option<usize> {
        let fixed = self.x.len() + self.z.len();
        if word.len() < fixed || (word.len() - fixed) % self.y.len() != 0 {
            return None;
        }
        let i = (word.len() - fixed) / self.y.len();
        (self.word(i) == word).then_some(i)
    }

    fn key(&self) -> (usize, &Word, usize, &Word, usize, &Word) {
        (
            self.x.len(),
            &self.x,
            self.y.len(),
            &self.y,
            self.z.len(),
            &self.z,
        )
    }
}

/// Shortlex-least word leading from some state of `from` to each state.
///
/// Breadth-first discovery in symbol order reaches each state first along its
/// shortlex-least word, because queue order is shortlex order of the words.
fn shortest_words(nfa: &Nfa, seeds: Vec<(StateId, Word)>) -> Vec<Option<Word>> {
    let mut best: Vec<Option<Word>> = vec![None; nfa.state_count()];
    let mut queue = VecDeque::new();
    for (q, w) in seeds {
        if best[q].is_none() {
            best[q] = Some(w);
            queue.push_back(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        let base = best[q].clone().unwrap();
        for s in 0..nfa.alphabet().len() {
            for &t in nfa.targets(q, s) {
                if best[t].is_none() {
                    let mut w = base.clone();
                    w.push(s);
                    best[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
    }
    best
}

/// The witness least by (|x|, x, |y|, y, |z|, z), searched over the ε-free,
/// trimmed form of the automaton.
pub fn find_pump_witness<A: AsNfa + ?Sized>(automaton: &A) -> Result<PumpWitness, SampleError> {
    if !is_language_infinite(automaton) {
        return Err(SampleError::FiniteLanguage);
    }
    let (nfa, _) = trim_nfa(&automaton.as_nfa().without_epsilon());
    let n = nfa.state_count();
    let to_state = shortest_words(
        &nfa,
        nfa.initial().iter().map(|&q| (q, Vec::new())).collect(),
    );
    let mut reversed = Nfa::new(nfa.alphabet().clone(), n);
    for (a, s, b) in nfa.transitions() {
        reversed.add_transition(b, s, a);
    }
    let mut best: Option<PumpWitness> = None;
    for s in 0..n {
        let Some(x) = to_state[s].clone() else { continue };
        // y: shortlex-least nonempty loop at s
        let mut seeds = Vec::new();
        for sym in 0..nfa.alphabet().len() {
            let targets: BTreeSet<StateId> = nfa.targets(s, sym).iter().copied().collect();
            for t in targets {
                seeds.push((t, vec![sym]));
            }
        }
        let Some(y) = shortest_words(&nfa, seeds)[s].clone() else { continue };
        let Some(z) = shortest_suffix(&nfa, s) else { continue };
        let candidate = PumpWitness { x, y, z };
        if best.as_ref().is_none_or(|b| candidate.key() < b.key()) {
            best = Some(candidate);
        }
    }
    best.ok_or(SampleError::FiniteLanguage)
}

/// Shortlex-least word accepted from `s`, found by iterative deepening over
/// exact-length reachability so lexicographic order is respected.
fn shortest_suffix(nfa: &Nfa, s: StateId) -> Option<Word> {
    let n = nfa.state_count();
    let mut accepts_in: Vec<Vec<bool>> =
        vec![(0..n).map(|q| nfa.is_accepting(q)).collect()];
    for len in 0..=n {
        if len > 0 {
            let prev = accepts_in.last().unwrap();
            let next = (0..n)
                .map(|q| (0..nfa.alphabet().len()).any(|a| nfa.targets(q, a).iter().any(|&t| prev[t])))
                .collect();
            accepts_in.push(next);
        }
        if !accepts_in[len][s] {
            continue;
        }
        let mut word = Vec::with_capacity(len);
        let mut set = BTreeSet::from([s]);
        for remaining in (0..len).rev() {
            let (sym, next) = (0..nfa.alphabet().len())
                .find_map(|a| {
                    let next: BTreeSet<StateId> = set
                        .iter()
                        .flat_map(|&q| nfa.targets(q, a).iter().copied())
                        .filter(|&t| accepts_in[remaining][t])
                        .collect();
                    (!next.is_empty()).then_some((a, next))
                })
                .expect("exact-length reachability guarantees a continuation");
            word.push(sym);
            set = next;
        }
        return Some(word);
    }
    None
}
