//! Accepted words in length-then-lexicographic order.

use std::collections::BTreeSet;

use crate::alphabet::Word;
use crate::automaton::AsNfa;
use crate::dfa::StateId;
use crate::nfa::Nfa;
use crate::trim::is_language_infinite;

/// Lazily yields every accepted word, shortest first and lexicographically
/// (by symbol index) within a length. Ends when the language is finite and
/// exhausted; runs forever otherwise.
#[derive(Clone, Debug)]
pub struct WordStream {
    nfa: Nfa,
    /// `accepts_in[r]`: states from which some word of length exactly `r` is accepted.
    accepts_in: Vec<Vec<bool>>,
    length: usize,
    max_length: Option<usize>,
    stack: Vec<(BTreeSet<StateId>, Word)>,
}

impl WordStream {
    pub fn new<A: AsNfa + ?Sized>(automaton: &A) -> Self {
        let nfa = automaton.as_nfa().without_epsilon();
        let max_length = if is_language_infinite(&nfa) {
            None
        } else {
            Some(nfa.state_count().saturating_sub(1))
        };
        let accepting: Vec<bool> = (0..nfa.state_count()).map(|q| nfa.is_accepting(q)).collect();
        let mut stream = WordStream {
            nfa,
            accepts_in: vec![accepting],
            length: 0,
            max_length,
            stack: Vec::new(),
        };
        stream.start_length();
        stream
    }

    /// Upper bound on accepted word lengths, if the language is finite.
    pub fn max_length(&self) -> Option<usize> {
        self.max_length
    }

    fn viable(&self, set: &BTreeSet<StateId>, remaining: usize) -> bool {
        set.iter().any(|&q| self.accepts_in[remaining][q])
    }

    fn start_length(&mut self) {
        while self.accepts_in.len() <= self.length {
            let prev = self.accepts_in.last().unwrap();
            let next: Vec<bool> = (0..self.nfa.state_count())
                .map(|q| {
                    (0..self.nfa.alphabet().len())
                        .any(|s| self.nfa.targets(q, s).iter().any(|&t| prev[t]))
                })
                .collect();
            self.accepts_in.push(next);
        }
        let start: BTreeSet<StateId> = self.nfa.initial().clone();
        if self.viable(&start, self.length) {
            self.stack.push((start, Vec::new()));
        }
    }

    fn step(&self, set: &BTreeSet<StateId>, symbol: usize) -> BTreeSet<StateId> {
        set.iter()
            .flat_map(|&q| self.nfa.targets(q, symbol).iter().copied())
            .collect()
    }
}

impl Iterator for WordStream {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if let Some((set, word)) = self.stack.pop() {
                let remaining = self.length - word.len();
                if remaining == 0 {
                    return Some(word);
                }
                for s in (0..self.nfa.alphabet().len()).rev() {
                    let next = self.step(&set, s);
                    if self.viable(&next, remaining - 1) {
                        let mut w = word.clone();
                        w.push(s);
                        self.stack.push((next, w));
                    }
                }
                continue;
            }
            if self.max_length.is_some_and(|m| self.length >= m) {
                return None;
            }
            self.length += 1;
            self.start_length();
        }
    }
}

/// Every accepted word of length at most `max_len`, in length-then-lex order.
pub fn enumerate_words<A: AsNfa + ?Sized>(automaton: &A, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stream = WordStream::new(automaton);
    while stream.length <= max_len {
        match stream.next() {
            Some(w) if w.len() <= max_len => out.push(w),
            _ => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::dfa::Dfa;

    #[test]
    fn empty_dfa_has_no_words() {
        let d = Dfa::empty_language(Alphabet::from_chars("01").unwrap());
        assert!(enumerate_words(&d, 10).is_empty());
        assert_eq!(WordStream::new(&d).count(), 0);
    }

    #[test]
    fn sigma_star_in_shortlex() {
        let d = Dfa::universal(Alphabet::from_chars("01").unwrap());
        let words = enumerate_words(&d, 2);
        assert_eq!(
            words,
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn finite_stream_terminates() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let d = Dfa::from_words(sigma, &[vec![1, 0, 1], vec![0]]);
        let all: Vec<Word> = WordStream::new(&d).collect();
        assert_eq!(all, vec![vec![0], vec![1, 0, 1]]);
    }
}
