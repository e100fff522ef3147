//! Random automata for property tests and benchmarks.

use rand::{Rng, RngCore};

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::nfa::Nfa;

/// Alphabet `0, 1, …` of the given size (labels are decimal digits, then letters).
pub fn small_alphabet(size: usize) -> Alphabet {
    const LABELS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";
    assert!(size <= LABELS.len());
    Alphabet::from_chars(&LABELS[..size]).unwrap()
}

/// Each transition present with probability `edge_prob` to a uniform target;
/// each state accepting with probability `accept_prob`.
pub fn random_dfa(
    rng: &mut dyn RngCore,
    states: usize,
    alphabet: Alphabet,
    edge_prob: f64,
    accept_prob: f64,
) -> Dfa {
    let width = alphabet.len();
    let mut dfa = Dfa::new(alphabet, states, 0).unwrap();
    for q in 0..states {
        dfa.set_accepting(q, rng.random_bool(accept_prob));
        for s in 0..width {
            if rng.random_bool(edge_prob) {
                let t = rng.random_range(0..states);
                dfa.set_transition(q, s, t);
            }
        }
    }
    dfa
}

/// A DFA whose transitions only go to higher-numbered states, so its
/// language is finite.
pub fn random_acyclic_dfa(
    rng: &mut dyn RngCore,
    states: usize,
    alphabet: Alphabet,
    edge_prob: f64,
    accept_prob: f64,
) -> Dfa {
    let width = alphabet.len();
    let mut dfa = Dfa::new(alphabet, states, 0).unwrap();
    for q in 0..states {
        dfa.set_accepting(q, rng.random_bool(accept_prob));
        if q + 1 == states {
            continue;
        }
        for s in 0..width {
            if rng.random_bool(edge_prob) {
                let t = rng.random_range(q + 1..states);
                dfa.set_transition(q, s, t);
            }
        }
    }
    dfa
}

pub fn random_nfa(
    rng: &mut dyn RngCore,
    states: usize,
    alphabet: Alphabet,
    edge_prob: f64,
    eps_prob: f64,
    accept_prob: f64,
) -> Nfa {
    let width = alphabet.len();
    let mut nfa = Nfa::new(alphabet, states);
    nfa.add_initial(0);
    if states > 1 && rng.random_bool(0.3) {
        nfa.add_initial(rng.random_range(1..states));
    }
    for q in 0..states {
        nfa.set_accepting(q, rng.random_bool(accept_prob));
        for s in 0..width {
            for t in 0..states {
                if rng.random_bool(edge_prob) {
                    nfa.add_transition(q, s, t);
                }
            }
        }
        for t in 0..states {
            if t != q && rng.random_bool(eps_prob) {
                nfa.add_epsilon(q, t);
            }
        }
    }
    nfa
}
