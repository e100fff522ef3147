#![allow(dead_code)]

use improv_core::{Alphabet, Dfa, Word};

/// Every word over `width` symbols of length at most `max_len`.
pub fn all_words(width: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..width).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// DFA accepting exactly the words of length `len` over `width` symbols.
pub fn fixed_length(width: usize, len: usize) -> Dfa {
    let sigma = Alphabet::new((0..width).map(|i| format!("s{i}"))).unwrap();
    let mut dfa = Dfa::new(sigma, len + 1, 0).unwrap();
    for q in 0..len {
        for s in 0..width {
            dfa.set_transition(q, s, q + 1);
        }
    }
    dfa.set_accepting(len, true);
    dfa
}

pub fn a_star_b() -> Dfa {
    let sigma = Alphabet::from_chars("ab").unwrap();
    Dfa::from_parts(sigma, 2, 0, &[1], &[(0, 0, 0), (0, 1, 1)]).unwrap()
}
