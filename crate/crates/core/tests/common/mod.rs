#![allow(dead_code)]

use improv_core::{Symbol, Word};

/// Every word over `width` symbols of length ≤ `max_len`, shortest first,
/// lexicographic within a length.
pub fn all_words(width: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * width);
        for w in &layer {
            for s in 0..width {
                let mut v = w.clone();
                v.push(s as Symbol);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Accepted words up to `max_len`, by brute-force membership over all words.
pub fn brute_language(width: usize, max_len: usize, accepts: impl Fn(&[Symbol]) -> bool) -> Vec<Word> {
    all_words(width, max_len).into_iter().filter(|w| accepts(w)).collect()
}

pub fn compact(words: &[Word]) -> Vec<String> {
    words
        .iter()
        .map(|w| w.iter().map(|s| char::from(b'0' + *s as u8)).collect())
        .collect()
}
