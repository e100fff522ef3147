//! Built-in admissibility predicates and the running-example automata.

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::dfa::Dfa;
use crate::error::AutomatonError;
use crate::factor_oracle::{window_admissibility_dfa, FactorOracle, WindowSpec};
use crate::improvise::ComputablePredicate;

/// Words of the reference's length within Hamming distance `d` of it.
pub fn hamming_leq_dfa(alphabet: Alphabet, reference: &[Symbol], d: usize) -> Dfa {
    let n = reference.len();
    let id = |pos: usize, miss: usize| pos * (d + 1) + miss;
    let mut dfa = Dfa::new(alphabet, (n + 1) * (d + 1), 0).unwrap();
    for miss in 0..=d {
        dfa.set_accepting(id(n, miss), true);
    }
    for pos in 0..n {
        for miss in 0..=d {
            for s in 0..dfa.alphabet().len() {
                let next = miss + usize::from(s != reference[pos]);
                if next <= d {
                    dfa.set_transition(id(pos, miss), s, id(pos + 1, next));
                }
            }
        }
    }
    dfa
}

pub fn hamming_distance(a: &[Symbol], b: &[Symbol]) -> Option<usize> {
    (a.len() == b.len()).then(|| a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// The same predicate as [`hamming_leq_dfa`], as an opaque procedure.
pub fn hamming_leq_predicate(reference: Word, d: usize) -> ComputablePredicate {
    ComputablePredicate::new(format!("hamming_leq(d={d})"), move |w: &[Symbol]| {
        hamming_distance(w, &reference).is_some_and(|dist| dist <= d)
    })
}

pub fn factor_window_dfa(
    alphabet: Alphabet,
    reference: &[Symbol],
    window: WindowSpec,
) -> Result<Dfa, AutomatonError> {
    let oracle = FactorOracle::build(alphabet, reference)?;
    Ok(window_admissibility_dfa(&oracle, window))
}

/// A parsed `name(args)` builtin reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    HammingLeq { reference: Word, d: usize },
    FactorWindow { reference: Word, window: WindowSpec },
}

impl Builtin {
    /// Parses `hamming_leq(<word>, d)` or `factor_window(<word>, k, l, h)`.
    /// The word is space-separated labels, or a compact string when every
    /// label is a single character.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, AutomatonError> {
        let bad = |msg: &str| AutomatonError::Format(format!("builtin `{text}`: {msg}"));
        let text = text.trim();
        let open = text.find('(').ok_or_else(|| bad("expected name(args)"))?;
        let inner = text[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| bad("missing closing parenthesis"))?;
        let name = text[..open].trim();
        let args: Vec<&str> = inner.split(',').map(str::trim).collect();
        let word = |s: &str| -> Result<Word, AutomatonError> {
            if !s.contains(char::is_whitespace) && alphabet.all_single_chars() && alphabet.symbol(s).is_err() {
                alphabet.parse_compact(s)
            } else {
                alphabet.parse_word(s)
            }
        };
        let num = |s: &str| -> Result<u32, AutomatonError> {
            s.parse().map_err(|_| bad(&format!("`{s}` is not a natural number")))
        };
        match (name, args.as_slice()) {
            ("hamming_leq", [w, d]) => Ok(Builtin::HammingLeq {
                reference: word(w)?,
                d: num(d)? as usize,
            }),
            ("factor_window", [w, k, l, h]) => Ok(Builtin::FactorWindow {
                reference: word(w)?,
                window: WindowSpec::new(num(k)?, num(l)?, num(h)?)?,
            }),
            ("hamming_leq" | "factor_window", _) => Err(bad("wrong number of arguments")),
            _ => Err(bad("unknown builtin; expected hamming_leq or factor_window")),
        }
    }

    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa, AutomatonError> {
        match self {
            Builtin::HammingLeq { reference, d } => {
                Ok(hamming_leq_dfa(alphabet.clone(), reference, *d))
            }
            Builtin::FactorWindow { reference, window } => {
                factor_window_dfa(alphabet.clone(), reference, *window)
            }
        }
    }
}

/// Binary words of length 3 without two consecutive 1s: 000, 001, 010, 100, 101.
pub fn running_improv() -> Dfa {
    let sigma = Alphabet::from_chars("01").unwrap();
    // states: start, len1-last0, len1-last1, len2-last0, len2-last1, done
    Dfa::from_parts(
        sigma,
        6,
        0,
        &[5],
        &[
            (0, 0, 1),
            (0, 1, 2),
            (1, 0, 3),
            (1, 1, 4),
            (2, 0, 3),
            (3, 0, 5),
            (3, 1, 5),
            (4, 0, 5),
        ],
    )
    .unwrap()
}

/// Hamming distance at most 1 from 001.
pub fn running_admiss() -> Dfa {
    hamming_leq_dfa(Alphabet::from_chars("01").unwrap(), &[0, 0, 1], 1)
}
