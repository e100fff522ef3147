//! Automata given by propositional formulas over bit-vector states.
//!
//! Variables are numbered in three blocks: state bits `x0..x(n-1)` are
//! `Var(1..=n)`, input bits `a0..a(m-1)` follow, then next-state bits
//! `y0..y(n-1)`. An input vector with bits `a0..` encodes the integer
//! `Σ aj·2^j`, which `decode` maps to a symbol (or to nothing).

use improv_core::{Alphabet, Dfa, Nfa, Symbol};
use improv_sat::{Formula, Var};

use crate::error::SymbolicError;

/// Largest supported state or input width.
pub const MAX_BITS: usize = 24;

#[derive(Clone, Debug)]
pub struct SymbolicAutomaton {
    alphabet: Alphabet,
    state_bits: usize,
    input_bits: usize,
    init: Formula,
    acc: Formula,
    delta: Formula,
    decode: Vec<Option<Symbol>>,
}

impl SymbolicAutomaton {
    /// Checks that each formula stays within its variable blocks and that
    /// `decode` is an injective table of length `2^input_bits`.
    pub fn new(
        alphabet: Alphabet,
        state_bits: usize,
        input_bits: usize,
        init: Formula,
        acc: Formula,
        delta: Formula,
        decode: Vec<Option<Symbol>>,
    ) -> Result<Self, SymbolicError> {
        if state_bits > MAX_BITS || input_bits > MAX_BITS {
            return Err(SymbolicError::Invalid(format!(
                "at most {MAX_BITS} state and input bits are supported"
            )));
        }
        if decode.len() != 1 << input_bits {
            return Err(SymbolicError::Invalid(format!(
                "decode table has {} entries, expected {}",
                decode.len(),
                1usize << input_bits
            )));
        }
        let mut seen = vec![false; alphabet.len()];
        for s in decode.iter().flatten() {
            if *s >= alphabet.len() {
                return Err(SymbolicError::Invalid(format!("decoded symbol {s} outside alphabet")));
            }
            if std::mem::replace(&mut seen[*s], true) {
                return Err(SymbolicError::Invalid(format!(
                    "symbol `{}` decoded from two input vectors",
                    alphabet.label(*s)
                )));
            }
        }
        let n = state_bits as u32;
        let m = input_bits as u32;
        let within = |f: &Formula, hi: u32, what: &str| -> Result<(), SymbolicError> {
            match f.vars().into_iter().find(|v| v.index() > hi) {
                Some(v) => Err(SymbolicError::Invalid(format!(
                    "{what} mentions variable {} outside its blocks",
                    v.index()
                ))),
                None => Ok(()),
            }
        };
        within(&init, n, "init")?;
        within(&acc, n, "acc")?;
        within(&delta, 2 * n + m, "delta")?;
        Ok(SymbolicAutomaton {
            alphabet,
            state_bits,
            input_bits,
            init,
            acc,
            delta,
            decode,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_bits(&self) -> usize {
        self.state_bits
    }

    pub fn input_bits(&self) -> usize {
        self.input_bits
    }

    pub fn init(&self) -> &Formula {
        &self.init
    }

    pub fn acc(&self) -> &Formula {
        &self.acc
    }

    pub fn delta(&self) -> &Formula {
        &self.delta
    }

    pub fn decode_table(&self) -> &[Option<Symbol>] {
        &self.decode
    }

    pub fn x(&self, i: usize) -> Var {
        Var::new(1 + i as u32)
    }

    pub fn a(&self, j: usize) -> Var {
        Var::new(1 + (self.state_bits + j) as u32)
    }

    pub fn y(&self, k: usize) -> Var {
        Var::new(1 + (self.state_bits + self.input_bits + k) as u32)
    }

    pub fn decode(&self, code: usize) -> Option<Symbol> {
        self.decode.get(code).copied().flatten()
    }

    /// Input vector code for `symbol`.
    pub fn encode_symbol(&self, symbol: Symbol) -> Option<usize> {
        self.decode.iter().position(|s| *s == Some(symbol))
    }

    /// Codes that decode to no symbol.
    pub fn invalid_codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.decode
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(c, _)| c)
    }

    /// Synchronous product: pairs of states, shared inputs.
    ///
    /// Both sides must use the same alphabet and the same input encoding.
    pub fn product(left: &Self, right: &Self) -> Result<Self, SymbolicError> {
        if left.alphabet != right.alphabet || left.decode != right.decode {
            return Err(SymbolicError::Invalid(
                "product needs the same alphabet and input encoding on both sides".into(),
            ));
        }
        let (n1, n2, m) = (left.state_bits, right.state_bits, left.input_bits);
        let n = n1 + n2;
        // product layout: x = left x ++ right x, a, y = left y ++ right y
        let px = |i: usize| Var::new(1 + i as u32);
        let pa = |j: usize| Var::new(1 + (n + j) as u32);
        let py = |k: usize| Var::new(1 + (n + m + k) as u32);
        let map_left = |v: Var| {
            let i = v.index() as usize - 1;
            if i < n1 {
                px(i)
            } else if i < n1 + m {
                pa(i - n1)
            } else {
                py(i - n1 - m)
            }
        };
        let map_right = |v: Var| {
            let i = v.index() as usize - 1;
            if i < n2 {
                px(n1 + i)
            } else if i < n2 + m {
                pa(i - n2)
            } else {
                py(n1 + i - n2 - m)
            }
        };
        SymbolicAutomaton::new(
            left.alphabet.clone(),
            n,
            m,
            Formula::and([left.init.rename(&map_left), right.init.rename(&map_right)]),
            Formula::and([left.acc.rename(&map_left), right.acc.rename(&map_right)]),
            Formula::and([left.delta.rename(&map_left), right.delta.rename(&map_right)]),
            left.decode.clone(),
        )
    }
}

/// Number of bits needed to tell `count` values apart.
pub fn bits_for(count: usize) -> usize {
    if count <= 1 {
        0
    } else {
        (usize::BITS - (count - 1).leading_zeros()) as usize
    }
}

/// Binary encoding of an NFA: state `q` is the bit pattern of `q`, symbol `s`
/// the input code `s`. ε-edges are eliminated first.
pub fn encode_nfa(nfa: &Nfa) -> Result<SymbolicAutomaton, SymbolicError> {
    let nfa = nfa.without_epsilon();
    let alphabet = nfa.alphabet().clone();
    let n = bits_for(nfa.state_count());
    let m = bits_for(alphabet.len());
    let xs: Vec<Var> = (0..n).map(|i| Var::new(1 + i as u32)).collect();
    let as_: Vec<Var> = (0..m).map(|j| Var::new(1 + (n + j) as u32)).collect();
    let ys: Vec<Var> = (0..n).map(|k| Var::new(1 + (n + m + k) as u32)).collect();
    let init = Formula::or(nfa.initial().iter().map(|&q| Formula::bits_equal(&xs, q as u64)));
    let acc = Formula::or(nfa.accepting_states().map(|q| Formula::bits_equal(&xs, q as u64)));
    let delta = Formula::or(nfa.transitions().map(|(q, s, t)| {
        Formula::and([
            Formula::bits_equal(&xs, q as u64),
            Formula::bits_equal(&as_, s as u64),
            Formula::bits_equal(&ys, t as u64),
        ])
    }));
    let decode = (0..1usize << m).map(|c| (c < alphabet.len()).then_some(c)).collect();
    SymbolicAutomaton::new(alphabet, n, m, init, acc, delta, decode)
}

pub fn encode_dfa(dfa: &Dfa) -> Result<SymbolicAutomaton, SymbolicError> {
    encode_nfa(&dfa.to_nfa())
}
