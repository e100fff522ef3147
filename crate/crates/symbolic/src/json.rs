//! JSON files for symbolic automata.
//!
//! ```json
//! {
//!   "state_bits": 1,
//!   "input_bits": 1,
//!   "init": "(not x0)",
//!   "acc": "x0",
//!   "delta": "(and (not x0) a0 y0)",
//!   "symbol_decode": [{"bits": "0", "label": "a"}, {"bits": "1", "label": "b"}]
//! }
//! ```
//!
//! Character `j` of `bits` is input bit `aj`. Patterns not listed decode to
//! no symbol. The alphabet is the list of labels in order.

use improv_core::Alphabet;
use serde::{Deserialize, Serialize};

use crate::automaton::SymbolicAutomaton;
use crate::error::SymbolicError;
use crate::expr::{format_formula, parse_formula, Blocks};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeEntry {
    pub bits: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicJson {
    pub state_bits: usize,
    pub input_bits: usize,
    pub init: String,
    pub acc: String,
    pub delta: String,
    pub symbol_decode: Vec<DecodeEntry>,
}

impl SymbolicJson {
    pub fn into_automaton(self) -> Result<SymbolicAutomaton, SymbolicError> {
        let blocks = Blocks {
            state_bits: self.state_bits,
            input_bits: self.input_bits,
        };
        if self.input_bits > crate::automaton::MAX_BITS {
            return Err(SymbolicError::Invalid(format!("{} input bits", self.input_bits)));
        }
        let alphabet = Alphabet::new(self.symbol_decode.iter().map(|e| e.label.clone()))?;
        let mut decode = vec![None; 1 << self.input_bits];
        for (symbol, entry) in self.symbol_decode.iter().enumerate() {
            if entry.bits.len() != self.input_bits || !entry.bits.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(SymbolicError::Invalid(format!(
                    "bit pattern `{}` for `{}` is not {} binary digits",
                    entry.bits, entry.label, self.input_bits
                )));
            }
            let code = entry
                .bits
                .bytes()
                .enumerate()
                .fold(0usize, |acc, (j, b)| acc | (usize::from(b == b'1') << j));
            if decode[code].replace(symbol).is_some() {
                return Err(SymbolicError::Invalid(format!("bit pattern `{}` listed twice", entry.bits)));
            }
        }
        SymbolicAutomaton::new(
            alphabet,
            self.state_bits,
            self.input_bits,
            parse_formula(&self.init, blocks)?,
            parse_formula(&self.acc, blocks)?,
            parse_formula(&self.delta, blocks)?,
            decode,
        )
    }

    pub fn from_automaton(sa: &SymbolicAutomaton) -> Self {
        let blocks = Blocks {
            state_bits: sa.state_bits(),
            input_bits: sa.input_bits(),
        };
        let symbol_decode = (0..sa.alphabet().len())
            .filter_map(|s| {
                let code = sa.encode_symbol(s)?;
                let bits = (0..sa.input_bits())
                    .map(|j| if code >> j & 1 == 1 { '1' } else { '0' })
                    .collect();
                Some(DecodeEntry {
                    bits,
                    label: sa.alphabet().label(s).to_string(),
                })
            })
            .collect();
        SymbolicJson {
            state_bits: sa.state_bits(),
            input_bits: sa.input_bits(),
            init: format_formula(sa.init(), blocks),
            acc: format_formula(sa.acc(), blocks),
            delta: format_formula(sa.delta(), blocks),
            symbol_decode,
        }
    }
}

pub fn symbolic_from_str(text: &str) -> Result<SymbolicAutomaton, SymbolicError> {
    let parsed: SymbolicJson =
        serde_json::from_str(text).map_err(|e| SymbolicError::Invalid(e.to_string()))?;
    parsed.into_automaton()
}

pub fn symbolic_from_value(value: serde_json::Value) -> Result<SymbolicAutomaton, SymbolicError> {
    let parsed: SymbolicJson =
        serde_json::from_value(value).map_err(|e| SymbolicError::Invalid(e.to_string()))?;
    parsed.into_automaton()
}

pub fn symbolic_to_string(sa: &SymbolicAutomaton) -> String {
    serde_json::to_string_pretty(&SymbolicJson::from_automaton(sa)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A_STAR_B: &str = r#"{
        "state_bits": 1,
        "input_bits": 1,
        "init": "(not x0)",
        "acc": "x0",
        "delta": "(or (and (not x0) (not a0) (not y0)) (and (not x0) a0 y0))",
        "symbol_decode": [{"bits": "0", "label": "a"}, {"bits": "1", "label": "b"}]
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let sa = symbolic_from_str(A_STAR_B).unwrap();
        assert_eq!(sa.alphabet().labels(), ["a", "b"]);
        assert_eq!(sa.decode(1), Some(1));
        let again = symbolic_from_str(&symbolic_to_string(&sa)).unwrap();
        assert_eq!(SymbolicJson::from_automaton(&again), SymbolicJson::from_automaton(&sa));
    }

    #[test]
    fn rejects_bad_patterns() {
        for (from, to) in [(r#""bits": "1""#, r#""bits": "0""#), (r#""bits": "1""#, r#""bits": "10""#)] {
            let text = A_STAR_B.replace(from, to);
            assert!(symbolic_from_str(&text).is_err());
        }
        assert!(symbolic_from_str(&A_STAR_B.replace("\"acc\"", "\"accept\"")).is_err());
    }
}
