use std::collections::HashMap;
use std::fmt;

use crate::error::AutomatonError;

pub type Symbol = usize;
pub type Word = Vec<Symbol>;

/// Serialized form of the empty word.
pub const EMPTY_WORD: &str = "<eps>";

/// An ordered set of symbol labels; symbols are their 0-based positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self, AutomatonError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        for label in labels {
            let label: String = label.into();
            if label.is_empty() {
                return Err(AutomatonError::Alphabet("empty label".into()));
            }
            if label.chars().any(char::is_whitespace) || label == EMPTY_WORD {
                return Err(AutomatonError::Alphabet(format!(
                    "label `{label}` cannot be written in a word"
                )));
            }
            if index.insert(label.clone(), symbols.len()).is_some() {
                return Err(AutomatonError::Alphabet(format!("duplicate label `{label}`")));
            }
            symbols.push(label);
        }
        Ok(Alphabet { symbols, index })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self, AutomatonError> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.symbols
    }

    pub fn label(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol]
    }

    pub fn symbol(&self, label: &str) -> Result<Symbol, AutomatonError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| AutomatonError::UnknownSymbol(label.to_string()))
    }

    /// Parses a word written as whitespace-separated labels (or `<eps>`).
    pub fn parse_word(&self, text: &str) -> Result<Word, AutomatonError> {
        let text = text.trim();
        if text == EMPTY_WORD {
            return Ok(Vec::new());
        }
        text.split_whitespace().map(|l| self.symbol(l)).collect()
    }

    /// Parses a word by splitting `text` into characters; every label must be
    /// a single character.
    pub fn parse_compact(&self, text: &str) -> Result<Word, AutomatonError> {
        text.chars()
            .map(|c| self.symbol(c.encode_utf8(&mut [0; 4])))
            .collect()
    }

    pub fn format_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return EMPTY_WORD.to_string();
        }
        word.iter()
            .map(|&s| self.symbols[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Concatenated labels, for compact display when every label is one character.
    pub fn format_compact(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.symbols[s].as_str()).collect()
    }

    pub fn all_single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(", "))
    }
}
