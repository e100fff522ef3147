use std::borrow::Cow;

use crate::alphabet::{Alphabet, Symbol};
use crate::dfa::Dfa;
use crate::error::AutomatonError;
use crate::nfa::Nfa;

/// Either kind of explicit automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Dfa(d) => d.alphabet(),
            Automaton::Nfa(n) => n.alphabet(),
        }
    }

    pub fn state_count(&self) -> usize {
        match self {
            Automaton::Dfa(d) => d.state_count(),
            Automaton::Nfa(n) => n.state_count(),
        }
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        match self {
            Automaton::Dfa(d) => d.accepts(word),
            Automaton::Nfa(n) => n.accepts(word),
        }
    }

    pub fn as_dfa(&self) -> Option<&Dfa> {
        match self {
            Automaton::Dfa(d) => Some(d),
            Automaton::Nfa(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Automaton::Dfa(_) => "dfa",
            Automaton::Nfa(_) => "nfa",
        }
    }

    /// The DFA itself, or the subset construction of the NFA.
    pub fn to_dfa(&self, cap: usize) -> Result<Cow<'_, Dfa>, AutomatonError> {
        match self {
            Automaton::Dfa(d) => Ok(Cow::Borrowed(d)),
            Automaton::Nfa(n) => n.determinize(cap).map(Cow::Owned),
        }
    }
}

impl From<Dfa> for Automaton {
    fn from(d: Dfa) -> Self {
        Automaton::Dfa(d)
    }
}

impl From<Nfa> for Automaton {
    fn from(n: Nfa) -> Self {
        Automaton::Nfa(n)
    }
}

/// Anything that can be viewed as an NFA.
pub trait AsNfa {
    fn as_nfa(&self) -> Cow<'_, Nfa>;
}

impl AsNfa for Nfa {
    fn as_nfa(&self) -> Cow<'_, Nfa> {
        Cow::Borrowed(self)
    }
}

impl AsNfa for Dfa {
    fn as_nfa(&self) -> Cow<'_, Nfa> {
        Cow::Owned(self.to_nfa())
    }
}

impl AsNfa for Automaton {
    fn as_nfa(&self) -> Cow<'_, Nfa> {
        match self {
            Automaton::Dfa(d) => d.as_nfa(),
            Automaton::Nfa(n) => n.as_nfa(),
        }
    }
}
