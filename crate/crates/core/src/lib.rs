//! Explicit finite automata, exact language counting and sampling, and
//! control improvisation: deciding whether a randomized generator can meet an
//! (ε, ρ) contract over a pair of automata, and building one that does.

pub mod alphabet;
pub mod automaton;
pub mod builtins;
pub mod count;
pub mod dfa;
pub mod error;
pub mod factor_oracle;
pub mod improvise;
pub mod json;
pub mod nfa;
pub mod pump;
pub mod random;
pub mod rational;
pub mod sampler;
pub mod trim;
pub mod words;

pub use alphabet::{Alphabet, Symbol, Word};
pub use automaton::{AsNfa, Automaton};
pub use count::{count_words, path_counts, CountValue, PathCountTable};
pub use dfa::{Dfa, StateId};
pub use error::{AutomatonError, SampleError};
pub use nfa::{Nfa, DEFAULT_DETERMINIZE_CAP};
pub use pump::{find_pump_witness, PumpWitness};
pub use sampler::{
    pump_sampler, pump_sampler_longer_than, uniform_below, uniform_sampler, ListSampler,
    PumpSampler, Sampler, SamplerKind, UniformSampler,
};
pub use trim::{is_language_infinite, trim_dfa, trim_nfa, TrimReport};
pub use words::{enumerate_words, WordStream};
