use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("determinization exceeded {cap} subset states")]
    DeterminizeCap { cap: usize },
    #[error("malformed automaton file: {0}")]
    Format(String),
    #[error("probabilistic automata are not supported: deciding feasibility for PFA improvisers is undecidable")]
    PfaUnsupported,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("language is empty")]
    EmptyLanguage,
    #[error("language is infinite; this operation needs a finite language")]
    InfiniteLanguage,
    #[error("language is finite; pumping needs an infinite language")]
    FiniteLanguage,
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error("sampler failed: {0}")]
    Failed(String),
}
