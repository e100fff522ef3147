//! Feasibility, improviser synthesis and auditing.

mod dfa_scheme;
mod enumerative;
mod feasibility;
mod improviser;
mod instance;
mod nfa_special;
mod verify;

pub use dfa_scheme::{select_case, synthesize_dfa};
pub use enumerative::synthesize_enumerative;
pub use feasibility::{feasibility, FeasibilityVerdict};
pub use improviser::{AdmissibleMass, CaseTag, Component, Guarantee, Improviser};
pub use instance::{
    synthesize, Admissibility, CIInstance, ComputablePredicate, SynthesisOptions,
};
pub use nfa_special::synthesize_nfa_special;
pub use verify::{verify_improviser, wilson_interval, Audit, VerifyReport};

use thiserror::Error;

use crate::error::{AutomatonError, SampleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ImproviseError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent counts: |A| = {size_a} exceeds |I| = {size_i}")]
    InconsistentCounts { size_i: String, size_a: String },
}

/// Outcome of a synthesis attempt.
#[derive(Clone, Debug)]
pub enum Synthesis {
    Improviser(Improviser),
    /// The instance admits no improvising distribution.
    Infeasible(FeasibilityVerdict),
    /// The requested scheme does not cover this combination of automata.
    NotApplicable(String),
    /// Enumeration stopped before both lists filled. `language_exhausted`
    /// means 𝓘 ran out of words, which proves infeasibility.
    BudgetExhausted {
        examined: usize,
        language_exhausted: bool,
    },
}

impl Synthesis {
    pub fn improviser(&self) -> Option<&Improviser> {
        match self {
            Synthesis::Improviser(imp) => Some(imp),
            _ => None,
        }
    }

    pub fn into_improviser(self) -> Option<Improviser> {
        match self {
            Synthesis::Improviser(imp) => Some(imp),
            _ => None,
        }
    }
}
