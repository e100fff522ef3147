use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::dfa_scheme::synthesize_dfa;
use super::enumerative::synthesize_enumerative;
use super::feasibility::check_parameters;
use super::nfa_special::synthesize_nfa_special;
use super::{ImproviseError, Synthesis};
use crate::alphabet::Symbol;
use crate::automaton::Automaton;
use crate::error::AutomatonError;
use crate::nfa::DEFAULT_DETERMINIZE_CAP;

type WordPredicate = dyn Fn(&[Symbol]) -> bool + Send + Sync;

/// A total word predicate known only through evaluation.
#[derive(Clone)]
pub struct ComputablePredicate {
    name: String,
    test: Arc<WordPredicate>,
}

impl ComputablePredicate {
    pub fn new<F>(name: impl Into<String>, test: F) -> Self
    where
        F: Fn(&[Symbol]) -> bool + Send + Sync + 'static,
    {
        ComputablePredicate {
            name: name.into(),
            test: Arc::new(test),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn holds(&self, word: &[Symbol]) -> bool {
        (self.test)(word)
    }
}

impl fmt::Debug for ComputablePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComputablePredicate({})", self.name)
    }
}

#[derive(Clone, Debug)]
pub enum Admissibility {
    Automaton(Automaton),
    Predicate(ComputablePredicate),
}

impl Admissibility {
    pub fn admits(&self, word: &[Symbol]) -> bool {
        match self {
            Admissibility::Automaton(a) => a.accepts(word),
            Admissibility::Predicate(p) => p.holds(word),
        }
    }
}

/// An explicit control-improvisation instance (𝓘, α, ε, ρ).
#[derive(Clone, Debug)]
pub struct CIInstance {
    pub improv: Automaton,
    pub admiss: Admissibility,
    pub epsilon: BigRational,
    pub rho: BigRational,
}

impl CIInstance {
    pub fn new(
        improv: Automaton,
        admiss: Admissibility,
        epsilon: BigRational,
        rho: BigRational,
    ) -> Result<Self, ImproviseError> {
        check_parameters(&epsilon, &rho)?;
        if let Admissibility::Automaton(a) = &admiss {
            if a.alphabet() != improv.alphabet() {
                return Err(AutomatonError::AlphabetMismatch.into());
            }
        }
        Ok(CIInstance {
            improv,
            admiss,
            epsilon,
            rho,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisOptions {
    pub determinize_cap: usize,
    /// Words of 𝓘 the enumerative scheme may examine.
    pub enumeration_budget: usize,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            determinize_cap: DEFAULT_DETERMINIZE_CAP,
            enumeration_budget: 1_000_000,
        }
    }
}

/// Picks the scheme matching the instance's representation.
pub fn synthesize(
    instance: &CIInstance,
    options: &SynthesisOptions,
) -> Result<Synthesis, ImproviseError> {
    let (eps, rho) = (&instance.epsilon, &instance.rho);
    match (&instance.improv, &instance.admiss) {
        (_, Admissibility::Predicate(p)) => {
            synthesize_enumerative(&instance.improv, p, eps, rho, options.enumeration_budget)
        }
        (Automaton::Dfa(i), Admissibility::Automaton(Automaton::Dfa(d))) => {
            synthesize_dfa(i, d, eps, rho)
        }
        (i, Admissibility::Automaton(d)) => {
            synthesize_nfa_special(i, d, eps, rho, options.determinize_cap)
        }
    }
}
