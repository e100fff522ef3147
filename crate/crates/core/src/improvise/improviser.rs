use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use super::ImproviseError;
use crate::alphabet::{Symbol, Word};
use crate::error::SampleError;
use crate::sampler::{choose_weighted, Sampler};

/// Which construction produced an improviser.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    A,
    B,
    C,
    D,
    Enumerative,
    /// NFA dispatch, with the DFA-scheme case it realized.
    NfaSpecial(char),
    /// SAT-backed scheme for symbolic automata, with its case letter.
    Symbolic(char),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::A => f.write_str("A"),
            CaseTag::B => f.write_str("B"),
            CaseTag::C => f.write_str("C"),
            CaseTag::D => f.write_str("D"),
            CaseTag::Enumerative => f.write_str("E-enumerative"),
            CaseTag::NfaSpecial(c) => write!(f, "NFA-special-{c}"),
            CaseTag::Symbolic(c) => write!(f, "symbolic-{c}"),
        }
    }
}

/// The (ε, ρ) pair an improviser is certified for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guarantee {
    pub epsilon: BigRational,
    pub rho: BigRational,
}

impl Guarantee {
    pub fn new(epsilon: BigRational, rho: BigRational) -> Self {
        Guarantee { epsilon, rho }
    }

    /// Whether this guarantee is at least as strong as `(epsilon, rho)`.
    pub fn within(&self, epsilon: &BigRational, rho: &BigRational) -> bool {
        self.epsilon <= *epsilon && self.rho <= *rho
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibleMass {
    Exact(BigRational),
    LowerBound(BigRational),
}

impl AdmissibleMass {
    pub fn value(&self) -> &BigRational {
        match self {
            AdmissibleMass::Exact(r) | AdmissibleMass::LowerBound(r) => r,
        }
    }
}

impl fmt::Display for AdmissibleMass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleMass::Exact(r) => write!(f, "{r}"),
            AdmissibleMass::LowerBound(r) => write!(f, ">={r}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub weight: BigRational,
    pub sampler: Arc<dyn Sampler>,
}

/// A mixture of samplers with exact weights and the metadata needed to audit it.
#[derive(Clone, Debug)]
pub struct Improviser {
    components: Vec<Component>,
    guarantee: Guarantee,
    case: CaseTag,
    admissible_mass: AdmissibleMass,
}

impl Improviser {
    /// Zero-weight components are dropped; the rest must sum to 1.
    pub fn new(
        components: Vec<(BigRational, Arc<dyn Sampler>)>,
        guarantee: Guarantee,
        case: CaseTag,
        admissible_mass: AdmissibleMass,
    ) -> Result<Self, ImproviseError> {
        let components: Vec<Component> = components
            .into_iter()
            .filter(|(w, _)| !w.is_zero())
            .map(|(weight, sampler)| Component { weight, sampler })
            .collect();
        if components.iter().any(|c| c.weight < BigRational::zero()) {
            return Err(ImproviseError::InvalidParameter("negative mixture weight".into()));
        }
        let total: BigRational = components.iter().map(|c| c.weight.clone()).sum();
        if total != BigRational::one() {
            return Err(ImproviseError::InvalidParameter(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        Ok(Improviser {
            components,
            guarantee,
            case,
            admissible_mass,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn guarantee(&self) -> &Guarantee {
        &self.guarantee
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn admissible_mass(&self) -> &AdmissibleMass {
        &self.admissible_mass
    }

    pub fn weights(&self) -> Vec<BigRational> {
        self.components.iter().map(|c| c.weight.clone()).collect()
    }

    /// Picks a component by its exact weight and draws from it.
    pub fn draw(&self, rng: &mut dyn RngCore) -> Result<Word, SampleError> {
        let idx = if self.components.len() == 1 {
            0
        } else {
            choose_weighted(&self.weights(), rng)
        };
        self.components[idx].sampler.draw(rng)
    }

    /// Exact probability of `word`, if every component knows its distribution.
    pub fn exact_prob(&self, word: &[Symbol]) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for c in &self.components {
            total += &c.weight * c.sampler.exact_prob(word)?;
        }
        Some(total)
    }

    /// The full output distribution when every component has an explicit
    /// support of at most `limit` words and exact probabilities.
    pub fn distribution(&self, limit: usize) -> Option<BTreeMap<Word, BigRational>> {
        let mut words = BTreeMap::new();
        for c in &self.components {
            for w in c.sampler.support(limit)? {
                words.entry(w).or_insert_with(BigRational::zero);
            }
        }
        for (w, p) in words.iter_mut() {
            *p = self.exact_prob(w)?;
        }
        Some(words)
    }

    /// Largest single-word probability: exact when the distribution is
    /// available, otherwise the weighted sum of component bounds.
    pub fn max_prob(&self, limit: usize) -> (BigRational, bool) {
        if let Some(dist) = self.distribution(limit) {
            let max = dist.values().max().cloned().unwrap_or_else(BigRational::zero);
            return (max, true);
        }
        let bound = self
            .components
            .iter()
            .map(|c| &c.weight * c.sampler.max_prob_bound())
            .sum();
        (bound, false)
    }

    /// One-line summary: case, certified pair, weights.
    pub fn certificate(&self) -> String {
        let weights: Vec<String> = self.components.iter().map(|c| c.weight.to_string()).collect();
        let kinds: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}:{}", c.sampler.kind(), c.sampler.support_size()))
            .collect();
        format!(
            "case={} eps={} rho={} weights={} components={} admissible_mass={}",
            self.case,
            self.guarantee.epsilon,
            self.guarantee.rho,
            weights.join(","),
            kinds.join(","),
            self.admissible_mass
        )
    }
}

impl Improviser {
    pub(crate) fn with_case(mut self, case: CaseTag) -> Self {
        self.case = case;
        self
    }
}
