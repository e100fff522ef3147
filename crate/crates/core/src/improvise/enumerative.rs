use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dfa_scheme::to_usize;
use super::feasibility::check_parameters;
use super::improviser::{AdmissibleMass, CaseTag, Guarantee, Improviser};
use super::instance::ComputablePredicate;
use super::{ImproviseError, Synthesis};
use crate::alphabet::Word;
use crate::automaton::AsNfa;
use crate::rational::{ceil_to_biguint, from_biguint};
use crate::sampler::{ListSampler, Sampler};
use crate::words::WordStream;

/// Enumerates 𝓘 in length-then-lex order, filling S with the first N
/// admissible words and T with the first M other words, then mixes them.
///
/// N = ⌈(1−ε)/ρ⌉ and M = ⌈1/ρ⌉ − N. S words get probability ρ each and T
/// words (1 − ρN)/M. When N ≥ 1/ρ the result is uniform on ⌈1/ρ⌉
/// admissible words instead.
pub fn synthesize_enumerative<A: AsNfa + ?Sized>(
    improv: &A,
    admiss: &ComputablePredicate,
    epsilon: &BigRational,
    rho: &BigRational,
    budget: usize,
) -> Result<Synthesis, ImproviseError> {
    check_parameters(epsilon, rho)?;
    if budget == 0 {
        return Err(ImproviseError::InvalidParameter("budget must be at least 1".into()));
    }
    let one = BigRational::one();
    let k_big = ceil_to_biguint(&rho.recip());
    let n_big = ceil_to_biguint(&((&one - epsilon) / rho));
    let uniform_only = from_biguint(&n_big) >= rho.recip();
    let k = to_usize(&k_big)?;
    let (n, m) = if uniform_only {
        (k, 0)
    } else {
        let n = to_usize(&n_big)?;
        (n, k - n)
    };

    let mut s: Vec<Word> = Vec::with_capacity(n);
    let mut t: Vec<Word> = Vec::with_capacity(m);
    let mut t_admissible = 0usize;
    let mut examined = 0usize;
    let mut stream = WordStream::new(improv);
    while s.len() < n || t.len() < m {
        if examined == budget {
            return Ok(Synthesis::BudgetExhausted {
                examined,
                language_exhausted: false,
            });
        }
        let Some(word) = stream.next() else {
            return Ok(Synthesis::BudgetExhausted {
                examined,
                language_exhausted: true,
            });
        };
        examined += 1;
        let admissible = admiss.holds(&word);
        if admissible && s.len() < n {
            s.push(word);
        } else if t.len() < m {
            t_admissible += usize::from(admissible);
            t.push(word);
        }
    }

    let imp = if uniform_only {
        let per_word = from_biguint(&k_big).recip();
        Improviser::new(
            vec![(one.clone(), Arc::new(ListSampler::new(s)?) as Arc<dyn Sampler>)],
            Guarantee::new(BigRational::zero(), per_word),
            CaseTag::Enumerative,
            AdmissibleMass::Exact(one),
        )?
    } else {
        let s_weight = rho * from_biguint(&BigUint::from(n));
        let t_weight = &one - &s_weight;
        let t_mass = if m == 0 {
            BigRational::zero()
        } else {
            &t_weight * BigRational::new(t_admissible.into(), m.into())
        };
        let mut components: Vec<(BigRational, Arc<dyn Sampler>)> = Vec::new();
        if n > 0 {
            components.push((s_weight.clone(), Arc::new(ListSampler::new(s)?)));
        }
        if m > 0 {
            components.push((t_weight, Arc::new(ListSampler::new(t)?)));
        }
        Improviser::new(
            components,
            Guarantee::new(epsilon.clone(), rho.clone()),
            CaseTag::Enumerative,
            AdmissibleMass::Exact(s_weight + t_mass),
        )?
    };
    Ok(Synthesis::Improviser(imp))
}
