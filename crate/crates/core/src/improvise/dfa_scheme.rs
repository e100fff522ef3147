use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::feasibility::feasibility;
use super::improviser::{AdmissibleMass, CaseTag, Guarantee, Improviser};
use super::{ImproviseError, Synthesis};
use crate::count::{count_words, CountValue};
use crate::dfa::Dfa;
use crate::error::SampleError;
use crate::rational::{ceil_to_biguint, from_biguint};
use crate::sampler::{PumpSampler, Sampler, UniformSampler};

/// Which of the four constructive cases applies, or `None` when the instance
/// is infeasible.
pub fn select_case(
    size_i: &CountValue,
    size_a: &CountValue,
    epsilon: &BigRational,
    rho: &BigRational,
) -> Option<CaseTag> {
    let need_i = rho.recip();
    let need_a = (BigRational::one() - epsilon) / rho;
    match (size_i, size_a) {
        (_, CountValue::Infinite) => Some(CaseTag::A),
        (_, a) if a.at_least(&need_i) => Some(CaseTag::B),
        (_, a) if !a.at_least(&need_a) => None,
        (CountValue::Infinite, _) => Some(CaseTag::C),
        (i, _) if i.at_least(&need_i) => Some(CaseTag::D),
        _ => None,
    }
}

pub(crate) fn to_usize(n: &BigUint) -> Result<usize, ImproviseError> {
    n.to_usize().ok_or_else(|| {
        ImproviseError::InvalidParameter(format!("{n} pumped words do not fit in memory"))
    })
}

/// The explicit-DFA scheme.
///
/// 𝒜 = 𝓘 × 𝒟 holds the admissible improvisations, ℬ = 𝓘 × 𝒜ᶜ the rest.
/// Components in cases C and D draw from 𝒜 and ℬ, whose languages are
/// disjoint, so every word's probability is its component's weight over that
/// component's support size.
pub fn synthesize_dfa(
    improv: &Dfa,
    admiss: &Dfa,
    epsilon: &BigRational,
    rho: &BigRational,
) -> Result<Synthesis, ImproviseError> {
    let a = Dfa::product(improv, admiss)?;
    let size_i = count_words(improv);
    let size_a = count_words(&a);
    let verdict = feasibility(size_i.clone(), size_a.clone(), epsilon, rho)?;
    let Some(case) = select_case(&size_i, &size_a, epsilon, rho) else {
        return Ok(Synthesis::Infeasible(verdict));
    };
    let ceil_inv_rho = ceil_to_biguint(&rho.recip());
    let zero = BigRational::zero();
    let one = BigRational::one();
    let imp = match case {
        CaseTag::A => {
            let sampler = PumpSampler::new(&a, to_usize(&ceil_inv_rho)?)?;
            Improviser::new(
                vec![(one.clone(), Arc::new(sampler) as Arc<dyn Sampler>)],
                Guarantee::new(zero, rho.clone()),
                case,
                AdmissibleMass::Exact(one),
            )?
        }
        CaseTag::B => {
            let sampler = UniformSampler::new(&a)?;
            let per_word = from_biguint(sampler.language_size()).recip();
            Improviser::new(
                vec![(one.clone(), Arc::new(sampler) as Arc<dyn Sampler>)],
                Guarantee::new(zero, per_word),
                case,
                AdmissibleMass::Exact(one),
            )?
        }
        CaseTag::C | CaseTag::D => {
            let n_a = size_a.as_finite().expect("finite in cases C and D").clone();
            let admissible_weight = rho * from_biguint(&n_a);
            let rest = &one - &admissible_weight;
            let b = Dfa::product(improv, &a.complement())?;
            let mut components: Vec<(BigRational, Arc<dyn Sampler>)> = Vec::new();
            if !n_a.is_zero() {
                components.push((admissible_weight.clone(), Arc::new(UniformSampler::new(&a)?)));
            }
            let other: Arc<dyn Sampler> = if case == CaseTag::C {
                let m = &ceil_inv_rho - &n_a;
                Arc::new(PumpSampler::new(&b, to_usize(&m)?)?)
            } else {
                let sampler = UniformSampler::new(&b)?;
                if sampler.language_size().is_zero() {
                    return Err(SampleError::EmptyLanguage.into());
                }
                Arc::new(sampler)
            };
            components.push((rest, other));
            Improviser::new(
                components,
                Guarantee::new(epsilon.clone(), rho.clone()),
                case,
                AdmissibleMass::Exact(admissible_weight),
            )?
        }
        _ => unreachable!("select_case yields A-D only"),
    };
    Ok(Synthesis::Improviser(imp))
}
