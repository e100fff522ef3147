use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dfa_scheme::{select_case, synthesize_dfa, to_usize};
use super::feasibility::feasibility;
use super::improviser::{AdmissibleMass, CaseTag, Guarantee, Improviser};
use super::{ImproviseError, Synthesis};
use crate::automaton::{AsNfa, Automaton};
use crate::count::{count_words, max_word_length, CountValue};
use crate::error::AutomatonError;
use crate::nfa::Nfa;
use crate::rational::{ceil_to_biguint, from_biguint};
use crate::sampler::{PumpSampler, Sampler, UniformSampler};
use crate::trim::is_language_infinite;

fn not_applicable(err: AutomatonError) -> Result<Synthesis, ImproviseError> {
    match err {
        AutomatonError::DeterminizeCap { cap } => Ok(Synthesis::NotApplicable(format!(
            "determinization exceeded {cap} states; exact counting for this NFA pair is #P-hard \
             and no tractable special case applies"
        ))),
        other => Err(other.into()),
    }
}

fn case_letter(case: CaseTag) -> char {
    match case {
        CaseTag::A => 'A',
        CaseTag::B => 'B',
        CaseTag::C => 'C',
        CaseTag::D => 'D',
        _ => '?',
    }
}

/// The tractable NFA cases.
///
/// * 𝒜 = 𝓘 ∩ 𝒟 infinite: pump 𝒜 (case A).
/// * 𝒜 finite, 𝓘 infinite: count 𝒜 through its subset construction and, in
///   case C, draw the inadmissible part by pumping 𝓘 past the longest word
///   of 𝒜 so the two supports are disjoint by length.
/// * both finite: determinize both and use the DFA scheme.
///
/// Exceeding `determinize_cap` yields [`Synthesis::NotApplicable`].
pub fn synthesize_nfa_special(
    improv: &Automaton,
    admiss: &Automaton,
    epsilon: &BigRational,
    rho: &BigRational,
    determinize_cap: usize,
) -> Result<Synthesis, ImproviseError> {
    if let (Automaton::Dfa(i), Automaton::Dfa(d)) = (improv, admiss) {
        return synthesize_dfa(i, d, epsilon, rho);
    }
    let product = Nfa::product(&improv.as_nfa(), &admiss.as_nfa())?;
    let one = BigRational::one();
    let ceil_inv_rho = ceil_to_biguint(&rho.recip());

    if is_language_infinite(&product) {
        let verdict = feasibility(CountValue::Infinite, CountValue::Infinite, epsilon, rho)?;
        debug_assert!(verdict.feasible);
        let sampler = PumpSampler::new(&product, to_usize(&ceil_inv_rho)?)?;
        let imp = Improviser::new(
            vec![(one.clone(), Arc::new(sampler) as Arc<dyn Sampler>)],
            Guarantee::new(BigRational::zero(), rho.clone()),
            CaseTag::NfaSpecial('A'),
            AdmissibleMass::Exact(one),
        )?;
        return Ok(Synthesis::Improviser(imp));
    }

    if !is_language_infinite(improv) {
        let i = match improv.to_dfa(determinize_cap) {
            Ok(i) => i,
            Err(e) => return not_applicable(e),
        };
        let d = match admiss.to_dfa(determinize_cap) {
            Ok(d) => d,
            Err(e) => return not_applicable(e),
        };
        return Ok(match synthesize_dfa(&i, &d, epsilon, rho)? {
            Synthesis::Improviser(imp) => {
                let letter = case_letter(imp.case());
                Synthesis::Improviser(imp.with_case(CaseTag::NfaSpecial(letter)))
            }
            other => other,
        });
    }

    let a = match product.determinize(determinize_cap) {
        Ok(a) => a,
        Err(e) => return not_applicable(e),
    };
    let size_a = count_words(&a);
    let verdict = feasibility(CountValue::Infinite, size_a.clone(), epsilon, rho)?;
    let imp = match select_case(&CountValue::Infinite, &size_a, epsilon, rho) {
        None => return Ok(Synthesis::Infeasible(verdict)),
        Some(CaseTag::B) => {
            let sampler = UniformSampler::new(&a)?;
            let per_word = from_biguint(sampler.language_size()).recip();
            Improviser::new(
                vec![(one.clone(), Arc::new(sampler) as Arc<dyn Sampler>)],
                Guarantee::new(BigRational::zero(), per_word),
                CaseTag::NfaSpecial('B'),
                AdmissibleMass::Exact(one),
            )?
        }
        Some(CaseTag::C) => {
            let n_a = size_a.as_finite().unwrap().clone();
            let admissible_weight = rho * from_biguint(&n_a);
            let m = to_usize(&(&ceil_inv_rho - &n_a))?;
            let mut components: Vec<(BigRational, Arc<dyn Sampler>)> = Vec::new();
            let longest = max_word_length(&a)?;
            if let Some(len) = longest {
                components.push((admissible_weight.clone(), Arc::new(UniformSampler::new(&a)?)));
                components.push((
                    &one - &admissible_weight,
                    Arc::new(PumpSampler::longer_than(improv, m, Some(len))?),
                ));
            } else {
                components.push((&one - &admissible_weight, Arc::new(PumpSampler::new(improv, m)?)));
            }
            Improviser::new(
                components,
                Guarantee::new(epsilon.clone(), rho.clone()),
                CaseTag::NfaSpecial('C'),
                AdmissibleMass::Exact(admissible_weight),
            )?
        }
        Some(other) => unreachable!("case {other} impossible with finite A and infinite I"),
    };
    Ok(Synthesis::Improviser(imp))
}
