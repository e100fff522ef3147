//! Approximate improviser synthesis over symbolic automata.

use std::sync::Arc;

use improv_core::improvise::{
    feasibility, select_case, AdmissibleMass, CaseTag, Guarantee, Improviser, Synthesis,
};
use improv_core::rational::{ceil_to_biguint, from_biguint, to_f64};
use improv_core::{CountValue, Sampler};
use improv_sat::SolverBackend;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;

use crate::automaton::SymbolicAutomaton;
use crate::count::{approx_count, check_tau_delta, CountEstimate};
use crate::diameter::{diameter, DiameterResult};
use crate::error::SymbolicError;
use crate::sample::{symbolic_pump_sampler, AlmostUniformSampler};

/// Below this tolerance the hashing generator's published guarantee no
/// longer applies as stated.
pub const GENERATOR_TAU_FLOOR: f64 = 6.84;

pub const DEFAULT_DIAMETER_CAP: usize = 256;

#[derive(Clone, Debug)]
pub struct SymbolicOptions {
    pub backend: SolverBackend,
    pub diameter_cap: usize,
    /// Known bound on path lengths; skips the diameter search when set.
    pub diameter_bound: Option<usize>,
}

impl Default for SymbolicOptions {
    fn default() -> Self {
        SymbolicOptions {
            backend: SolverBackend::default(),
            diameter_cap: DEFAULT_DIAMETER_CAP,
            diameter_bound: None,
        }
    }
}

impl SymbolicOptions {
    pub fn bounds(&self, sa: &SymbolicAutomaton) -> Result<DiameterResult, SymbolicError> {
        match self.diameter_bound {
            Some(d) => Ok(DiameterResult::supplied(d)),
            None => diameter(sa, self.backend.build().as_mut(), self.diameter_cap),
        }
    }
}

#[derive(Debug)]
pub struct SymbolicSynthesis {
    pub synthesis: Synthesis,
    pub estimate_i: CountEstimate,
    pub estimate_a: CountEstimate,
    pub bounds_i: DiameterResult,
    pub bounds_a: DiameterResult,
    pub warnings: Vec<String>,
}

/// Confidence per estimate so that both hold together with probability
/// `1 − delta`.
pub fn split_confidence(delta: f64) -> f64 {
    1.0 - (1.0 - delta).sqrt()
}

/// Synthesizes an improviser from estimated language sizes.
///
/// With probability at least `1 − delta` both estimates are within `1 + tau`
/// and the result is an `(ε, (1+τ)²(1+ε)ρ)`-improviser or better; each case
/// records the bound it actually certifies.
#[allow(clippy::too_many_arguments)]
pub fn synthesize_symbolic(
    improv: &SymbolicAutomaton,
    admiss: &SymbolicAutomaton,
    epsilon: &BigRational,
    rho: &BigRational,
    tau: &BigRational,
    delta: f64,
    options: &SymbolicOptions,
    rng: &mut dyn RngCore,
) -> Result<SymbolicSynthesis, SymbolicError> {
    let tau_f = to_f64(tau);
    check_tau_delta(tau_f, delta)?;
    let unit = BigRational::zero()..=BigRational::one();
    if !unit.contains(epsilon) || !unit.contains(rho) || rho.is_zero() {
        return Err(SymbolicError::Parameter(format!(
            "need 0 <= epsilon <= 1 and 0 < rho <= 1, got epsilon={epsilon} rho={rho}"
        )));
    }
    let mut warnings = Vec::new();
    if tau_f < GENERATOR_TAU_FLOOR {
        warnings.push(format!(
            "tau={tau} is below {GENERATOR_TAU_FLOOR}; the almost-uniform generator's bound is weaker there"
        ));
    }
    let product = SymbolicAutomaton::product(improv, admiss)?;
    let bounds_i = options.bounds(improv)?;
    let bounds_a = options.bounds(&product)?;
    let each = split_confidence(delta);
    let mut oracle = options.backend.build();
    let estimate_i = approx_count(improv, oracle.as_mut(), tau_f, each, &bounds_i, rng)?;
    let estimate_a = approx_count(&product, oracle.as_mut(), tau_f, each, &bounds_a, rng)?;

    let (e_i, e_a) = (&estimate_i.value, &estimate_a.value);
    let Some(case) = select_case(e_i, e_a, epsilon, rho) else {
        let verdict = feasibility(e_i.clone(), e_a.clone(), epsilon, rho)?;
        return Ok(SymbolicSynthesis {
            synthesis: Synthesis::Infeasible(verdict),
            estimate_i,
            estimate_a,
            bounds_i,
            bounds_a,
            warnings,
        });
    };

    let one = BigRational::one();
    let spread = (&one + tau) * (&one + tau);
    let inv_rho = rho.recip();
    let improviser = match case {
        CaseTag::A => {
            let n = to_count(&ceil_to_biguint(&inv_rho))?;
            let pump = symbolic_pump_sampler(&product, oracle.as_mut(), n, &bounds_a, None)?;
            Improviser::new(
                vec![(one.clone(), Arc::new(pump) as Arc<dyn Sampler>)],
                Guarantee::new(BigRational::zero(), rho.clone()),
                CaseTag::Symbolic('A'),
                AdmissibleMass::Exact(one.clone()),
            )?
        }
        CaseTag::B => {
            let au = AlmostUniformSampler::new(&product, &options.backend, tau, &bounds_a, rng)?;
            Improviser::new(
                vec![(one.clone(), Arc::new(au) as Arc<dyn Sampler>)],
                Guarantee::new(BigRational::zero(), &spread * rho),
                CaseTag::Symbolic('B'),
                AdmissibleMass::Exact(one.clone()),
            )?
        }
        CaseTag::C => {
            let size_a = finite(e_a);
            let weight_a = rho * &size_a;
            let rest = ceil_to_biguint(&((&inv_rho - &size_a) / (&one + tau)));
            let m = to_count(&rest)?.max(1);
            let au = AlmostUniformSampler::new(&product, &options.backend, tau, &bounds_a, rng)?;
            // every word of the finite product is at most its diameter long
            let pump = symbolic_pump_sampler(improv, oracle.as_mut(), m, &bounds_i, Some(bounds_a.diameter))?;
            Improviser::new(
                vec![
                    (weight_a.clone(), Arc::new(au) as Arc<dyn Sampler>),
                    (&one - &weight_a, Arc::new(pump) as Arc<dyn Sampler>),
                ],
                Guarantee::new(epsilon.clone(), &spread * rho),
                CaseTag::Symbolic('C'),
                AdmissibleMass::Exact(weight_a),
            )?
        }
        _ => {
            let au_a = AlmostUniformSampler::new(&product, &options.backend, tau, &bounds_a, rng)?;
            let mut components = vec![(&one - epsilon, Arc::new(au_a) as Arc<dyn Sampler>)];
            if !epsilon.is_zero() {
                let au_i = AlmostUniformSampler::new(improv, &options.backend, tau, &bounds_i, rng)?;
                components.push((epsilon.clone(), Arc::new(au_i) as Arc<dyn Sampler>));
            }
            Improviser::new(
                components,
                Guarantee::new(epsilon.clone(), &spread * (&one + epsilon) * rho),
                CaseTag::Symbolic('D'),
                AdmissibleMass::LowerBound(&one - epsilon),
            )?
        }
    };
    Ok(SymbolicSynthesis {
        synthesis: Synthesis::Improviser(improviser),
        estimate_i,
        estimate_a,
        bounds_i,
        bounds_a,
        warnings,
    })
}

fn finite(value: &CountValue) -> BigRational {
    from_biguint(value.as_finite().expect("finite estimate"))
}

fn to_count(n: &num_bigint::BigUint) -> Result<usize, SymbolicError> {
    n.to_usize()
        .ok_or_else(|| SymbolicError::Parameter(format!("support size {n} too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn confidence_split_composes() {
        let d = split_confidence(0.2);
        assert!(((1.0 - d) * (1.0 - d) - 0.8).abs() < 1e-12);
    }
}
