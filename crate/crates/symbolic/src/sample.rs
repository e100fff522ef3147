//! Samplers over symbolic languages.

use improv_core::sampler::SamplerKind;
use improv_core::{uniform_below, CountValue, PumpSampler, SampleError, Sampler, Symbol, Word};
use improv_sat::{enumerate_projected_models, SolverBackend, SolverOracle};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use crate::automaton::SymbolicAutomaton;
use crate::count::{approx_count_unrolled, check_tau_delta, pivot, HashCells};
use crate::diameter::{cycle_witness, symbolic_is_infinite, DiameterResult};
use crate::error::{sample_failure, SymbolicError};
use crate::unroll::{unroll, Unrolled};

/// Attempts per draw before giving up on finding a usable hash cell.
pub const MAX_CELL_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug)]
enum Mode {
    /// The whole language, enumerated.
    Exact(Vec<Word>),
    Hashed {
        estimate: BigUint,
        hashes: usize,
        cell_cap: usize,
    },
}

/// Near-uniform sampler over a finite symbolic language.
///
/// Small languages are enumerated once and sampled exactly. Otherwise each
/// draw cuts the language with random parity constraints into a cell of
/// expected size at most the pivot, enumerates it, and picks a slot out of
/// `cell_cap`; empty slots and oversized cells trigger a fresh hash.
#[derive(Clone, Debug)]
pub struct AlmostUniformSampler {
    automaton: SymbolicAutomaton,
    unrolled: Unrolled,
    backend: SolverBackend,
    tau: BigRational,
    mode: Mode,
}

impl AlmostUniformSampler {
    /// `tau` is the tolerance, given exactly for the probability bound.
    pub fn new(
        sa: &SymbolicAutomaton,
        backend: &SolverBackend,
        tau: &BigRational,
        bounds: &DiameterResult,
        rng: &mut dyn RngCore,
    ) -> Result<Self, SymbolicError> {
        let tau_f = improv_core::rational::to_f64(tau);
        check_tau_delta(tau_f, 0.5)?;
        let mut oracle = backend.build();
        if symbolic_is_infinite(sa, oracle.as_mut(), bounds)? {
            return Err(SampleError::InfiniteLanguage.into());
        }
        let unrolled = unroll(sa, bounds.diameter);
        let pivot = pivot(tau_f);
        let all = enumerate_projected_models(oracle.as_mut(), &unrolled.cnf, pivot + 1)?;
        let mode = if all.is_empty() {
            return Err(SampleError::EmptyLanguage.into());
        } else if all.len() <= pivot {
            Mode::Exact(all.iter().map(|p| unrolled.decode_projected(sa, p)).collect())
        } else {
            // pilot estimate at a fixed moderate confidence
            let pilot = approx_count_unrolled(&unrolled, oracle.as_mut(), tau_f, 0.2, rng)?;
            let estimate = pilot.value.as_finite().cloned().unwrap_or_default().max(BigUint::one());
            let ratio = &estimate / BigUint::from(pivot);
            let hashes = if ratio.is_zero() { 0 } else { ratio.bits() as usize };
            Mode::Hashed {
                estimate,
                hashes: hashes.min(unrolled.cnf.projection().len()),
                cell_cap: 2 * pivot,
            }
        };
        Ok(AlmostUniformSampler {
            automaton: sa.clone(),
            unrolled,
            backend: backend.clone(),
            tau: tau.clone(),
            mode,
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.mode, Mode::Exact(_))
    }

    /// Language size: exact when enumerated, otherwise the pilot estimate.
    pub fn size_estimate(&self) -> BigUint {
        match &self.mode {
            Mode::Exact(words) => BigUint::from(words.len()),
            Mode::Hashed { estimate, .. } => estimate.clone(),
        }
    }

    fn draw_hashed(&self, hashes: usize, cell_cap: usize, rng: &mut dyn RngCore) -> Result<Word, SymbolicError> {
        let mut oracle: Box<dyn SolverOracle + Send> = self.backend.build();
        for _ in 0..MAX_CELL_ATTEMPTS {
            let cells = HashCells::draw(&self.unrolled, rng);
            let cell = cells.cell(oracle.as_mut(), hashes, cell_cap + 1)?;
            if cell.is_empty() || cell.len() > cell_cap {
                continue;
            }
            let slot: usize = uniform_below(&BigUint::from(cell_cap), rng).try_into().unwrap();
            if let Some(p) = cell.get(slot) {
                return Ok(self.unrolled.decode_projected(&self.automaton, p));
            }
        }
        Err(SampleError::Failed(format!(
            "no usable hash cell after {MAX_CELL_ATTEMPTS} attempts"
        ))
        .into())
    }
}

impl Sampler for AlmostUniformSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> Result<Word, SampleError> {
        match &self.mode {
            Mode::Exact(words) => {
                let i: usize = uniform_below(&BigUint::from(words.len()), rng).try_into().unwrap();
                Ok(words[i].clone())
            }
            Mode::Hashed { hashes, cell_cap, .. } => {
                self.draw_hashed(*hashes, *cell_cap, rng).map_err(sample_failure)
            }
        }
    }

    fn kind(&self) -> SamplerKind {
        SamplerKind::AlmostUniform
    }

    fn support_size(&self) -> CountValue {
        CountValue::Finite(self.size_estimate())
    }

    fn exact_prob(&self, word: &[Symbol]) -> Option<BigRational> {
        match &self.mode {
            Mode::Exact(words) => Some(if words.iter().any(|w| w == word) {
                BigRational::new(BigUint::one().into(), BigUint::from(words.len()).into())
            } else {
                BigRational::zero()
            }),
            Mode::Hashed { .. } => None,
        }
    }

    fn support(&self, limit: usize) -> Option<Vec<Word>> {
        match &self.mode {
            Mode::Exact(words) if words.len() <= limit => Some(words.clone()),
            _ => None,
        }
    }

    /// Exact `1/|L|` when enumerated, else `(1+τ)²` over the pilot estimate.
    fn max_prob_bound(&self) -> BigRational {
        let size = BigRational::from_integer(self.size_estimate().into());
        match &self.mode {
            Mode::Exact(_) => size.recip(),
            Mode::Hashed { .. } => {
                let factor = BigRational::one() + &self.tau;
                &factor * &factor / size
            }
        }
    }
}

/// Uniform sampler over `count` pumped words `x y^i z` of an infinite
/// symbolic language, each longer than `min_len` when given.
pub fn symbolic_pump_sampler(
    sa: &SymbolicAutomaton,
    oracle: &mut dyn SolverOracle,
    count: usize,
    bounds: &DiameterResult,
    min_len: Option<usize>,
) -> Result<PumpSampler, SymbolicError> {
    let witness = cycle_witness(sa, oracle, bounds)?.ok_or(SampleError::FiniteLanguage)?;
    let base = witness.x.len() + witness.z.len();
    let offset = match min_len {
        Some(m) if base <= m => (m - base) / witness.y.len() + 1,
        _ => 0,
    };
    Ok(PumpSampler::from_witness(witness, offset, count)?)
}
