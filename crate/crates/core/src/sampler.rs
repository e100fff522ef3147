use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use crate::alphabet::{Symbol, Word};
use crate::automaton::AsNfa;
use crate::count::{path_counts, CountValue, PathCountTable};
use crate::dfa::Dfa;
use crate::error::SampleError;
use crate::pump::{find_pump_witness, PumpWitness};

/// Exactly uniform integer in `[0, n)`.
///
/// Reads random bits of a real u ∈ [0,1) until ⌊u·n⌋ is determined, so the
/// result is exact with no rejection step.
pub fn uniform_below(n: &BigUint, rng: &mut dyn RngCore) -> BigUint {
    assert!(!n.is_zero(), "uniform_below(0)");
    if n.is_one() {
        return BigUint::zero();
    }
    // u lies in [a / 2^k, (a + 1) / 2^k)
    let mut a = BigUint::zero();
    let mut k: u64 = 0;
    loop {
        let chunk = rng.next_u32();
        a = (a << 32u32) | BigUint::from(chunk);
        k += 32;
        let lo = (&a * n) >> k;
        let hi = ((&a + 1u32) * n - 1u32) >> k;
        if lo == hi {
            return lo;
        }
    }
}

/// Exact Bernoulli-free choice of an index with rational weights.
pub fn choose_weighted(weights: &[BigRational], rng: &mut dyn RngCore) -> usize {
    let denom = crate::rational::common_denominator(weights);
    let scaled: Vec<BigInt> = weights
        .iter()
        .map(|w| (w * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    let total: BigInt = scaled.iter().sum();
    let r = uniform_below(&total.to_biguint().expect("weights are non-negative"), rng);
    let mut acc = BigInt::zero();
    let r = BigInt::from(r);
    for (i, s) in scaled.iter().enumerate() {
        acc += s;
        if r < acc {
            return i;
        }
    }
    unreachable!("cumulative weight covers the draw")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplerKind {
    Uniform,
    Pumped,
    List,
    AlmostUniform,
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerKind::Uniform => "uniform",
            SamplerKind::Pumped => "pumped",
            SamplerKind::List => "list",
            SamplerKind::AlmostUniform => "almost-uniform",
        })
    }
}

/// A distribution over words that can be drawn from.
///
/// Samplers hold only read-only tables, so one instance can serve many
/// callers; each caller brings its own random source.
pub trait Sampler: Send + Sync + fmt::Debug {
    fn draw(&self, rng: &mut dyn RngCore) -> Result<Word, SampleError>;

    fn kind(&self) -> SamplerKind;

    fn support_size(&self) -> CountValue;

    /// Exact probability of `word`, when the distribution is known exactly.
    fn exact_prob(&self, word: &[Symbol]) -> Option<BigRational>;

    /// The support, if it has at most `limit` words and is known explicitly.
    fn support(&self, limit: usize) -> Option<Vec<Word>>;

    /// An upper bound on any single word's probability.
    fn max_prob_bound(&self) -> BigRational;
}

fn reciprocal(n: &BigUint) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n.clone()))
}

/// Uniform over a finite, non-empty DFA language via the path-count walk.
#[derive(Clone, Debug)]
pub struct UniformSampler {
    table: Arc<PathCountTable>,
}

impl UniformSampler {
    pub fn new(dfa: &Dfa) -> Result<Self, SampleError> {
        let table = path_counts(dfa)?;
        if table.total().is_zero() {
            return Err(SampleError::EmptyLanguage);
        }
        Ok(UniformSampler {
            table: Arc::new(table),
        })
    }

    pub fn table(&self) -> &PathCountTable {
        &self.table
    }

    pub fn language_size(&self) -> &BigUint {
        self.table.total()
    }

    /// Product of the walk's step probabilities along `word`: p_v / p_u per
    /// edge u → v, then 1 / p_u for stopping at accepting u. `None` when the
    /// walk cannot produce `word`.
    pub fn walk_probability(&self, word: &[Symbol]) -> Option<BigRational> {
        let dfa = self.table.dfa();
        let mut u = dfa.initial();
        let mut prob = BigRational::one();
        for &s in word {
            let v = dfa.next(u, s)?;
            prob *= BigRational::new(
                BigInt::from(self.table.count(v).clone()),
                BigInt::from(self.table.count(u).clone()),
            );
            u = v;
        }
        if !dfa.is_accepting(u) {
            return None;
        }
        Some(prob * reciprocal(self.table.count(u)))
    }

    /// The walk driven by a given rank r ∈ [0, p_initial): at each state the
    /// stop option takes weight 1 (if accepting) and each edge weight p_v.
    pub fn word_at_rank(&self, mut r: BigUint) -> Word {
        let dfa = self.table.dfa();
        let mut u = dfa.initial();
        let mut word = Vec::new();
        'walk: loop {
            if dfa.is_accepting(u) {
                if r.is_zero() {
                    return word;
                }
                r -= 1u32;
            }
            for (s, v) in dfa.successors(u) {
                let p = self.table.count(v);
                if r < *p {
                    word.push(s);
                    u = v;
                    continue 'walk;
                }
                r -= p;
            }
            unreachable!("rank exceeds path count");
        }
    }
}

impl Sampler for UniformSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> Result<Word, SampleError> {
        // a single uniform rank realizes the whole weighted walk at once
        Ok(self.word_at_rank(uniform_below(self.table.total(), rng)))
    }

    fn kind(&self) -> SamplerKind {
        SamplerKind::Uniform
    }

    fn support_size(&self) -> CountValue {
        CountValue::Finite(self.table.total().clone())
    }

    fn exact_prob(&self, word: &[Symbol]) -> Option<BigRational> {
        Some(if self.table.dfa().accepts(word) {
            reciprocal(self.table.total())
        } else {
            BigRational::zero()
        })
    }

    fn support(&self, limit: usize) -> Option<Vec<Word>> {
        if *self.table.total() > BigUint::from(limit) {
            return None;
        }
        let n: usize = self.table.total().try_into().ok()?;
        Some((0..n).map(|r| self.word_at_rank(BigUint::from(r))).collect())
    }

    fn max_prob_bound(&self) -> BigRational {
        reciprocal(self.table.total())
    }
}

/// Uniform over {x y^(i + offset) z : 0 ≤ i < count}.
#[derive(Clone, Debug)]
pub struct PumpSampler {
    witness: PumpWitness,
    offset: usize,
    count: usize,
}

impl PumpSampler {
    pub fn new<A: AsNfa + ?Sized>(automaton: &A, count: usize) -> Result<Self, SampleError> {
        Self::longer_than(automaton, count, None)
    }

    /// Pumps far enough that every support word is longer than `min_len`.
    pub fn longer_than<A: AsNfa + ?Sized>(
        automaton: &A,
        count: usize,
        min_len: Option<usize>,
    ) -> Result<Self, SampleError> {
        if count == 0 {
            return Err(SampleError::ZeroCount);
        }
        let witness = find_pump_witness(automaton)?;
        let base = witness.x.len() + witness.z.len();
        let offset = match min_len {
            Some(m) if base <= m => (m - base) / witness.y.len() + 1,
            _ => 0,
        };
        Ok(PumpSampler {
            witness,
            offset,
            count,
        })
    }

    /// Sampler over a witness found elsewhere, e.g. decoded from a SAT model.
    pub fn from_witness(witness: PumpWitness, offset: usize, count: usize) -> Result<Self, SampleError> {
        if count == 0 {
            return Err(SampleError::ZeroCount);
        }
        if witness.y.is_empty() {
            return Err(SampleError::Failed("pump witness needs a non-empty loop".into()));
        }
        Ok(PumpSampler {
            witness,
            offset,
            count,
        })
    }

    pub fn witness(&self) -> &PumpWitness {
        &self.witness
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn count(&self) -> usize {
        self.count
    }

    fn index_of(&self, word: &[Symbol]) -> Option<usize> {
        let j = self.witness.exponent_of(word)?;
        (j >= self.offset && j - self.offset < self.count).then(|| j - self.offset)
    }
}

impl Sampler for PumpSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> Result<Word, SampleError> {
        let i: usize = uniform_below(&BigUint::from(self.count), rng)
            .try_into()
            .unwrap();
        Ok(self.witness.word(i + self.offset))
    }

    fn kind(&self) -> SamplerKind {
        SamplerKind::Pumped
    }

    fn support_size(&self) -> CountValue {
        CountValue::finite(self.count as u64)
    }

    fn exact_prob(&self, word: &[Symbol]) -> Option<BigRational> {
        Some(match self.index_of(word) {
            Some(_) => reciprocal(&BigUint::from(self.count)),
            None => BigRational::zero(),
        })
    }

    fn support(&self, limit: usize) -> Option<Vec<Word>> {
        (self.count <= limit).then(|| {
            (0..self.count)
                .map(|i| self.witness.word(i + self.offset))
                .collect()
        })
    }

    fn max_prob_bound(&self) -> BigRational {
        reciprocal(&BigUint::from(self.count))
    }
}

/// Uniform over an explicit list of distinct words.
#[derive(Clone, Debug)]
pub struct ListSampler {
    words: Vec<Word>,
}

impl ListSampler {
    pub fn new(words: Vec<Word>) -> Result<Self, SampleError> {
        if words.is_empty() {
            return Err(SampleError::EmptyLanguage);
        }
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != words.len() {
            return Err(SampleError::Failed("list sampler words must be distinct".into()));
        }
        Ok(ListSampler { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

impl Sampler for ListSampler {
    fn draw(&self, rng: &mut dyn RngCore) -> Result<Word, SampleError> {
        let i: usize = uniform_below(&BigUint::from(self.words.len()), rng)
            .try_into()
            .unwrap();
        Ok(self.words[i].clone())
    }

    fn kind(&self) -> SamplerKind {
        SamplerKind::List
    }

    fn support_size(&self) -> CountValue {
        CountValue::finite(self.words.len() as u64)
    }

    fn exact_prob(&self, word: &[Symbol]) -> Option<BigRational> {
        Some(if self.words.iter().any(|w| w == word) {
            reciprocal(&BigUint::from(self.words.len()))
        } else {
            BigRational::zero()
        })
    }

    fn support(&self, limit: usize) -> Option<Vec<Word>> {
        (self.words.len() <= limit).then(|| self.words.clone())
    }

    fn max_prob_bound(&self) -> BigRational {
        reciprocal(&BigUint::from(self.words.len()))
    }
}

/// Uniform sampler over a finite, non-empty DFA language.
pub fn uniform_sampler(dfa: &Dfa) -> Result<UniformSampler, SampleError> {
    UniformSampler::new(dfa)
}

/// Uniform over `count` distinct pumped words of an infinite language.
pub fn pump_sampler<A: AsNfa + ?Sized>(automaton: &A, count: usize) -> Result<PumpSampler, SampleError> {
    PumpSampler::new(automaton, count)
}

/// Like [`pump_sampler`], with every word longer than `min_len`.
pub fn pump_sampler_longer_than<A: AsNfa + ?Sized>(
    automaton: &A,
    count: usize,
    min_len: usize,
) -> Result<PumpSampler, SampleError> {
    PumpSampler::longer_than(automaton, count, Some(min_len))
}
