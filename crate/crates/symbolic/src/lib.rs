//! Symbolic automata whose states and inputs are bit vectors and whose
//! initial, accepting and transition relations are propositional formulas.
//! Languages are counted and sampled through SAT queries on bounded
//! unrollings, which is enough to run the improvisation scheme without ever
//! building the automaton explicitly.

pub mod automaton;
pub mod count;
pub mod diameter;
pub mod error;
pub mod expr;
pub mod json;
pub mod sample;
pub mod scheme;
pub mod unroll;

use improv_core::Symbol;
use improv_sat::{solve, SolveOutcome, SolverError, SolverOracle};

pub use automaton::{encode_dfa, encode_nfa, SymbolicAutomaton};
pub use count::{approx_count, pivot, repetitions, CountEstimate};
pub use diameter::{cycle_witness, diameter, symbolic_is_infinite, DiameterMethod, DiameterResult};
pub use error::SymbolicError;
pub use json::{symbolic_from_str, symbolic_from_value, symbolic_to_string, SymbolicJson};
pub use sample::{symbolic_pump_sampler, AlmostUniformSampler};
pub use scheme::{synthesize_symbolic, SymbolicOptions, SymbolicSynthesis};
pub use unroll::{unroll, Unrolled};

/// Membership by one satisfiability query.
pub fn accepts(
    sa: &SymbolicAutomaton,
    oracle: &mut dyn SolverOracle,
    word: &[Symbol],
) -> Result<bool, SymbolicError> {
    let Some(cnf) = unroll::membership_formula(sa, word) else {
        return Ok(false);
    };
    match solve(oracle, &cnf)? {
        SolveOutcome::Sat(_) => Ok(true),
        SolveOutcome::Unsat => Ok(false),
        SolveOutcome::ResourceLimit => Err(SolverError::ResourceLimit.into()),
    }
}
