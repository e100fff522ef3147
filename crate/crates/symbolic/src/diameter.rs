//! Longest simple paths and accepting cycles, found by SAT queries.

use improv_core::PumpWitness;
use improv_sat::{solve, CnfFormula, Encoder, Formula, SolveOutcome, SolverError, SolverOracle, Var};

use crate::automaton::SymbolicAutomaton;
use crate::error::SymbolicError;
use crate::unroll::{add_segment, assert_acc, assert_init, step_formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiameterMethod {
    Exhausted,
    UserSupplied,
}

/// Path-length bounds used by counting and cycle search.
///
/// `diameter` is the longest simple accepting path; `reach` the longest
/// simple path from an initial state, accepting or not. Every word of a
/// finite language is at most `diameter` long, and every simple cycle
/// through a reachable state has at most `reach + 1` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterResult {
    pub diameter: usize,
    pub reach: usize,
    pub method: DiameterMethod,
    /// Whether some simple accepting path exists at all.
    pub nonempty: bool,
}

impl DiameterResult {
    /// A known upper bound; it is used for both path bounds.
    pub fn supplied(bound: usize) -> Self {
        DiameterResult {
            diameter: bound,
            reach: bound,
            method: DiameterMethod::UserSupplied,
            nonempty: true,
        }
    }
}

fn outcome(oracle: &mut dyn SolverOracle, cnf: &CnfFormula) -> Result<bool, SymbolicError> {
    match solve(oracle, cnf)? {
        SolveOutcome::Sat(_) => Ok(true),
        SolveOutcome::Unsat => Ok(false),
        SolveOutcome::ResourceLimit => Err(SolverError::ResourceLimit.into()),
    }
}

/// Clauses for a path of exactly `len` steps from an initial state through
/// pairwise distinct states, optionally ending in an accepting state.
pub fn simple_path_formula(sa: &SymbolicAutomaton, len: usize, accepting: bool) -> CnfFormula {
    let n = sa.state_bits();
    let m = sa.input_bits();
    let mut cnf = CnfFormula::new(0);
    let states: Vec<Vec<Var>> = (0..=len).map(|_| cnf.fresh_vars(n)).collect();
    let inputs: Vec<Vec<Var>> = (0..len).map(|_| cnf.fresh_vars(m)).collect();
    let mut enc = Encoder::new(&mut cnf);
    assert_init(&mut enc, sa, &states[0]);
    if accepting {
        assert_acc(&mut enc, sa, &states[len]);
    }
    for i in 0..len {
        enc.assert(&step_formula(sa, &states[i], &inputs[i], &states[i + 1]), &|v: Var| v.pos());
    }
    for i in 0..=len {
        for j in i + 1..=len {
            let differ = Formula::or(
                states[i]
                    .iter()
                    .zip(&states[j])
                    .map(|(a, b)| Formula::xor(Formula::var(*a), Formula::var(*b))),
            );
            enc.assert(&differ, &|v: Var| v.pos());
        }
    }
    cnf
}

/// Searches n = 0, 1, … for simple paths until none of length n exists.
pub fn diameter(
    sa: &SymbolicAutomaton,
    oracle: &mut dyn SolverOracle,
    cap: usize,
) -> Result<DiameterResult, SymbolicError> {
    assert!(cap >= 1, "diameter cap must be positive");
    let mut diameter = 0;
    let mut nonempty = false;
    let mut reach = 0;
    for len in 0.. {
        if len > cap {
            return Err(SymbolicError::DiameterCap { cap });
        }
        let accepting = outcome(oracle, &simple_path_formula(sa, len, true))?;
        let any = accepting || outcome(oracle, &simple_path_formula(sa, len, false))?;
        if !any {
            break;
        }
        reach = len;
        if accepting {
            diameter = len;
            nonempty = true;
        }
    }
    Ok(DiameterResult {
        diameter,
        reach,
        method: DiameterMethod::Exhausted,
        nonempty,
    })
}

/// Words x, y, z with x reaching a state s, y looping on s (|y| ≥ 1), z
/// leading from s to acceptance. Lengths: |x|, |z| ≤ diameter and
/// |y| ≤ reach + 1, which suffices whenever the language is infinite.
pub fn cycle_witness(
    sa: &SymbolicAutomaton,
    oracle: &mut dyn SolverOracle,
    bounds: &DiameterResult,
) -> Result<Option<PumpWitness>, SymbolicError> {
    let mut cnf = CnfFormula::new(0);
    let x = add_segment(&mut cnf, sa, None, 0, bounds.diameter);
    let y = add_segment(&mut cnf, sa, Some(x.end().to_vec()), 1, bounds.reach + 1);
    let z = add_segment(&mut cnf, sa, Some(x.end().to_vec()), 0, bounds.diameter);
    for (s, t) in x.end().iter().zip(y.end()) {
        cnf.add_clause([s.neg(), t.pos()]);
        cnf.add_clause([s.pos(), t.neg()]);
    }
    let mut enc = Encoder::new(&mut cnf);
    assert_init(&mut enc, sa, x.start());
    assert_acc(&mut enc, sa, z.end());
    match solve(oracle, &cnf)? {
        SolveOutcome::Sat(model) => Ok(Some(PumpWitness {
            x: x.word_in(sa, &model),
            y: y.word_in(sa, &model),
            z: z.word_in(sa, &model),
        })),
        SolveOutcome::Unsat => Ok(None),
        SolveOutcome::ResourceLimit => Err(SolverError::ResourceLimit.into()),
    }
}

pub fn symbolic_is_infinite(
    sa: &SymbolicAutomaton,
    oracle: &mut dyn SolverOracle,
    bounds: &DiameterResult,
) -> Result<bool, SymbolicError> {
    Ok(cycle_witness(sa, oracle, bounds)?.is_some())
}
