//! Bounded unrolling of symbolic automata into clause form.

use improv_core::{Symbol, Word};
use improv_sat::{CnfFormula, Encoded, Encoder, Formula, Lit, Model, Var};

use crate::automaton::SymbolicAutomaton;

/// A path of variable length `ℓ ∈ [min_len, max_len]` inside a formula.
///
/// Steps `i < ℓ` follow the transition relation on a valid input; steps
/// `i ≥ ℓ` keep the state and zero the input, so the last state block is the
/// state reached after `ℓ` steps and each (word, path) pair has one model.
#[derive(Clone, Debug)]
pub struct Segment {
    pub states: Vec<Vec<Var>>,
    pub inputs: Vec<Vec<Var>>,
    /// One-hot: `selectors[j]` holds iff the length is `j`.
    pub selectors: Vec<Var>,
}

impl Segment {
    pub fn start(&self) -> &[Var] {
        &self.states[0]
    }

    pub fn end(&self) -> &[Var] {
        self.states.last().unwrap()
    }

    pub fn max_len(&self) -> usize {
        self.inputs.len()
    }

    pub fn length_in(&self, model: &Model) -> usize {
        self.selectors.iter().position(|v| model.value(*v)).unwrap_or(0)
    }

    pub fn word_in(&self, sa: &SymbolicAutomaton, model: &Model) -> Word {
        let len = self.length_in(model);
        self.inputs[..len]
            .iter()
            .map(|bits| decode_bits(sa, bits.iter().map(|v| model.value(*v))))
            .collect()
    }
}

fn decode_bits(sa: &SymbolicAutomaton, bits: impl Iterator<Item = bool>) -> Symbol {
    let code = bits.enumerate().fold(0usize, |acc, (j, b)| acc | (usize::from(b) << j));
    sa.decode(code).expect("active steps carry valid inputs")
}

/// `init` applied to a state block.
pub fn assert_init(enc: &mut Encoder, sa: &SymbolicAutomaton, state: &[Var]) {
    let f = sa.init().rename(&|v| state[v.index() as usize - 1]);
    enc.assert(&f, &|v: Var| v.pos());
}

/// `acc` applied to a state block.
pub fn assert_acc(enc: &mut Encoder, sa: &SymbolicAutomaton, state: &[Var]) {
    let f = sa.acc().rename(&|v| state[v.index() as usize - 1]);
    enc.assert(&f, &|v: Var| v.pos());
}

/// `delta(from, input, to)` with the input restricted to valid codes.
pub fn step_formula(sa: &SymbolicAutomaton, from: &[Var], input: &[Var], to: &[Var]) -> Formula {
    let n = sa.state_bits();
    let m = sa.input_bits();
    let rename = |v: Var| {
        let i = v.index() as usize - 1;
        if i < n {
            from[i]
        } else if i < n + m {
            input[i - n]
        } else {
            to[i - n - m]
        }
    };
    let mut parts = vec![sa.delta().rename(&rename)];
    for code in sa.invalid_codes() {
        parts.push(Formula::bits_equal(input, code as u64).negate());
    }
    Formula::and(parts)
}

/// Adds a segment starting at `start` (fresh block when `None`).
pub fn add_segment(
    cnf: &mut CnfFormula,
    sa: &SymbolicAutomaton,
    start: Option<Vec<Var>>,
    min_len: usize,
    max_len: usize,
) -> Segment {
    assert!(min_len <= max_len);
    let n = sa.state_bits();
    let m = sa.input_bits();
    let first = start.unwrap_or_else(|| cnf.fresh_vars(n));
    let mut states = vec![first];
    let mut inputs = Vec::with_capacity(max_len);
    for _ in 0..max_len {
        inputs.push(cnf.fresh_vars(m));
        states.push(cnf.fresh_vars(n));
    }
    let selectors = cnf.fresh_vars(max_len + 1);
    cnf.add_clause(selectors.iter().map(|v| v.pos()));
    for i in 0..selectors.len() {
        for j in i + 1..selectors.len() {
            cnf.add_clause([selectors[i].neg(), selectors[j].neg()]);
        }
    }
    for sel in &selectors[..min_len] {
        cnf.add_clause([sel.neg()]);
    }
    // active[i] ⇔ length > i, built from the top down
    let mut active: Vec<Lit> = vec![selectors[max_len].pos(); max_len];
    if max_len > 0 {
        for i in (0..max_len - 1).rev() {
            let act = cnf.fresh_var().pos();
            let (above, sel) = (active[i + 1], selectors[i + 1].pos());
            cnf.add_clause([!act, above, sel]);
            cnf.add_clause([act, !above]);
            cnf.add_clause([act, !sel]);
            active[i] = act;
        }
    }
    let mut enc = Encoder::new(cnf);
    for i in 0..max_len {
        let step = step_formula(sa, &states[i], &inputs[i], &states[i + 1]);
        let act = active[i];
        let e = enc.encode(&step, &|v: Var| v.pos());
        enc.assert_clause(&[Encoded::Lit(!act), e]);
        for a in &inputs[i] {
            enc.cnf().add_clause([act, a.neg()]);
        }
        for (s, t) in states[i].iter().zip(&states[i + 1]) {
            enc.cnf().add_clause([act, s.neg(), t.pos()]);
            enc.cnf().add_clause([act, s.pos(), t.neg()]);
        }
    }
    Segment {
        states,
        inputs,
        selectors,
    }
}

/// Clause form whose projected models are the accepted words of length at
/// most `bound`, one model per word.
#[derive(Clone, Debug)]
pub struct Unrolled {
    pub cnf: CnfFormula,
    pub segment: Segment,
}

impl Unrolled {
    /// The word of a projected model (values in projection order).
    pub fn decode_projected(&self, sa: &SymbolicAutomaton, projected: &[bool]) -> Word {
        let m = sa.input_bits();
        let steps = self.segment.max_len();
        let sel = &projected[steps * m..];
        let len = sel.iter().position(|b| *b).unwrap_or(0);
        (0..len)
            .map(|i| decode_bits(sa, projected[i * m..(i + 1) * m].iter().copied()))
            .collect()
    }

    pub fn bound(&self) -> usize {
        self.segment.max_len()
    }
}

pub fn unroll(sa: &SymbolicAutomaton, bound: usize) -> Unrolled {
    let mut cnf = CnfFormula::new(0);
    let segment = add_segment(&mut cnf, sa, None, 0, bound);
    let mut enc = Encoder::new(&mut cnf);
    assert_init(&mut enc, sa, segment.start());
    assert_acc(&mut enc, sa, segment.end());
    let projection: Vec<Var> = segment
        .inputs
        .iter()
        .flatten()
        .chain(&segment.selectors)
        .copied()
        .collect();
    cnf.set_projection(projection);
    Unrolled { cnf, segment }
}

/// Clause form satisfiable iff `sa` accepts `word`.
pub fn membership_formula(sa: &SymbolicAutomaton, word: &[Symbol]) -> Option<CnfFormula> {
    let mut cnf = CnfFormula::new(0);
    let segment = add_segment(&mut cnf, sa, None, word.len(), word.len());
    for (bits, &s) in segment.inputs.iter().zip(word) {
        let code = sa.encode_symbol(s)?;
        for (j, v) in bits.iter().enumerate() {
            cnf.add_clause([v.lit(code >> j & 1 == 1)]);
        }
    }
    let mut enc = Encoder::new(&mut cnf);
    assert_init(&mut enc, sa, segment.start());
    assert_acc(&mut enc, sa, segment.end());
    Some(cnf)
}
