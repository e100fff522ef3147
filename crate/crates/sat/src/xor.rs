//! Parity constraints compiled to clauses.
//!
//! The random family (each projection variable included independently with
//! probability 1/2, uniform parity bit) is the pairwise-independent hash used
//! by hashing-based counters and generators.

use rand::{Rng, RngCore};

use crate::cnf::{CnfFormula, Var};
use crate::tseitin::xor_definition;

/// `vars[0] ⊕ … ⊕ vars[k-1] = parity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XorConstraint {
    pub vars: Vec<Var>,
    pub parity: bool,
}

impl XorConstraint {
    pub fn new(vars: Vec<Var>, parity: bool) -> Self {
        XorConstraint { vars, parity }
    }

    pub fn holds(&self, value: &dyn Fn(Var) -> bool) -> bool {
        self.vars.iter().filter(|v| value(**v)).count() % 2 == usize::from(self.parity)
    }
}

/// Draws a constraint from the random hash family over `vars`.
pub fn random_xor(vars: &[Var], rng: &mut dyn RngCore) -> XorConstraint {
    let picked = vars.iter().copied().filter(|_| rng.random::<bool>()).collect();
    XorConstraint::new(picked, rng.random::<bool>())
}

/// Returns a copy of `cnf` restricted to models satisfying every constraint.
///
/// Each constraint becomes a chain of 3-literal definitions over fresh
/// variables, so projected model sets shrink exactly to the satisfying subset.
pub fn add_xor_constraints(cnf: &CnfFormula, constraints: &[XorConstraint]) -> CnfFormula {
    let mut out = cnf.clone();
    for constraint in constraints {
        encode_xor(&mut out, constraint);
    }
    out
}

fn encode_xor(cnf: &mut CnfFormula, constraint: &XorConstraint) {
    // x ⊕ x cancels
    let mut vars = constraint.vars.clone();
    vars.sort_unstable();
    let mut reduced: Vec<Var> = Vec::with_capacity(vars.len());
    for v in vars {
        if reduced.last() == Some(&v) {
            reduced.pop();
        } else {
            reduced.push(v);
        }
    }
    for v in &reduced {
        cnf.reserve_var(*v);
    }
    let Some((&first, rest)) = reduced.split_first() else {
        if constraint.parity {
            cnf.add_contradiction();
        }
        return;
    };
    let mut acc = first.pos();
    for v in rest {
        acc = xor_definition(cnf, acc, v.pos());
    }
    cnf.add_clause([if constraint.parity { acc } else { !acc }]);
}
