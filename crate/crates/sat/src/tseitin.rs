//! Equisatisfiable clause-form conversion with definition variables.
//!
//! Every gate gets a full equivalence definition, so each model of the source
//! formula extends to exactly one model of the clauses. Projected counts over
//! the original variables are therefore preserved exactly.

use crate::cnf::{CnfFormula, Lit, Var};
use crate::formula::Formula;

/// Result of encoding a subformula: a constant or a literal equivalent to it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Encoded {
    Const(bool),
    Lit(Lit),
}

impl Encoded {
    fn negate(self) -> Encoded {
        match self {
            Encoded::Const(b) => Encoded::Const(!b),
            Encoded::Lit(l) => Encoded::Lit(!l),
        }
    }
}

/// Appends gate definitions for formulas to an existing clause set.
pub struct Encoder<'a> {
    cnf: &'a mut CnfFormula,
}

impl<'a> Encoder<'a> {
    pub fn new(cnf: &'a mut CnfFormula) -> Self {
        Encoder { cnf }
    }

    pub fn cnf(&mut self) -> &mut CnfFormula {
        self.cnf
    }

    /// Encodes `formula`, translating its variables through `map`.
    pub fn encode(&mut self, formula: &Formula, map: &dyn Fn(Var) -> Lit) -> Encoded {
        match formula {
            Formula::Const(b) => Encoded::Const(*b),
            Formula::Var(v) => Encoded::Lit(map(*v)),
            Formula::Not(inner) => self.encode(inner, map).negate(),
            Formula::And(parts) => {
                let mut lits = Vec::with_capacity(parts.len());
                for part in parts {
                    match self.encode(part, map) {
                        Encoded::Const(false) => return Encoded::Const(false),
                        Encoded::Const(true) => {}
                        Encoded::Lit(l) => lits.push(l),
                    }
                }
                self.and_gate(lits)
            }
            Formula::Or(parts) => {
                let mut lits = Vec::with_capacity(parts.len());
                for part in parts {
                    match self.encode(part, map) {
                        Encoded::Const(true) => return Encoded::Const(true),
                        Encoded::Const(false) => {}
                        Encoded::Lit(l) => lits.push(!l),
                    }
                }
                // a ∨ b = ¬(¬a ∧ ¬b)
                self.and_gate(lits).negate()
            }
            Formula::Xor(a, b) => {
                let a = self.encode(a, map);
                let b = self.encode(b, map);
                self.xor_gate(a, b)
            }
            Formula::Implies(a, b) => {
                let a = self.encode(a, map);
                let b = self.encode(b, map);
                self.or2(a.negate(), b)
            }
            Formula::Iff(a, b) => {
                let a = self.encode(a, map);
                let b = self.encode(b, map);
                self.xor_gate(a, b).negate()
            }
        }
    }

    /// Adds clauses forcing `formula` to hold.
    pub fn assert(&mut self, formula: &Formula, map: &dyn Fn(Var) -> Lit) {
        match formula {
            Formula::And(parts) => {
                for part in parts {
                    self.assert(part, map);
                }
            }
            Formula::Or(parts) => {
                let mut clause = Vec::with_capacity(parts.len());
                for part in parts {
                    match self.encode(part, map) {
                        Encoded::Const(true) => return,
                        Encoded::Const(false) => {}
                        Encoded::Lit(l) => clause.push(l),
                    }
                }
                if clause.is_empty() {
                    self.cnf.add_contradiction();
                } else {
                    self.cnf.add_clause(clause);
                }
            }
            Formula::Implies(a, b) => {
                let a = self.encode(a, map);
                let b = self.encode(b, map);
                self.assert_clause(&[a.negate(), b]);
            }
            other => {
                let e = self.encode(other, map);
                self.assert_clause(&[e]);
            }
        }
    }

    /// Adds the disjunction of already-encoded parts as a clause.
    pub fn assert_clause(&mut self, parts: &[Encoded]) {
        let mut clause = Vec::with_capacity(parts.len());
        for part in parts {
            match part {
                Encoded::Const(true) => return,
                Encoded::Const(false) => {}
                Encoded::Lit(l) => clause.push(*l),
            }
        }
        if clause.is_empty() {
            self.cnf.add_contradiction();
        } else {
            self.cnf.add_clause(clause);
        }
    }

    fn and_gate(&mut self, lits: Vec<Lit>) -> Encoded {
        match lits.len() {
            0 => Encoded::Const(true),
            1 => Encoded::Lit(lits[0]),
            _ => {
                let t = self.cnf.fresh_var().pos();
                for &l in &lits {
                    self.cnf.add_clause([!t, l]);
                }
                let mut long: Vec<Lit> = lits.iter().map(|&l| !l).collect();
                long.push(t);
                self.cnf.add_clause(long);
                Encoded::Lit(t)
            }
        }
    }

    fn or2(&mut self, a: Encoded, b: Encoded) -> Encoded {
        match (a, b) {
            (Encoded::Const(true), _) | (_, Encoded::Const(true)) => Encoded::Const(true),
            (Encoded::Const(false), other) | (other, Encoded::Const(false)) => other,
            (Encoded::Lit(x), Encoded::Lit(y)) => self.and_gate(vec![!x, !y]).negate(),
        }
    }

    fn xor_gate(&mut self, a: Encoded, b: Encoded) -> Encoded {
        match (a, b) {
            (Encoded::Const(x), Encoded::Const(y)) => Encoded::Const(x != y),
            (Encoded::Const(c), other) | (other, Encoded::Const(c)) => {
                if c {
                    other.negate()
                } else {
                    other
                }
            }
            (Encoded::Lit(x), Encoded::Lit(y)) => Encoded::Lit(xor_definition(self.cnf, x, y)),
        }
    }
}

/// Fresh literal `t` with clauses for `t ⇔ x ⊕ y`.
pub(crate) fn xor_definition(cnf: &mut CnfFormula, x: Lit, y: Lit) -> Lit {
    let t = cnf.fresh_var().pos();
    cnf.add_clause([!t, x, y]);
    cnf.add_clause([!t, !x, !y]);
    cnf.add_clause([t, !x, y]);
    cnf.add_clause([t, x, !y]);
    t
}

/// Converts `formula` to clause form; `projection` becomes the projection set.
///
/// Variables keep their numbers, so models of the result restricted to the
/// original variables are exactly the models of `formula`.
pub fn to_cnf(formula: &Formula, projection: &[Var]) -> CnfFormula {
    let top = projection
        .iter()
        .map(|v| v.index())
        .max()
        .unwrap_or(0)
        .max(formula.max_var());
    let mut cnf = CnfFormula::new(top);
    Encoder::new(&mut cnf).assert(formula, &|v| v.pos());
    cnf.set_projection(projection.iter().copied());
    cnf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Model;

    fn count_projected(cnf: &CnfFormula) -> usize {
        // brute force over every assignment of all variables
        let n = cnf.num_vars() as usize;
        let mut seen = std::collections::BTreeSet::new();
        for bits in 0u64..(1 << n) {
            let model = Model::new((0..n).map(|i| bits >> i & 1 == 1).collect());
            if cnf.is_satisfied_by(&model) {
                seen.insert(cnf.project(&model));
            }
        }
        seen.len()
    }

    #[test]
    fn contradiction_has_no_models() {
        let x = Var::new(1);
        let f = Formula::and([Formula::var(x), Formula::lit(x, false)]);
        let cnf = to_cnf(&f, &[x]);
        assert_eq!(count_projected(&cnf), 0);
    }

    #[test]
    fn xor_has_two_projected_models() {
        let (x, y) = (Var::new(1), Var::new(2));
        let cnf = to_cnf(&Formula::xor(Formula::var(x), Formula::var(y)), &[x, y]);
        assert_eq!(count_projected(&cnf), 2);
    }

    #[test]
    fn constants_fold() {
        let x = Var::new(1);
        let cnf = to_cnf(&Formula::Const(false), &[x]);
        assert!(cnf.is_contradiction());
        let cnf = to_cnf(&Formula::or([Formula::Const(true), Formula::var(x)]), &[x]);
        assert!(cnf.clauses().is_empty());
        assert_eq!(count_projected(&cnf), 2);
    }
}
