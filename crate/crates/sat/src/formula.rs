use std::collections::BTreeSet;
use std::fmt;

use crate::cnf::Var;

/// Propositional formula tree over numbered variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Const(bool),
    Var(Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(var: Var) -> Self {
        Formula::Var(var)
    }

    /// Literal for `var` with the given polarity.
    pub fn lit(var: Var, positive: bool) -> Self {
        if positive {
            Formula::Var(var)
        } else {
            Formula::Not(Box::new(Formula::Var(var)))
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Formula::Const(b) => Formula::Const(!b),
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn and<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        Formula::And(parts.into_iter().collect())
    }

    pub fn or<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        Formula::Or(parts.into_iter().collect())
    }

    pub fn xor(a: Formula, b: Formula) -> Self {
        Formula::Xor(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Conjunction fixing `vars` to the bits of `value` (bit i goes to `vars[i]`).
    pub fn bits_equal(vars: &[Var], value: u64) -> Self {
        Formula::And(
            vars.iter()
                .enumerate()
                .map(|(i, v)| Formula::lit(*v, value >> i & 1 == 1))
                .collect(),
        )
    }

    pub fn eval(&self, assignment: &dyn Fn(Var) -> bool) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Var(v) => assignment(*v),
            Formula::Not(f) => !f.eval(assignment),
            Formula::And(fs) => fs.iter().all(|f| f.eval(assignment)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(assignment)),
            Formula::Xor(a, b) => a.eval(assignment) != b.eval(assignment),
            Formula::Implies(a, b) => !a.eval(assignment) || b.eval(assignment),
            Formula::Iff(a, b) => a.eval(assignment) == b.eval(assignment),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(v) => {
                out.insert(*v);
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Formula::Xor(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Largest variable index mentioned, or 0 for a closed formula.
    pub fn max_var(&self) -> u32 {
        self.vars().last().map_or(0, |v| v.index())
    }

    pub fn rename(&self, map: &dyn Fn(Var) -> Var) -> Formula {
        match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Var(v) => Formula::Var(map(*v)),
            Formula::Not(f) => Formula::Not(Box::new(f.rename(map))),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rename(map)).collect()),
            Formula::Xor(a, b) => Formula::xor(a.rename(map), b.rename(map)),
            Formula::Implies(a, b) => Formula::implies(a.rename(map), b.rename(map)),
            Formula::Iff(a, b) => Formula::iff(a.rename(map), b.rename(map)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(b) => write!(f, "{b}"),
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Not(inner) => write!(f, "(not {inner})"),
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self, Formula::And(_)) { "and" } else { "or" };
                write!(f, "({op}")?;
                for part in fs {
                    write!(f, " {part}")?;
                }
                write!(f, ")")
            }
            Formula::Xor(a, b) => write!(f, "(xor {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(iff {a} {b})"),
        }
    }
}
