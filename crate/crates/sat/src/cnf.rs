use std::fmt;
use std::ops::Not;

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.0 as i32))
    }

    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A signed literal in DIMACS convention.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit(i32);

impl Lit {
    pub fn from_dimacs(value: i32) -> Self {
        assert!(value != 0, "0 is not a literal");
        Lit(value)
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Truth value of this literal under `model`.
    pub fn eval(self, model: &Model) -> bool {
        model.value(self.var()) == self.is_positive()
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

/// A total assignment to variables `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    /// Value of `var`; variables beyond the model's range read as false.
    pub fn value(&self, var: Var) -> bool {
        self.values
            .get(var.index() as usize - 1)
            .copied()
            .unwrap_or(false)
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

/// A formula in conjunctive normal form with a designated projection set.
///
/// The projection set scopes counting and enumeration: two models are the
/// same projected model when they agree on every projection variable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    projection: Vec<Var>,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
            projection: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn projection(&self) -> &[Var] {
        &self.projection
    }

    pub fn fresh_var(&mut self) -> Var {
        self.num_vars += 1;
        Var(self.num_vars)
    }

    /// Allocates `count` consecutive fresh variables.
    pub fn fresh_vars(&mut self, count: usize) -> Vec<Var> {
        (0..count).map(|_| self.fresh_var()).collect()
    }

    /// Grows the variable range so that `var` is in scope.
    pub fn reserve_var(&mut self, var: Var) {
        self.num_vars = self.num_vars.max(var.index());
    }

    /// Adds a clause. Panics if a literal is out of range.
    pub fn add_clause<I: IntoIterator<Item = Lit>>(&mut self, lits: I) {
        let clause: Vec<Lit> = lits.into_iter().collect();
        for lit in &clause {
            assert!(
                lit.var().index() <= self.num_vars,
                "literal {} outside variable range 1..={}",
                lit.to_dimacs(),
                self.num_vars
            );
        }
        self.clauses.push(clause);
    }

    /// Adds the empty clause, turning the formula into an explicit contradiction.
    pub fn add_contradiction(&mut self) {
        self.clauses.push(Vec::new());
    }

    pub fn is_contradiction(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    pub fn set_projection<I: IntoIterator<Item = Var>>(&mut self, vars: I) {
        let mut vars: Vec<Var> = vars.into_iter().collect();
        for v in &vars {
            self.reserve_var(*v);
        }
        vars.sort_unstable();
        vars.dedup();
        self.projection = vars;
    }

    /// Index of the first clause `model` falsifies, if any.
    pub fn first_violated(&self, model: &Model) -> Option<usize> {
        self.clauses
            .iter()
            .position(|clause| !clause.iter().any(|l| l.eval(model)))
    }

    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        self.first_violated(model).is_none()
    }

    /// Restriction of `model` to the projection set, in projection order.
    pub fn project(&self, model: &Model) -> Vec<bool> {
        self.projection.iter().map(|v| model.value(*v)).collect()
    }

    /// Clause excluding every model that agrees with `projected` on the projection set.
    pub fn blocking_clause(&self, projected: &[bool]) -> Vec<Lit> {
        debug_assert_eq!(projected.len(), self.projection.len());
        self.projection
            .iter()
            .zip(projected)
            .map(|(v, &b)| v.lit(!b))
            .collect()
    }
}
