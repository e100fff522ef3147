//! Propositional substrate: formula trees, clause form with projection sets,
//! parity (XOR) constraints, an internal CDCL solver, DIMACS interchange and an
//! external-solver backend, all behind one [`SolverOracle`] interface.

pub mod cdcl;
pub mod cnf;
pub mod dimacs;
pub mod enumerate;
pub mod external;
pub mod formula;
pub mod solver;
pub mod tseitin;
pub mod xor;

pub use cdcl::InternalSolver;
pub use cnf::{CnfFormula, Lit, Model, Var};
pub use enumerate::enumerate_projected_models;
pub use external::ExternalSolver;
pub use formula::Formula;
pub use solver::{solve, SolveOutcome, SolverBackend, SolverError, SolverOracle};
pub use tseitin::{to_cnf, Encoded, Encoder};
pub use xor::{add_xor_constraints, random_xor, XorConstraint};
