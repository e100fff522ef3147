use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cdcl::InternalSolver;
use crate::cnf::{CnfFormula, Model};
use crate::external::ExternalSolver;

/// Answer of a single satisfiability query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Sat(Model),
    Unsat,
    /// The backend gave up; this is never to be read as unsatisfiable.
    ResourceLimit,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solver resource limit reached")]
    ResourceLimit,
    #[error("solver backend failure: {0}")]
    Backend(String),
    #[error("backend `{backend}` returned a model falsifying clause {clause}")]
    InvalidModel { backend: String, clause: usize },
    #[error("backend `{0}` answered unsat but the internal solver found a model")]
    UnsoundUnsat(String),
    #[error("solver i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// An NP oracle: decides clause sets and produces models.
pub trait SolverOracle {
    fn backend_id(&self) -> &str;

    /// Raw query. Callers should prefer [`solve`], which validates answers.
    fn query(&mut self, cnf: &CnfFormula) -> Result<SolveOutcome, SolverError>;

    /// Whether unsat answers should be double-checked on small instances.
    fn cross_check_unsat(&self) -> bool {
        false
    }

    /// Distinct projected models of `cnf`, at most `cap` of them.
    ///
    /// The default is the blocking-clause loop over [`solve`]; backends with
    /// incremental support override it.
    fn enumerate_projected(
        &mut self,
        cnf: &CnfFormula,
        cap: usize,
    ) -> Result<Vec<Vec<bool>>, SolverError> {
        let mut working = cnf.clone();
        let mut found = Vec::new();
        while found.len() < cap {
            match solve(self, &working)? {
                SolveOutcome::Sat(model) => {
                    let projected = working.project(&model);
                    if working.projection().is_empty() {
                        found.push(projected);
                        break;
                    }
                    working.add_clause(working.blocking_clause(&projected));
                    found.push(projected);
                }
                SolveOutcome::Unsat => break,
                SolveOutcome::ResourceLimit => return Err(SolverError::ResourceLimit),
            }
        }
        Ok(found)
    }
}

/// Largest instance on which unsat answers are re-derived internally.
pub const CROSS_CHECK_MAX_VARS: u32 = 20;

/// Queries `oracle` and validates the answer.
///
/// Every returned model is checked against all clauses. In debug builds,
/// unsat answers from backends that ask for it are re-checked with the
/// internal solver on instances of at most [`CROSS_CHECK_MAX_VARS`] variables.
pub fn solve<O: SolverOracle + ?Sized>(
    oracle: &mut O,
    cnf: &CnfFormula,
) -> Result<SolveOutcome, SolverError> {
    let outcome = oracle.query(cnf)?;
    match &outcome {
        SolveOutcome::Sat(model) => {
            if let Some(clause) = cnf.first_violated(model) {
                return Err(SolverError::InvalidModel {
                    backend: oracle.backend_id().to_string(),
                    clause,
                });
            }
        }
        SolveOutcome::Unsat => {
            if cfg!(debug_assertions)
                && oracle.cross_check_unsat()
                && cnf.num_vars() <= CROSS_CHECK_MAX_VARS
            {
                if let SolveOutcome::Sat(_) = InternalSolver::default().query(cnf)? {
                    return Err(SolverError::UnsoundUnsat(oracle.backend_id().to_string()));
                }
            }
        }
        SolveOutcome::ResourceLimit => {}
    }
    Ok(outcome)
}

type OracleFactory = dyn Fn() -> Box<dyn SolverOracle + Send> + Send + Sync;

/// Configuration from which fresh oracles are built on demand.
#[derive(Clone)]
pub enum SolverBackend {
    Internal { conflict_limit: Option<u64> },
    External(ExternalSolver),
    /// Caller-supplied factory, e.g. for fault injection.
    Custom(Arc<OracleFactory>),
}

impl Default for SolverBackend {
    fn default() -> Self {
        SolverBackend::Internal {
            conflict_limit: None,
        }
    }
}

impl fmt::Debug for SolverBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverBackend::Internal { conflict_limit } => f
                .debug_struct("Internal")
                .field("conflict_limit", conflict_limit)
                .finish(),
            SolverBackend::External(ext) => f.debug_tuple("External").field(ext).finish(),
            SolverBackend::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl SolverBackend {
    pub fn build(&self) -> Box<dyn SolverOracle + Send> {
        match self {
            SolverBackend::Internal { conflict_limit } => Box::new(InternalSolver {
                conflict_limit: *conflict_limit,
            }),
            SolverBackend::External(ext) => Box::new(ext.clone()),
            SolverBackend::Custom(factory) => factory(),
        }
    }
}
