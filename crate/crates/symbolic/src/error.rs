use improv_core::improvise::ImproviseError;
use improv_core::{AutomatonError, SampleError};
use improv_sat::SolverError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymbolicError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Improvise(#[from] ImproviseError),
    #[error("no simple path ends the search within {cap} steps; supply a diameter bound")]
    DiameterCap { cap: usize },
    #[error("invalid symbolic automaton: {0}")]
    Invalid(String),
    #[error("bad formula `{text}`: {message}")]
    Formula { text: String, message: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl SymbolicError {
    /// Whether the failure came from an exhausted budget rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            SymbolicError::Solver(SolverError::ResourceLimit) | SymbolicError::DiameterCap { .. }
        )
    }
}

pub(crate) fn sample_failure(err: SymbolicError) -> SampleError {
    match err {
        SymbolicError::Sample(e) => e,
        other => SampleError::Failed(other.to_string()),
    }
}
