use improv_core::improvise::ImproviseError;
use improv_core::rational::RationalParseError;
use improv_core::{AutomatonError, SampleError};
use improv_sat::SolverError;
use improv_symbolic::SymbolicError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed instance: {0}")]
    Instance(String),
    #[error(transparent)]
    Rational(#[from] RationalParseError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Improvise(#[from] ImproviseError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("instance is infeasible")]
    Infeasible,
    #[error("scheme not applicable: {0}")]
    NotApplicable(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 usage or parse error, 2 infeasible, 3 resource limit.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible => 2,
            CliError::Resource(_) | CliError::Automaton(AutomatonError::DeterminizeCap { .. }) => 3,
            CliError::Symbolic(e) if e.is_resource() => 3,
            CliError::Symbolic(SymbolicError::Automaton(AutomatonError::DeterminizeCap { .. })) => 3,
            CliError::Symbolic(SymbolicError::Sample(SampleError::Failed(_))) => 3,
            CliError::Sample(SampleError::Failed(_)) => 3,
            _ => 1,
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Symbolic(e.into())
    }
}
