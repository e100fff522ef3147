use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use crate::cnf::CnfFormula;
use crate::dimacs::{parse_solver_output, write_dimacs};
use crate::solver::{SolveOutcome, SolverError, SolverOracle};

/// A solver executable that takes a DIMACS file path as its last argument and
/// answers with `s` / `v` lines on stdout.
#[derive(Clone, Debug)]
pub struct ExternalSolver {
    pub program: PathBuf,
    pub args: Vec<String>,
}

impl ExternalSolver {
    pub fn new(program: impl Into<PathBuf>) -> Self {
        ExternalSolver {
            program: program.into(),
            args: Vec::new(),
        }
    }
}

impl SolverOracle for ExternalSolver {
    fn backend_id(&self) -> &str {
        "external"
    }

    fn query(&mut self, cnf: &CnfFormula) -> Result<SolveOutcome, SolverError> {
        let mut file = tempfile::Builder::new().suffix(".cnf").tempfile()?;
        write_dimacs(cnf, &mut file)?;
        file.flush()?;
        let output = Command::new(&self.program)
            .args(&self.args)
            .arg(file.path())
            .output()
            .map_err(|e| SolverError::Backend(format!("{}: {e}", self.program.display())))?;
        let stdout = String::from_utf8_lossy(&output.stdout);
        match parse_solver_output(&stdout, cnf.num_vars()).map_err(SolverError::Backend)? {
            Some(outcome) => Ok(outcome),
            None if output.status.success() || output.status.code().is_some() => {
                Ok(SolveOutcome::ResourceLimit)
            }
            None => Err(SolverError::Backend(format!(
                "{} terminated by signal",
                self.program.display()
            ))),
        }
    }

    fn cross_check_unsat(&self) -> bool {
        true
    }
}
