use std::collections::HashSet;

use crate::cnf::CnfFormula;
use crate::solver::{SolverError, SolverOracle};

/// Distinct projected models of `cnf`, at most `cap`. The list is complete
/// whenever it is shorter than `cap`.
pub fn enumerate_projected_models<O: SolverOracle + ?Sized>(
    oracle: &mut O,
    cnf: &CnfFormula,
    cap: usize,
) -> Result<Vec<Vec<bool>>, SolverError> {
    assert!(cap >= 1, "enumeration cap must be positive");
    let models = oracle.enumerate_projected(cnf, cap)?;
    let mut seen = HashSet::with_capacity(models.len());
    for m in &models {
        if !seen.insert(m) {
            return Err(SolverError::Backend(format!(
                "backend `{}` repeated a projected model",
                oracle.backend_id()
            )));
        }
    }
    Ok(models)
}
