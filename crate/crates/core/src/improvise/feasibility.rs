use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ImproviseError;
use crate::count::CountValue;

/// Decision for an instance plus the numbers it was made from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub size_i: CountValue,
    pub size_a: CountValue,
    /// 1/ρ
    pub min_improvisations: BigRational,
    /// (1−ε)/ρ
    pub min_admissible: BigRational,
}

impl fmt::Display for FeasibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            if self.feasible { "feasible" } else { "infeasible" },
            self.size_i,
            self.size_a,
            self.min_improvisations,
            self.min_admissible
        )
    }
}

pub(crate) fn check_parameters(
    epsilon: &BigRational,
    rho: &BigRational,
) -> Result<(), ImproviseError> {
    if *epsilon < BigRational::zero() || *epsilon > BigRational::one() {
        return Err(ImproviseError::InvalidParameter(format!(
            "epsilon = {epsilon} is outside [0, 1]"
        )));
    }
    if *rho <= BigRational::zero() || *rho > BigRational::one() {
        return Err(ImproviseError::InvalidParameter(format!(
            "rho = {rho} is outside (0, 1]"
        )));
    }
    Ok(())
}

/// Feasible iff |I| ≥ 1/ρ and |A| ≥ (1−ε)/ρ.
pub fn feasibility(
    size_i: CountValue,
    size_a: CountValue,
    epsilon: &BigRational,
    rho: &BigRational,
) -> Result<FeasibilityVerdict, ImproviseError> {
    check_parameters(epsilon, rho)?;
    if size_a > size_i {
        return Err(ImproviseError::InconsistentCounts {
            size_i: size_i.to_string(),
            size_a: size_a.to_string(),
        });
    }
    let min_improvisations = rho.recip();
    let min_admissible = (BigRational::one() - epsilon) / rho;
    let feasible = size_i.at_least(&min_improvisations) && size_a.at_least(&min_admissible);
    Ok(FeasibilityVerdict {
        feasible,
        size_i,
        size_a,
        min_improvisations,
        min_admissible,
    })
}
