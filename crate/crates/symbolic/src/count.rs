//! Hash-based approximate counting of symbolic languages.

use improv_core::CountValue;
use improv_sat::{add_xor_constraints, enumerate_projected_models, random_xor, SolverOracle, XorConstraint};
use num_bigint::BigUint;
use rand::RngCore;

use crate::automaton::SymbolicAutomaton;
use crate::diameter::{symbolic_is_infinite, DiameterResult};
use crate::error::SymbolicError;
use crate::unroll::{unroll, Unrolled};

/// Cell-size threshold `⌈e²·(1 + 1/τ)²⌉`.
pub fn pivot(tau: f64) -> usize {
    let e2 = std::f64::consts::E * std::f64::consts::E;
    (e2 * (1.0 + 1.0 / tau).powi(2)).ceil() as usize
}

/// Number of independent repetitions `⌈35·ln(3/δ)⌉` whose median is taken.
pub fn repetitions(delta: f64) -> usize {
    (35.0 * (3.0 / delta).ln()).ceil() as usize
}

pub(crate) fn check_tau_delta(tau: f64, delta: f64) -> Result<(), SymbolicError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(SymbolicError::Parameter(format!("tolerance must be positive, got {tau}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(SymbolicError::Parameter(format!("confidence parameter must lie in (0,1), got {delta}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountEstimate {
    pub value: CountValue,
    /// True when the count came from complete enumeration or cycle detection.
    pub exact: bool,
    /// Per-repetition estimates (empty when exact).
    pub samples: Vec<BigUint>,
}

/// Nested hash cells: the cell for `i` hashes is cut by `xors[..i]`.
pub(crate) struct HashCells<'a> {
    pub unrolled: &'a Unrolled,
    pub xors: Vec<XorConstraint>,
}

impl<'a> HashCells<'a> {
    pub fn draw(unrolled: &'a Unrolled, rng: &mut dyn RngCore) -> Self {
        let vars = unrolled.cnf.projection();
        let xors = (0..vars.len()).map(|_| random_xor(vars, rng)).collect();
        HashCells { unrolled, xors }
    }

    pub fn cell(
        &self,
        oracle: &mut dyn SolverOracle,
        hashes: usize,
        cap: usize,
    ) -> Result<Vec<Vec<bool>>, SymbolicError> {
        let cnf = add_xor_constraints(&self.unrolled.cnf, &self.xors[..hashes]);
        Ok(enumerate_projected_models(oracle, &cnf, cap)?)
    }
}

/// One repetition: the fewest hashes leaving at most `pivot` models.
///
/// Cells shrink as hashes are added, so the search may start from `hint`
/// (the previous repetition's answer) and walk in either direction; the
/// result equals a scan from one hash upwards.
fn one_estimate(
    unrolled: &Unrolled,
    oracle: &mut dyn SolverOracle,
    pivot: usize,
    hint: usize,
    rng: &mut dyn RngCore,
) -> Result<(BigUint, usize), SymbolicError> {
    let cells = HashCells::draw(unrolled, rng);
    let top = cells.xors.len();
    let mut i = hint.clamp(1, top.max(1));
    let mut size = cells.cell(oracle, i, pivot + 1)?.len();
    if size > pivot {
        while size > pivot && i < top {
            i += 1;
            size = cells.cell(oracle, i, pivot + 1)?.len();
        }
    } else {
        while i > 1 {
            let below = cells.cell(oracle, i - 1, pivot + 1)?.len();
            if below > pivot {
                break;
            }
            i -= 1;
            size = below;
        }
    }
    Ok((BigUint::from(size) << i, i))
}

pub(crate) fn median(mut values: Vec<BigUint>) -> BigUint {
    values.sort();
    values.swap_remove(values.len() / 2)
}

/// Number of accepted words of a finite language, within a factor `1 + τ`
/// with probability at least `1 − δ`; `inf` when a pumpable cycle exists.
///
/// Languages of at most `pivot(τ)` words are counted exactly.
pub fn approx_count(
    sa: &SymbolicAutomaton,
    oracle: &mut dyn SolverOracle,
    tau: f64,
    delta: f64,
    bounds: &DiameterResult,
    rng: &mut dyn RngCore,
) -> Result<CountEstimate, SymbolicError> {
    check_tau_delta(tau, delta)?;
    if symbolic_is_infinite(sa, oracle, bounds)? {
        return Ok(CountEstimate {
            value: CountValue::Infinite,
            exact: true,
            samples: Vec::new(),
        });
    }
    let unrolled = unroll(sa, bounds.diameter);
    approx_count_unrolled(&unrolled, oracle, tau, delta, rng)
}

pub(crate) fn approx_count_unrolled(
    unrolled: &Unrolled,
    oracle: &mut dyn SolverOracle,
    tau: f64,
    delta: f64,
    rng: &mut dyn RngCore,
) -> Result<CountEstimate, SymbolicError> {
    let pivot = pivot(tau);
    let all = enumerate_projected_models(oracle, &unrolled.cnf, pivot + 1)?;
    if all.len() <= pivot {
        return Ok(CountEstimate {
            value: CountValue::Finite(BigUint::from(all.len())),
            exact: true,
            samples: Vec::new(),
        });
    }
    let mut samples = Vec::new();
    let mut hint = 1;
    for _ in 0..repetitions(delta) {
        let (estimate, hashes) = one_estimate(unrolled, oracle, pivot, hint, rng)?;
        samples.push(estimate);
        hint = hashes;
    }
    Ok(CountEstimate {
        value: CountValue::Finite(median(samples.clone())),
        exact: false,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        // e² · 9 ≈ 66.5
        assert_eq!(pivot(0.5), 67);
        // e² · (8/7)² ≈ 9.65
        assert_eq!(pivot(7.0), 10);
        // 35 · ln 30 ≈ 119.04
        assert_eq!(repetitions(0.1), 120);
    }

    #[test]
    fn median_of_odd_and_even() {
        let v = |xs: &[u32]| xs.iter().map(|x| BigUint::from(*x)).collect::<Vec<_>>();
        assert_eq!(median(v(&[5, 1, 3])), BigUint::from(3u8));
        assert_eq!(median(v(&[4, 1, 3, 2])), BigUint::from(3u8));
    }

    #[test]
    fn parameters_checked() {
        assert!(check_tau_delta(0.0, 0.5).is_err());
        assert!(check_tau_delta(1.0, 1.0).is_err());
        assert!(check_tau_delta(1.0, 0.0).is_err());
        assert!(check_tau_delta(0.5, 0.1).is_ok());
    }
}
