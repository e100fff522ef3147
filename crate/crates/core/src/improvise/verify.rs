use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use super::improviser::Improviser;
use super::instance::CIInstance;
use crate::alphabet::Symbol;
use crate::error::SampleError;
use crate::rational::to_f64;

/// Ground truth an improviser is audited against.
pub trait Audit {
    fn in_improvisations(&self, word: &[Symbol]) -> bool;
    fn admissible(&self, word: &[Symbol]) -> bool;
}

impl Audit for CIInstance {
    fn in_improvisations(&self, word: &[Symbol]) -> bool {
        self.improv.accepts(word)
    }

    fn admissible(&self, word: &[Symbol]) -> bool {
        self.improv.accepts(word) && self.admiss.admits(word)
    }
}

/// Largest support enumerated for the analytic part of an audit.
pub const ANALYTIC_SUPPORT_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub epsilon: BigRational,
    pub rho: BigRational,
    /// Largest word probability; exact when `max_prob_exact`.
    pub max_prob: BigRational,
    pub max_prob_exact: bool,
    /// Σ p(w)·[w admissible] over the explicit support, when known.
    pub analytic_admissible_mass: Option<BigRational>,
    pub support_violations: usize,
    pub draws: usize,
    pub admissible_draws: usize,
    pub membership_violations: usize,
}

impl VerifyReport {
    pub fn empirical_admissible(&self) -> f64 {
        self.admissible_draws as f64 / self.draws as f64
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.admissible_draws, self.draws, 1.96)
    }

    pub fn rho_ok(&self) -> bool {
        self.max_prob <= self.rho
    }

    /// Admissible mass check: analytic when the support is known, otherwise
    /// the upper end of the Wilson interval must reach 1 − ε.
    pub fn epsilon_ok(&self) -> bool {
        let need = BigRational::one() - &self.epsilon;
        match &self.analytic_admissible_mass {
            Some(mass) => *mass >= need,
            None => self.wilson().1 >= to_f64(&need),
        }
    }

    pub fn passed(&self) -> bool {
        self.rho_ok()
            && self.epsilon_ok()
            && self.membership_violations == 0
            && self.support_violations == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.wilson();
        writeln!(
            f,
            "max_prob={}{} rho={} ok={}",
            if self.max_prob_exact { "" } else { "<=" },
            self.max_prob,
            self.rho,
            self.rho_ok()
        )?;
        match &self.analytic_admissible_mass {
            Some(m) => writeln!(f, "admissible_mass={m} required={}", BigRational::one() - &self.epsilon)?,
            None => writeln!(f, "admissible_mass=unknown required={}", BigRational::one() - &self.epsilon)?,
        }
        writeln!(
            f,
            "empirical_admissible={:.4} wilson95=[{lo:.4}, {hi:.4}] draws={}",
            self.empirical_admissible(),
            self.draws
        )?;
        writeln!(
            f,
            "membership_violations={} support_violations={}",
            self.membership_violations, self.support_violations
        )?;
        write!(f, "verdict={}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * ((p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()) / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Checks the three improviser conditions: support inside 𝓘, no word above
/// ρ, admissible mass at least 1 − ε. The analytic part uses exact
/// distribution metadata when available; `draws` samples add an empirical
/// admissible fraction and membership check.
pub fn verify_improviser(
    imp: &Improviser,
    audit: &dyn Audit,
    epsilon: &BigRational,
    rho: &BigRational,
    draws: usize,
    rng: &mut dyn RngCore,
) -> Result<VerifyReport, SampleError> {
    if draws == 0 {
        return Err(SampleError::ZeroCount);
    }
    let (max_prob, max_prob_exact) = imp.max_prob(ANALYTIC_SUPPORT_LIMIT);
    let mut support_violations = 0;
    let analytic_admissible_mass = imp.distribution(ANALYTIC_SUPPORT_LIMIT).map(|dist| {
        let mut mass = BigRational::zero();
        for (w, p) in &dist {
            if !audit.in_improvisations(w) {
                support_violations += 1;
            }
            if audit.admissible(w) {
                mass += p;
            }
        }
        mass
    });
    let mut admissible_draws = 0;
    let mut membership_violations = 0;
    for _ in 0..draws {
        let w = imp.draw(rng)?;
        if !audit.in_improvisations(&w) {
            membership_violations += 1;
        }
        if audit.admissible(&w) {
            admissible_draws += 1;
        }
    }
    Ok(VerifyReport {
        epsilon: epsilon.clone(),
        rho: rho.clone(),
        max_prob,
        max_prob_exact,
        analytic_admissible_mass,
        support_violations,
        draws,
        admissible_draws,
        membership_violations,
    })
}
