//! Grid, schedule and threshold settings shared by the functionals and
//! estimators.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quadrature::{build_rule, AGrid, DiskRule, SupGrid};

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Rule for every `A^p` norm.
    pub rule: DiskRule,
    /// Probe grid for Bloch seminorms and sup norms.
    pub sup_grid: SupGrid,
    /// Grid of `a` for `sup_a α` and `sup_a β`.
    pub a_grid: AGrid,
    /// Coarser grid of `a` for the inequality audit, the `‖uC_φ g_a‖_B`
    /// boundary samples and the lower-bound test functions.
    pub audit_grid: AGrid,
    /// Grid of `a` for the level-set moments.
    pub level_grid: AGrid,
    /// Largest power `N` in `‖uφⁿ‖_B`.
    pub powers: usize,
    /// Trailing terms of the power sequence used as the limsup approximant.
    pub window: usize,
    /// Boundary levels `r_1 < … < r_K` for `limsup_{|φ(a)|→1}`.
    pub levels: Vec<f64>,
    /// Outer radii for the level-set moment limsup.
    pub level_radii: Vec<f64>,
    /// Thresholds `t` for the level-set moment limsup.
    pub thresholds: Vec<f64>,
    /// Parts above this are reported as diverged.
    pub divergence_threshold: f64,
    /// Compactness approximants below this count as zero.
    pub eps_compact: f64,
    /// Relative growth of the power-norm tail against `ln n` above which the
    /// sequence counts as unbounded.
    pub growth_slope: f64,
    /// Iterations of local search after an `a`-grid scan.
    pub a_refine_iters: usize,
    /// Seed for random test polynomials.
    pub seed: u64,
    /// Number of random test polynomials in the lower bound.
    pub random_polynomials: usize,
    /// Slack added to audit margins.
    pub tol: f64,
}

impl Config {
    /// Settings with the given quadrature shape and number of `a`-grid levels.
    pub fn new(radial: usize, angular: usize, sup_levels: usize) -> Result<Self> {
        Ok(Config {
            rule: build_rule(radial, angular, 2.0)?,
            sup_grid: SupGrid::new(radial, angular)?,
            a_grid: AGrid::new(sup_levels, 64)?,
            audit_grid: AGrid::new(sup_levels, 8)?,
            level_grid: AGrid::new(sup_levels, 16)?,
            powers: 200,
            window: 50,
            levels: vec![0.9, 0.99, 0.999, 0.9999],
            level_radii: vec![0.9, 0.99],
            thresholds: vec![0.9, 0.99, 0.999],
            divergence_threshold: 1e6,
            eps_compact: 0.02,
            growth_slope: 0.05,
            a_refine_iters: crate::norms::A_REFINE_ITERS,
            seed: 42,
            random_polynomials: 16,
            tol: 1e-8,
        })
    }

    /// Checks the schedules.
    pub fn validate(&self) -> Result<()> {
        let increasing =
            |v: &[f64]| !v.is_empty() && v.iter().all(|&r| r > 0.0 && r < 1.0) && v.windows(2).all(|p| p[0] < p[1]);
        if !increasing(&self.levels) {
            return Err(Error::InvalidParameter("levels must increase inside (0, 1)"));
        }
        if !increasing(&self.level_radii) || !increasing(&self.thresholds) {
            return Err(Error::InvalidParameter(
                "level-set schedule must increase inside (0, 1)",
            ));
        }
        if self.powers > crate::analytic::MAX_TAYLOR_DEGREE {
            return Err(Error::InvalidParameter("powers must not exceed 512"));
        }
        if self.window == 0 || self.window > self.powers + 1 {
            return Err(Error::InvalidParameter("power window must lie in 1..=powers+1"));
        }
        Ok(())
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::new(64, 256, 8).expect("default configuration is valid")
    }
}
