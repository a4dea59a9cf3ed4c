//! The `α` and `β` functionals, test families, power norms, level-set
//! moments, boundary limsup approximants, and the inequality audit.
//!
//! With `φ_a = σ_{φ(a)} ∘ φ ∘ σ_a` and `L(a) = log(2 / (1 - |φ(a)|²))`:
//!
//! - `α(u, φ, a) = |u(a)| ‖φ_a‖_{A²}`
//! - `β(u, φ, a) = L(a) ‖u∘σ_a - u(a)‖_{A²}`

mod audit;
mod pair;
mod profile;

pub use audit::{
    inequality_audit, nevanlinna_audit, subordination_audit, subordination_library, Audit, AuditRow, SubordinationCase,
};
pub use pair::SymbolPair;
pub use profile::{
    profile, relative_slope, ASample, BSample, BoundaryLevel, BoundaryLimsup, FunctionalProfile, LevelCell,
    LevelMomentLimsup, PowerSequence,
};

use alloc::vec::Vec;

use crate::analytic::Expr;
use crate::error::{Error, Result};
use crate::math;
use crate::mobius::{sigma, DiskPoint};
use crate::norms::{bloch_norm_with_hints, NormValue};
use crate::quadrature::{level_set_integrals, try_disk_integrate, DiskRule, SupGrid};
use crate::{par, Complex};

/// `log(2 / (1 - |w|²))`.
pub fn log_weight(w: Complex) -> f64 {
    math::ln(2.0 / (1.0 - w.norm_sqr()))
}

fn check_image(phi_a: Complex) -> Result<()> {
    if phi_a.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("|phi(a)| must be below 1"))
    }
}

/// `‖σ_{φ(a)} ∘ φ ∘ σ_a‖_{A²}`.
pub fn conjugate_norm(pair: &SymbolPair, a: DiskPoint, rule: &DiskRule) -> Result<f64> {
    let a = a.value();
    let pa = pair.phi(a)?;
    check_image(pa)?;
    let sq = try_disk_integrate(|z| Ok(pair.conjugate(a, pa, z)?.norm_sqr()), rule)?;
    Ok(math::sqrt(sq))
}

/// `α(u, φ, a)`.
pub fn alpha(pair: &SymbolPair, a: DiskPoint, rule: &DiskRule) -> Result<f64> {
    let ua = pair.u(a.value())?.norm();
    if ua == 0.0 {
        check_image(pair.phi(a.value())?)?;
        return Ok(0.0);
    }
    Ok(ua * conjugate_norm(pair, a, rule)?)
}

/// `‖u∘σ_a - u(a)‖_{A^p}`.
pub fn weight_oscillation(pair: &SymbolPair, a: DiskPoint, p: f64, rule: &DiskRule) -> Result<f64> {
    if pair.u_is_constant() {
        return Ok(0.0);
    }
    let a = a.value();
    let ua = pair.u(a)?;
    let integral = try_disk_integrate(
        |z| {
            let d = (pair.u(sigma(a, z))? - ua).norm_sqr();
            Ok(if p == 2.0 { d } else { math::powf(d, p / 2.0) })
        },
        rule,
    )?;
    Ok(math::powf(integral, 1.0 / p))
}

/// `β(u, φ, a)`.
pub fn beta(pair: &SymbolPair, a: DiskPoint, rule: &DiskRule) -> Result<f64> {
    let pa = pair.phi(a.value())?;
    check_image(pa)?;
    if pair.u_is_constant() {
        return Ok(0.0);
    }
    Ok(log_weight(pa) * weight_oscillation(pair, a, 2.0, rule)?)
}

/// Test functions indexed by `c = φ(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFamily {
    /// `f_c = σ_c - c`
    F,
    /// `h_c = log(2 / (1 - c̄ z))`
    H,
    /// `g_c = h_c² / h_c(c)`
    G,
}

/// The member of `kind` with parameter `c`.
pub fn test_function(c: Complex, kind: TestFamily) -> Result<Expr> {
    check_image(c)?;
    Ok(match kind {
        TestFamily::F => Expr::mobius(c)? - Expr::constant(c),
        TestFamily::H => h_function(c),
        TestFamily::G => {
            let h = h_function(c);
            h.powi(2) / Expr::real(log_weight(c))
        }
    })
}

fn h_function(c: Complex) -> Expr {
    (Expr::real(2.0) / (Expr::real(1.0) - Expr::constant(c.conj()) * Expr::z())).ln()
}

/// The member of `kind` with parameter `φ(a)`.
pub fn test_family(pair: &SymbolPair, a: DiskPoint, kind: TestFamily) -> Result<Expr> {
    test_function(pair.phi(a.value())?, kind)
}

/// `‖u·(f∘φ)‖_B`.
pub fn weighted_bloch_norm(pair: &SymbolPair, f: &Expr, grid: &SupGrid, hints: &[Complex]) -> Result<NormValue> {
    bloch_norm_with_hints(&pair.apply(f), grid, hints)
}

/// `u·φⁿ` as an expression.
pub fn weighted_power(pair: &SymbolPair, n: u32) -> Expr {
    match n {
        0 => pair.u_expr().clone(),
        1 => pair.apply(&Expr::z()),
        n => pair.apply(&Expr::z().powi(n)),
    }
}

/// `[‖u‖_B, ‖uφ‖_B, …, ‖uφᴺ‖_B]`.
pub fn power_bloch_norms(pair: &SymbolPair, n: usize, grid: &SupGrid) -> Result<Vec<NormValue>> {
    if n > crate::analytic::MAX_TAYLOR_DEGREE {
        return Err(Error::InvalidParameter("power horizon must not exceed 512"));
    }
    let hints = pair.ray_hints();
    par::map_range(n + 1, |k| {
        bloch_norm_with_hints(&weighted_power(pair, k as u32), grid, &hints)
    })
    .into_iter()
    .collect()
}

/// `(∫_{E(φ,a,t)} |u∘σ_a|⁴ dA)^{1/4}` for each threshold `t`, where
/// `E(φ,a,t) = {|φ_a| > t}`.
pub fn level_set_moments(pair: &SymbolPair, a: DiskPoint, thresholds: &[f64], rule: &DiskRule) -> Result<Vec<f64>> {
    if thresholds.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::InvalidParameter("level thresholds must lie in (0, 1)"));
    }
    let a = a.value();
    let pa = pair.phi(a)?;
    check_image(pa)?;
    if pair.u_is_constant() && pair.u(a)?.norm() == 0.0 {
        return Ok(alloc::vec![0.0; thresholds.len()]);
    }
    let integrals = level_set_integrals(
        |z| Ok(pair.conjugate(a, pa, z)?.norm()),
        |z| {
            let s = pair.u(sigma(a, z))?.norm_sqr();
            Ok(s * s)
        },
        thresholds,
        rule,
    )?;
    Ok(integrals.into_iter().map(|v| math::powf(v.max(0.0), 0.25)).collect())
}

/// [`level_set_moments`] for a single threshold.
pub fn level_set_moment(pair: &SymbolPair, a: DiskPoint, t: f64, rule: &DiskRule) -> Result<f64> {
    Ok(level_set_moments(pair, a, &[t], rule)?[0])
}
