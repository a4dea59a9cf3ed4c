//! Bloch, Bergman and Möbius-invariant norms.

use alloc::vec::Vec;

use crate::analytic::Expr;
use crate::error::Result;
use crate::math;
use crate::mobius::DiskPoint;
use crate::quadrature::{
    disk_sup_with_hints, grid_sup, try_disk_integrate, AGrid, DiskRule, RuleMeta, SupGrid, SUP_RADIUS_CAP,
};
use crate::Complex;

/// Values above this are flagged as diverged.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

/// Where a [`NormValue`] came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormMeta {
    /// Supremum over a polar probe grid capped at [`SUP_RADIUS_CAP`].
    Sup { radial: usize, angular: usize, cap: f64 },
    /// Disk quadrature.
    Rule(RuleMeta),
    /// Supremum over an `a`-grid of a quadrature-based quantity.
    AGrid {
        levels: usize,
        angular: usize,
        rule: RuleMeta,
    },
    /// Closed form (constant functions).
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormValue {
    pub value: f64,
    /// `value` exceeded [`DIVERGENCE_THRESHOLD`].
    pub diverged: bool,
    /// The supremum search ended at an interior point within tolerance.
    /// Always true for quadrature values.
    pub converged: bool,
    /// Location of the supremum, when there is one.
    pub argmax: Option<Complex>,
    pub meta: NormMeta,
}

impl NormValue {
    fn new(value: f64, converged: bool, argmax: Option<Complex>, meta: NormMeta) -> Self {
        NormValue {
            value,
            diverged: !(value <= DIVERGENCE_THRESHOLD),
            converged,
            argmax,
            meta,
        }
    }

    fn exact(value: f64) -> Self {
        NormValue::new(value, true, None, NormMeta::Exact)
    }
}

fn sup_meta(grid: &SupGrid) -> NormMeta {
    NormMeta::Sup {
        radial: grid.radii().len(),
        angular: grid.angular_count(),
        cap: SUP_RADIUS_CAP,
    }
}

/// `sup (1 - |z|²) |f'(z)|`.
pub fn bloch_seminorm(f: &Expr, grid: &SupGrid) -> Result<NormValue> {
    bloch_seminorm_with_hints(f, grid, &[])
}

/// [`bloch_seminorm`] with extra probe points, e.g. toward a boundary
/// contact of the symbol.
pub fn bloch_seminorm_with_hints(f: &Expr, grid: &SupGrid, hints: &[Complex]) -> Result<NormValue> {
    let df = f.derivative();
    if let Some(c) = df.as_const() {
        // (1 - |z|²)|c| peaks at the origin
        return Ok(NormValue::new(
            c.norm(),
            true,
            Some(Complex::new(0.0, 0.0)),
            sup_meta(grid),
        ));
    }
    let prog = df.compile();
    let r = disk_sup_with_hints(
        |z: Complex| Ok((1.0 - z.norm_sqr()) * prog.eval(z)?.norm()),
        grid,
        true,
        hints,
    )?;
    Ok(NormValue::new(r.value, r.converged, Some(r.argmax), sup_meta(grid)))
}

/// `|f(0)| + ‖f‖_β`.
pub fn bloch_norm(f: &Expr, grid: &SupGrid) -> Result<NormValue> {
    bloch_norm_with_hints(f, grid, &[])
}

pub fn bloch_norm_with_hints(f: &Expr, grid: &SupGrid, hints: &[Complex]) -> Result<NormValue> {
    let semi = bloch_seminorm_with_hints(f, grid, hints)?;
    let value = f.eval(Complex::new(0.0, 0.0))?.norm() + semi.value;
    Ok(NormValue::new(value, semi.converged, semi.argmax, semi.meta))
}

/// `sup |f|` over the probe disk.
pub fn sup_norm(f: &Expr, grid: &SupGrid) -> Result<NormValue> {
    if let Some(c) = f.as_const() {
        return Ok(NormValue::exact(c.norm()));
    }
    let prog = f.compile();
    let r = disk_sup_with_hints(|z: Complex| Ok(prog.eval(z)?.norm()), grid, true, &[])?;
    Ok(NormValue::new(r.value, r.converged, Some(r.argmax), sup_meta(grid)))
}

#[inline]
fn modulus_pow(v: Complex, p: f64) -> f64 {
    if p == 2.0 {
        v.norm_sqr()
    } else if p == 4.0 {
        let s = v.norm_sqr();
        s * s
    } else {
        math::powf(v.norm(), p)
    }
}

/// `(∫ |f|^p dA)^{1/p}`.
pub fn ap_norm(f: &Expr, p: f64, rule: &DiskRule) -> Result<NormValue> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(crate::Error::InvalidParameter("A^p exponent must be at least 1"));
    }
    if let Some(c) = f.as_const() {
        return Ok(NormValue::exact(c.norm()));
    }
    let prog = f.compile();
    let integral = try_disk_integrate(|z| Ok(modulus_pow(prog.eval(z)?, p)), rule)?;
    Ok(NormValue::new(
        math::powf(integral, 1.0 / p),
        true,
        None,
        NormMeta::Rule(rule.meta()),
    ))
}

/// `f∘σ_a - f(a)` as an expression.
pub fn invariant_oscillation(f: &Expr, a: DiskPoint) -> Result<Expr> {
    let fa = f.eval(a.value())?;
    Ok(f.compose(&Expr::mobius(a.value())?) - Expr::constant(fa))
}

/// `‖f∘σ_a - f(a)‖_{A^p}`.
pub fn invariant_ap_norm(f: &Expr, a: DiskPoint, p: f64, rule: &DiskRule) -> Result<NormValue> {
    if f.derivative().as_const() == Some(Complex::new(0.0, 0.0)) {
        return Ok(NormValue::new(0.0, true, None, NormMeta::Rule(rule.meta())));
    }
    ap_norm(&invariant_oscillation(f, a)?, p, rule)
}

/// Iterations of the local search that follows an `a`-grid scan.
pub const A_REFINE_ITERS: usize = 40;

/// `sup_a ‖f∘σ_a - f(a)‖_{A^p}` over an `a`-grid.
pub fn garsia_norm(f: &Expr, p: f64, a_grid: &AGrid, rule: &DiskRule) -> Result<NormValue> {
    let meta = NormMeta::AGrid {
        levels: a_grid.radii().len(),
        angular: a_grid.angular_count(),
        rule: rule.meta(),
    };
    if f.derivative().as_const() == Some(Complex::new(0.0, 0.0)) {
        return Ok(NormValue::new(0.0, true, Some(Complex::new(0.0, 0.0)), meta));
    }
    let r = grid_sup(
        |a| invariant_ap_norm(f, DiskPoint::new(a)?, p, rule).map(|v| v.value),
        a_grid,
        A_REFINE_ITERS,
    )?;
    Ok(NormValue::new(r.value, r.converged, Some(r.argmax), meta))
}

/// `sup_a ‖f∘σ_a - f(a)‖_{A²}`, equivalent to the Bloch seminorm.
pub fn garsia_bloch_norm(f: &Expr, a_grid: &AGrid, rule: &DiskRule) -> Result<NormValue> {
    garsia_norm(f, 2.0, a_grid, rule)
}

/// `max |f(z)| / (log(2 / (1 - |z|²)) ‖f‖_B)` over `points`.
pub fn growth_bound_check(f: &Expr, points: &[Complex], bloch_norm: f64) -> Result<f64> {
    if bloch_norm == 0.0 {
        return Ok(0.0);
    }
    let prog = f.compile();
    let mut worst: f64 = 0.0;
    for &z in points {
        let weight = math::ln(2.0 / (1.0 - z.norm_sqr()));
        worst = worst.max(prog.eval(z)?.norm() / (weight * bloch_norm));
    }
    Ok(worst)
}

/// `‖f‖²_{A²} / (|f(0)|² + ∫ |f'|² (1 - |w|²)² dA)`; one for constants.
pub fn area_derivative_ratio(f: &Expr, rule: &DiskRule) -> Result<f64> {
    let lhs = ap_norm(f, 2.0, rule)?.value;
    let df = f.derivative().compile();
    let f0 = f.eval(Complex::new(0.0, 0.0))?.norm_sqr();
    let tail = try_disk_integrate(
        |w| {
            let s = 1.0 - w.norm_sqr();
            Ok(df.eval(w)?.norm_sqr() * s * s)
        },
        rule,
    )?;
    let rhs = f0 + tail;
    if rhs == 0.0 {
        return Ok(1.0);
    }
    Ok(lhs * lhs / rhs)
}

/// Sample points for [`growth_bound_check`].
pub fn growth_probe_points(grid: &SupGrid) -> Vec<Complex> {
    grid.points()
}
