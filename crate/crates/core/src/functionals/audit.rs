//! Both sides of the supporting inequalities, evaluated on concrete symbols.
//!
//! Each row compares `lhs` with `constant · rhs`; two-sided rows also compare
//! `rhs` with `constant · lhs`. Pointwise checks report the parameter with the
//! largest `lhs / rhs`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{alpha, beta, log_weight, test_family, FunctionalProfile, SymbolPair, TestFamily};
use crate::analytic::{Compiled, Expr};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::mobius::{sigma, DiskPoint};
use crate::nevanlinna::{
    change_of_variable_ratio, counting_function, littlewood_check, sublog_bound_worst, PolynomialMap,
};
use crate::norms::{
    ap_norm, area_derivative_ratio, bloch_norm, bloch_seminorm, garsia_bloch_norm, growth_bound_check,
    growth_probe_points, invariant_ap_norm,
};
use crate::quadrature::{try_disk_integrate, DiskRule};
use crate::{math, par, Complex};

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub check: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub two_sided: bool,
    pub witness: Option<Complex>,
    /// Free-form qualifier, e.g. the test function or the parameters.
    pub detail: String,
}

impl AuditRow {
    fn new(check: &'static str, lhs: f64, rhs: f64, constant: f64, two_sided: bool) -> Self {
        AuditRow {
            check,
            lhs,
            rhs,
            constant,
            two_sided,
            witness: None,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }

    fn at(mut self, witness: Complex) -> Self {
        self.witness = Some(witness);
        self
    }

    /// `C·rhs - lhs`, and for two-sided rows the smaller of that and
    /// `C·lhs - rhs`.
    pub fn margin(&self) -> f64 {
        let upper = self.constant * self.rhs - self.lhs;
        if self.two_sided {
            upper.min(self.constant * self.lhs - self.rhs)
        } else {
            upper
        }
    }

    /// `lhs / rhs`; 0 when both vanish and infinite when only `rhs` does.
    pub fn ratio(&self) -> f64 {
        ratio(self.lhs, self.rhs)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.margin() >= -tol
    }
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Audit {
    pub rows: Vec<AuditRow>,
    /// Checks that could not be evaluated.
    pub skipped: Vec<(&'static str, Error)>,
}

impl Audit {
    fn push(&mut self, check: &'static str, row: Result<AuditRow>) {
        match row {
            Ok(r) => self.rows.push(r),
            Err(e) => self.skipped.push((check, e)),
        }
    }

    fn extend(&mut self, check: &'static str, rows: Result<Vec<AuditRow>>) {
        match rows {
            Ok(r) => self.rows.extend(r),
            Err(e) => self.skipped.push((check, e)),
        }
    }

    pub fn row(&self, check: &str) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.check == check)
    }

    pub fn all_hold(&self, tol: f64) -> bool {
        self.rows.iter().all(|r| r.holds(tol))
    }
}

/// Row at the parameter with the largest `lhs / rhs`.
fn pointwise<F>(check: &'static str, constant: f64, pts: &[Complex], f: F) -> Result<AuditRow>
where
    F: Fn(Complex) -> Result<(f64, f64)> + crate::Shareable,
{
    let values: Vec<(f64, f64)> = par::map(pts, |&a| f(a)).into_iter().collect::<Result<_>>()?;
    let mut k = 0;
    for (i, v) in values.iter().enumerate() {
        if ratio(v.0, v.1) > ratio(values[k].0, values[k].1) {
            k = i;
        }
    }
    let (lhs, rhs) = values
        .get(k)
        .copied()
        .ok_or(Error::InvalidParameter("audit needs points"))?;
    Ok(AuditRow::new(check, lhs, rhs, constant, false).at(pts[k]))
}

/// `‖(uC_φ f)∘σ_a - (uC_φ f)(a)‖_{A²}`.
fn operator_oscillation(pair: &SymbolPair, f: &Compiled, a: Complex, rule: &DiskRule) -> Result<f64> {
    let image = |z: Complex| -> Result<Complex> { Ok(pair.u(z)? * f.eval(pair.phi(z)?)?) };
    let at_a = image(a)?;
    let sq = try_disk_integrate(|z| Ok((image(sigma(a, z))? - at_a).norm_sqr()), rule)?;
    Ok(math::sqrt(sq))
}

/// `‖(u∘σ_a - u(a)) · (f∘φ∘σ_a - f(φ(a)))‖_{A²}`.
fn product_term(pair: &SymbolPair, f: &Compiled, a: Complex, rule: &DiskRule) -> Result<f64> {
    let ua = pair.u(a)?;
    let fa = f.eval(pair.phi(a)?)?;
    let sq = try_disk_integrate(
        |z| {
            let w = sigma(a, z);
            Ok(((pair.u(w)? - ua) * (f.eval(pair.phi(w)?)? - fa)).norm_sqr())
        },
        rule,
    )?;
    Ok(math::sqrt(sq))
}

/// `‖f∘φ∘σ_a - f(φ(a))‖_{A²}`.
fn composed_oscillation(pair: &SymbolPair, f: &Compiled, a: Complex, rule: &DiskRule) -> Result<f64> {
    let fa = f.eval(pair.phi(a)?)?;
    let sq = try_disk_integrate(|z| Ok((f.eval(pair.phi(sigma(a, z))?)? - fa).norm_sqr()), rule)?;
    Ok(math::sqrt(sq))
}

/// Pointwise and supremum checks for one pair, using the already computed
/// profile. The `‖uC_φ‖` proxy is `|u(0)| log(2 / (1 - |φ(0)|²)) + sup α + sup β`.
pub fn inequality_audit(pair: &SymbolPair, prof: &FunctionalProfile, cfg: &Config) -> Audit {
    let rule = &cfg.rule;
    let pts = cfg.audit_grid.points();
    let mut audit = Audit::default();
    let opnorm = prof.u0_term + prof.sup_alpha.value + prof.sup_beta.value;

    audit.push(
        "alpha_split",
        pointwise("alpha_split", 2.0, &pts, |a| {
            let p = DiskPoint::new(a)?;
            let f = test_family(pair, p, TestFamily::F)?.compile();
            let l = log_weight(pair.phi(a)?);
            Ok((
                alpha(pair, p, rule)?,
                beta(pair, p, rule)? / l + operator_oscillation(pair, &f, a, rule)?,
            ))
        }),
    );
    audit.push(
        "beta_split",
        pointwise("beta_split", 20.0, &pts, |a| {
            let p = DiskPoint::new(a)?;
            let g = test_family(pair, p, TestFamily::G)?.compile();
            let rhs =
                alpha(pair, p, rule)? + product_term(pair, &g, a, rule)? + operator_oscillation(pair, &g, a, rule)?;
            Ok((beta(pair, p, rule)?, rhs))
        }),
    );

    let cube = Expr::z().powi(3);
    for (check_diff, check_prod, f) in [
        ("difference_split_z", "product_term_bound_z", Expr::z()),
        ("difference_split_z3", "product_term_bound_z3", cube.clone()),
    ] {
        let fb = match bloch_norm(&f, &cfg.sup_grid) {
            Ok(v) => v.value,
            Err(e) => {
                audit.skipped.push((check_diff, e));
                continue;
            }
        };
        let fc = f.compile();
        audit.push(
            check_diff,
            pointwise(check_diff, 20.0, &pts, |a| {
                let p = DiskPoint::new(a)?;
                let lhs = operator_oscillation(pair, &fc, a, rule)?;
                let rhs = product_term(pair, &fc, a, rule)? + (alpha(pair, p, rule)? + beta(pair, p, rule)?) * fb;
                Ok((lhs, rhs))
            }),
        );
        audit.push(
            check_prod,
            pointwise(check_prod, 20.0, &pts, |a| {
                let l = log_weight(pair.phi(a)?);
                let cap = prof.sup_beta.value.min(opnorm / math::sqrt(l));
                Ok((product_term(pair, &fc, a, rule)?, fb * cap))
            }),
        );
    }

    audit.push(
        "subordination_conjugate",
        pointwise("subordination_conjugate", 20.0, &pts, |a| {
            let p = DiskPoint::new(a)?;
            let pa = pair.phi(a)?;
            let lhs = composed_oscillation(pair, &cube.compile(), a, rule)?;
            let rhs =
                super::conjugate_norm(pair, p, rule)? * invariant_ap_norm(&cube, DiskPoint::new(pa)?, 2.0, rule)?.value;
            Ok((lhs, rhs))
        }),
    );

    audit.push(
        "power_vs_automorphism_sup",
        Ok(AuditRow::new(
            "power_vs_automorphism_sup",
            prof.sup_f(),
            prof.powers.sup,
            10.0,
            true,
        )),
    );
    audit.push(
        "power_vs_automorphism_limsup",
        Ok(AuditRow::new(
            "power_vs_automorphism_limsup",
            prof.f_tilde.value,
            prof.powers.limsup,
            10.0,
            false,
        )),
    );
    audit.push(
        "level_moment_vs_power_tail",
        Ok(AuditRow::new(
            "level_moment_vs_power_tail",
            prof.gamma.value,
            prof.powers.limsup,
            10.0,
            false,
        )),
    );

    let image = pair.apply(&Expr::z());
    audit.push("holder_monotone", holder_row(&image, &pts, rule));
    audit.push("garsia_equivalence", garsia_row(&image, cfg));
    audit.push(
        "area_derivative",
        area_derivative_ratio(&image, rule).map(|r| AuditRow::new("area_derivative", r, 1.0, 10.0, true)),
    );
    audit.push(
        "log_growth",
        bloch_norm(&image, &cfg.sup_grid).and_then(|b| {
            let r = growth_bound_check(&image, &growth_probe_points(&cfg.sup_grid), b.value)?;
            Ok(AuditRow::new("log_growth", r, 1.0, 1.5, false))
        }),
    );

    if let Ok(poly) = PolynomialMap::from_expr(pair.phi_expr()) {
        let n = nevanlinna_audit(&poly, cfg);
        audit.rows.extend(n.rows);
        audit.skipped.extend(n.skipped);
    }
    audit
}

/// Counting-function checks for a polynomial self-map: the change of
/// variables with `f = z`, and the sub-mean-value inequality when
/// `φ(0) ≠ 0` or the logarithmic bound when `φ(0) = 0`.
pub fn nevanlinna_audit(poly: &PolynomialMap, cfg: &Config) -> Audit {
    let mut audit = Audit::default();
    audit.push("change_of_variable", cov_row(poly, &cfg.rule));
    if poly.at_origin().norm() > crate::nevanlinna::CRITICAL_VALUE_TOL {
        audit.extend("littlewood_submean", littlewood_rows(poly, &cfg.rule));
    } else {
        audit.push("sublog_bound", sublog_row(poly, cfg));
    }
    audit
}

fn holder_row(f: &Expr, pts: &[Complex], rule: &DiskRule) -> Result<AuditRow> {
    let values: Vec<(f64, f64)> = par::map(pts, |&a| -> Result<(f64, f64)> {
        let p = DiskPoint::new(a)?;
        Ok((
            invariant_ap_norm(f, p, 2.0, rule)?.value,
            invariant_ap_norm(f, p, 4.0, rule)?.value,
        ))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let sup2 = values.iter().map(|v| v.0).fold(0.0, f64::max);
    let sup4 = values.iter().map(|v| v.1).fold(0.0, f64::max);
    Ok(AuditRow::new("holder_monotone", sup2, sup4, 1.0, false))
}

fn garsia_row(f: &Expr, cfg: &Config) -> Result<AuditRow> {
    let g = garsia_bloch_norm(f, &cfg.audit_grid, &cfg.rule)?;
    let b = bloch_seminorm(f, &cfg.sup_grid)?;
    Ok(AuditRow::new("garsia_equivalence", g.value, b.value, 10.0, true))
}

fn cov_row(poly: &PolynomialMap, rule: &DiskRule) -> Result<AuditRow> {
    let r = change_of_variable_ratio(&Expr::z(), poly, rule)?;
    Ok(AuditRow::new("change_of_variable", r, 1.0, 10.0, true))
}

fn littlewood_rows(poly: &PolynomialMap, rule: &DiskRule) -> Result<Vec<AuditRow>> {
    let c = poly.at_origin().norm();
    let mut rows = Vec::new();
    for scale in [0.25, 0.5] {
        for gamma in [1.0, 2.0] {
            let n0 = counting_function(poly, Complex::new(0.0, 0.0), gamma)?;
            let slack = littlewood_check(poly, gamma, scale * c, rule)?;
            rows.push(
                AuditRow::new("littlewood_submean", n0, n0 + slack, 1.0, false)
                    .with_detail(format!("r={scale}|phi(0)| gamma={gamma}")),
            );
        }
    }
    Ok(rows)
}

fn sublog_row(poly: &PolynomialMap, cfg: &Config) -> Result<AuditRow> {
    let (n, bound) = sublog_bound_worst(poly, &cfg.sup_grid.points())?;
    Ok(AuditRow::new("sublog_bound", n, bound, 1.0, false))
}

/// A subordination test case with `g(0) = ϕ(0) = 0`.
#[derive(Debug, Clone)]
pub struct SubordinationCase {
    pub g_label: &'static str,
    pub phi_label: &'static str,
    pub g: Expr,
    pub phi: Expr,
}

/// Test functions `g` crossed with self-maps `ϕ`, all vanishing at 0.
pub fn subordination_library() -> Vec<SubordinationCase> {
    let z = Expr::z;
    let half = || Expr::real(0.5);
    let b = Complex::new(0.5, 0.0);
    let bi = Complex::new(0.0, 0.9);
    let mobius = |c: Complex| Expr::mobius(c).expect("center inside the disk");
    let gs: Vec<(&'static str, Expr)> = vec![
        ("0", Expr::real(0.0)),
        ("z", z()),
        ("z^2", z().powi(2)),
        ("z^3", z().powi(3)),
        ("z^5", z().powi(5)),
        ("sigma_0.5-0.5", mobius(b) - Expr::constant(b)),
        ("sigma_0.9i-0.9i", mobius(bi) - Expr::constant(bi)),
        ("exp(z)-1", z().exp() - Expr::real(1.0)),
        ("(z+z^2)/2", (z() + z().powi(2)) * half()),
        ("log(1/(1-z))", (Expr::real(1.0) / (Expr::real(1.0) - z())).ln()),
    ];
    let phis: Vec<(&'static str, Expr)> = vec![
        ("z", z()),
        ("z^2", z().powi(2)),
        ("z/2", z() * half()),
        ("z^2/2", z().powi(2) * half()),
        ("z(1+z)/2", z() * (Expr::real(1.0) + z()) * half()),
        ("z*sigma_0.5", z() * mobius(b)),
        ("0.9z^3", z().powi(3) * Expr::real(0.9)),
    ];
    let mut out = Vec::new();
    for (g_label, g) in &gs {
        for (phi_label, phi) in &phis {
            out.push(SubordinationCase {
                g_label,
                phi_label,
                g: g.clone(),
                phi: phi.clone(),
            });
        }
    }
    out
}

/// `‖g∘ϕ‖_{A²}` against `‖ϕ‖_{A²} ‖g‖_{A²}` with constant 20 over
/// [`subordination_library`].
pub fn subordination_audit(rule: &DiskRule) -> Audit {
    let cases = subordination_library();
    let rows = par::map(&cases, |c| -> Result<AuditRow> {
        let lhs = ap_norm(&c.g.compose(&c.phi), 2.0, rule)?.value;
        let rhs = ap_norm(&c.phi, 2.0, rule)?.value * ap_norm(&c.g, 2.0, rule)?.value;
        Ok(AuditRow::new("subordination_product", lhs, rhs, 20.0, false)
            .with_detail(format!("g={} phi={}", c.g_label, c.phi_label)))
    });
    let mut audit = Audit::default();
    for r in rows {
        audit.push("subordination_product", r);
    }
    audit
}
