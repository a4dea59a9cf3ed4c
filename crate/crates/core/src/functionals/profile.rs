//! Everything the estimators need about one symbol pair, computed once.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{
    alpha, beta, level_set_moments, log_weight, power_bloch_norms, test_family, weighted_bloch_norm, SymbolPair,
    TestFamily,
};
use crate::analytic::SelfMapReport;
use crate::config::Config;
use crate::error::Result;
use crate::mobius::DiskPoint;
use crate::norms::NormValue;
use crate::quadrature::{pattern_search, AGrid, SupResult};
use crate::{math, par, Complex};

/// `α` and `β` at one parameter `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ASample {
    pub a: Complex,
    pub phi_a: Complex,
    pub alpha: f64,
    pub beta: f64,
}

/// A scalar quantity at one parameter `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BSample {
    pub a: Complex,
    /// `|φ(a)|`.
    pub phi_modulus: f64,
    pub value: f64,
}

/// Supremum over `{a : |φ(a)| ≥ r}`; `None` when no sample reaches `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryLevel {
    pub r: f64,
    pub value: Option<f64>,
    pub witness: Option<Complex>,
}

/// Finite approximant of `limsup_{|φ(a)|→1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryLimsup {
    pub levels: Vec<BoundaryLevel>,
    /// Value at the largest non-vacuous level, 0 if every level is vacuous.
    pub value: f64,
    /// No sample reached any level.
    pub vacuous: bool,
}

impl BoundaryLimsup {
    /// Every level vacuous.
    pub fn vacuous(levels: &[f64]) -> Self {
        BoundaryLimsup {
            levels: levels
                .iter()
                .map(|&r| BoundaryLevel {
                    r,
                    value: None,
                    witness: None,
                })
                .collect(),
            value: 0.0,
            vacuous: true,
        }
    }

    pub fn from_samples(samples: &[BSample], levels: &[f64]) -> Self {
        let mut out = Vec::with_capacity(levels.len());
        for &r in levels {
            let mut best: Option<&BSample> = None;
            for s in samples.iter().filter(|s| s.phi_modulus >= r) {
                if best.map_or(true, |b| s.value > b.value) {
                    best = Some(s);
                }
            }
            out.push(BoundaryLevel {
                r,
                value: best.map(|b| b.value),
                witness: best.map(|b| b.a),
            });
        }
        let last = out.iter().rev().find_map(|l| l.value);
        BoundaryLimsup {
            levels: out,
            value: last.unwrap_or(0.0),
            vacuous: last.is_none(),
        }
    }
}

/// One cell of the nested `(r, t)` schedule for the level-set moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelCell {
    pub r: f64,
    pub t: f64,
    /// Supremum over `{a : |φ(a)| ≤ r}`; `None` when no sample qualifies.
    pub value: Option<f64>,
    pub witness: Option<Complex>,
}

/// Finite approximant of
/// `limsup_{r→1} limsup_{t→1} sup_{|φ(a)| ≤ r} (∫_{E(φ,a,t)} |u∘σ_a|⁴ dA)^{1/4}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMomentLimsup {
    pub cells: Vec<LevelCell>,
    /// Value at the largest non-empty `r` and largest `t`.
    pub value: f64,
    pub vacuous: bool,
}

impl LevelMomentLimsup {
    pub fn vacuous(radii: &[f64], thresholds: &[f64]) -> Self {
        let cells = radii
            .iter()
            .flat_map(|&r| {
                thresholds.iter().map(move |&t| LevelCell {
                    r,
                    t,
                    value: None,
                    witness: None,
                })
            })
            .collect();
        LevelMomentLimsup {
            cells,
            value: 0.0,
            vacuous: true,
        }
    }

    /// `samples[i] = (a, |φ(a)|, moments for every threshold)`.
    pub fn from_samples(samples: &[(Complex, f64, Vec<f64>)], radii: &[f64], thresholds: &[f64]) -> Self {
        let mut cells = Vec::with_capacity(radii.len() * thresholds.len());
        for &r in radii {
            for (k, &t) in thresholds.iter().enumerate() {
                let mut best: Option<(Complex, f64)> = None;
                for (a, _, v) in samples.iter().filter(|s| s.1 <= r) {
                    if best.map_or(true, |b| v[k] > b.1) {
                        best = Some((*a, v[k]));
                    }
                }
                cells.push(LevelCell {
                    r,
                    t,
                    value: best.map(|b| b.1),
                    witness: best.map(|b| b.0),
                });
            }
        }
        let last = cells.iter().rev().find_map(|c| c.value);
        LevelMomentLimsup {
            cells,
            value: last.unwrap_or(0.0),
            vacuous: last.is_none(),
        }
    }
}

/// `‖uφⁿ‖_B` for `n = 0..=N` and its tail statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSequence {
    pub norms: Vec<NormValue>,
    /// `max_n ‖uφⁿ‖_B`.
    pub sup: f64,
    /// Maximum over the trailing window.
    pub window_max: f64,
    /// Limsup approximant: the window maximum, or exactly 0 for strict
    /// self-maps.
    pub limsup: f64,
    /// Slope of the window terms against `ln n`, divided by their mean.
    pub trend: f64,
    pub diverged: bool,
}

impl PowerSequence {
    pub fn from_norms(norms: Vec<NormValue>, window: usize, boundary_contact: bool) -> Self {
        let n = norms.len();
        let w = window.clamp(1, n.max(1));
        let tail = &norms[n - w..];
        let sup = norms.iter().map(|v| v.value).fold(0.0, f64::max);
        let window_max = tail.iter().map(|v| v.value).fold(0.0, f64::max);
        let xs: Vec<f64> = (n - w..n).map(|k| math::ln(k.max(1) as f64)).collect();
        let ys: Vec<f64> = tail.iter().map(|v| v.value).collect();
        PowerSequence {
            sup,
            window_max,
            limsup: if boundary_contact { window_max } else { 0.0 },
            trend: relative_slope(&xs, &ys),
            diverged: norms.iter().any(|v| v.diverged),
            norms,
        }
    }
}

/// Least-squares slope of `ys` against `xs`, divided by the mean of `ys`.
/// Zero when the mean or the spread of `xs` vanishes.
pub fn relative_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return 0.0;
    }
    let mx = math::sum(xs[..n].iter().copied()) / n as f64;
    let my = math::sum(ys[..n].iter().copied()) / n as f64;
    let sxy = math::sum((0..n).map(|i| (xs[i] - mx) * (ys[i] - my)));
    let sxx = math::sum((0..n).map(|i| (xs[i] - mx) * (xs[i] - mx)));
    if sxx == 0.0 || my == 0.0 {
        return 0.0;
    }
    sxy / sxx / my
}

/// The functionals of one pair under one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalProfile {
    pub report: SelfMapReport,
    /// `|u(0)| log(2 / (1 - |φ(0)|²))`.
    pub u0_term: f64,
    /// `α`, `β` over the `a`-grid and the approach points.
    pub a_samples: Vec<ASample>,
    pub sup_alpha: SupResult,
    pub sup_beta: SupResult,
    pub powers: PowerSequence,
    pub alpha_tilde: BoundaryLimsup,
    pub beta_tilde: BoundaryLimsup,
    /// `‖uC_φ g_a‖_B` on the audit grid and the approach points.
    pub g_samples: Vec<BSample>,
    pub g_tilde: BoundaryLimsup,
    /// `‖uC_φ f_a‖_B` on the same points.
    pub f_samples: Vec<BSample>,
    pub f_tilde: BoundaryLimsup,
    pub gamma: LevelMomentLimsup,
    /// Slope of `β` against `log(2 / (1 - |φ(a)|²))` along the approach
    /// points, relative to its mean. `None` without boundary contact.
    pub beta_trend: Option<f64>,
}

impl FunctionalProfile {
    /// `sup_a ‖uC_φ f_a‖_B` over the sampled points.
    pub fn sup_f(&self) -> f64 {
        self.f_samples.iter().map(|s| s.value).fold(0.0, f64::max)
    }

    pub fn sup_g(&self) -> f64 {
        self.g_samples.iter().map(|s| s.value).fold(0.0, f64::max)
    }
}

fn refine_sup<G>(g: G, samples: &[(Complex, f64)], grid: &AGrid, iters: usize) -> Result<SupResult>
where
    G: Fn(Complex) -> Result<f64>,
{
    let mut k = 0;
    for (i, s) in samples.iter().enumerate() {
        if s.1 > samples[k].1 {
            k = i;
        }
    }
    let (start, value) = samples[k];
    let coarse = SupResult {
        value,
        argmax: start,
        converged: iters == 0,
    };
    let cap = grid.max_radius().max(start.norm());
    if iters == 0 || cap <= 0.0 {
        return Ok(coarse);
    }
    let step = 2.0 * PI / grid.angular_count() as f64 / 4.0;
    let found = pattern_search(&g, start, 0.25, step, cap, iters)?;
    Ok(if found.value > coarse.value {
        found
    } else {
        SupResult {
            converged: found.converged,
            ..coarse
        }
    })
}

fn at(z: Complex) -> Result<DiskPoint> {
    DiskPoint::new(z)
}

/// Computes every functional the estimators use.
pub fn profile(pair: &SymbolPair, cfg: &Config) -> Result<FunctionalProfile> {
    cfg.validate()?;
    let contact = pair.boundary_contact();
    let top = *cfg.levels.last().unwrap_or(&0.9999);
    let approach = pair.approach_points(top)?;
    let origin = Complex::new(0.0, 0.0);
    let u0_term = pair.u(origin)?.norm() * log_weight(pair.phi(origin)?);

    let mut a_pts = cfg.a_grid.points();
    a_pts.extend(approach.iter().copied());
    let a_samples: Vec<ASample> = par::map(&a_pts, |&a| -> Result<ASample> {
        let p = at(a)?;
        Ok(ASample {
            a,
            phi_a: pair.phi(a)?,
            alpha: alpha(pair, p, &cfg.rule)?,
            beta: beta(pair, p, &cfg.rule)?,
        })
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let grid = cfg.a_grid.clone().with_extra(approach.iter().copied());
    let alphas: Vec<(Complex, f64)> = a_samples.iter().map(|s| (s.a, s.alpha)).collect();
    let betas: Vec<(Complex, f64)> = a_samples.iter().map(|s| (s.a, s.beta)).collect();
    let sup_alpha = refine_sup(|z| alpha(pair, at(z)?, &cfg.rule), &alphas, &grid, cfg.a_refine_iters)?;
    let sup_beta = refine_sup(|z| beta(pair, at(z)?, &cfg.rule), &betas, &grid, cfg.a_refine_iters)?;

    let powers = PowerSequence::from_norms(power_bloch_norms(pair, cfg.powers, &cfg.sup_grid)?, cfg.window, contact);

    let mut b_pts = cfg.audit_grid.points();
    b_pts.extend(approach.iter().copied());
    let fg: Vec<(BSample, BSample)> = par::map(&b_pts, |&a| -> Result<(BSample, BSample)> {
        let p = at(a)?;
        let phi_modulus = pair.phi(a)?.norm();
        let hint = [a];
        let f = weighted_bloch_norm(pair, &test_family(pair, p, TestFamily::F)?, &cfg.sup_grid, &hint)?;
        let g = weighted_bloch_norm(pair, &test_family(pair, p, TestFamily::G)?, &cfg.sup_grid, &hint)?;
        Ok((
            BSample {
                a,
                phi_modulus,
                value: f.value,
            },
            BSample {
                a,
                phi_modulus,
                value: g.value,
            },
        ))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let (f_samples, g_samples): (Vec<BSample>, Vec<BSample>) = fg.into_iter().unzip();

    let sample = |s: &ASample, v: f64| BSample {
        a: s.a,
        phi_modulus: s.phi_a.norm(),
        value: v,
    };
    let (alpha_tilde, beta_tilde, g_tilde, f_tilde, gamma);
    if contact {
        let al: Vec<BSample> = a_samples.iter().map(|s| sample(s, s.alpha)).collect();
        let be: Vec<BSample> = a_samples.iter().map(|s| sample(s, s.beta)).collect();
        alpha_tilde = BoundaryLimsup::from_samples(&al, &cfg.levels);
        beta_tilde = BoundaryLimsup::from_samples(&be, &cfg.levels);
        g_tilde = BoundaryLimsup::from_samples(&g_samples, &cfg.levels);
        f_tilde = BoundaryLimsup::from_samples(&f_samples, &cfg.levels);
        gamma = level_moment_limsup(pair, cfg, &approach)?;
    } else {
        alpha_tilde = BoundaryLimsup::vacuous(&cfg.levels);
        beta_tilde = BoundaryLimsup::vacuous(&cfg.levels);
        g_tilde = BoundaryLimsup::vacuous(&cfg.levels);
        f_tilde = BoundaryLimsup::vacuous(&cfg.levels);
        gamma = LevelMomentLimsup::vacuous(&cfg.level_radii, &cfg.thresholds);
    }

    let beta_trend = if contact {
        let n = a_pts.len() - approach.len();
        let tail = &a_samples[n..];
        let xs: Vec<f64> = tail.iter().map(|s| log_weight(s.phi_a)).collect();
        let ys: Vec<f64> = tail.iter().map(|s| s.beta).collect();
        Some(relative_slope(&xs, &ys))
    } else {
        None
    };

    Ok(FunctionalProfile {
        report: *pair.report(),
        u0_term,
        a_samples,
        sup_alpha,
        sup_beta,
        powers,
        alpha_tilde,
        beta_tilde,
        g_samples,
        g_tilde,
        f_samples,
        f_tilde,
        gamma,
        beta_trend,
    })
}

fn level_moment_limsup(pair: &SymbolPair, cfg: &Config, approach: &[Complex]) -> Result<LevelMomentLimsup> {
    let r_max = *cfg.level_radii.last().unwrap_or(&0.99);
    let mut pts = cfg.level_grid.points();
    pts.extend(approach.iter().copied());
    let mut kept = Vec::with_capacity(pts.len());
    for a in pts {
        let m = pair.phi(a)?.norm();
        if m <= r_max {
            kept.push((a, m));
        }
    }
    let samples: Vec<(Complex, f64, Vec<f64>)> = par::map(&kept, |&(a, m)| -> Result<(Complex, f64, Vec<f64>)> {
        Ok((a, m, level_set_moments(pair, at(a)?, &cfg.thresholds, &cfg.rule)?))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    Ok(LevelMomentLimsup::from_samples(
        &samples,
        &cfg.level_radii,
        &cfg.thresholds,
    ))
}
