//! Norm and essential-norm estimates assembled from a [`FunctionalProfile`],
//! boundedness and compactness verdicts, and a lower bound for `‖uC_φ‖`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::Expr;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::functionals::{
    power_bloch_norms, profile, test_function, weighted_bloch_norm, BSample, BoundaryLimsup, FunctionalProfile,
    PowerSequence, SymbolPair, TestFamily,
};
use crate::norms::bloch_norm_with_hints;
use crate::{math, par, Complex};

/// Which additive estimate of `‖uC_φ‖` to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    /// `|u(0)| log(2 / (1 - |φ(0)|²)) + sup_a α + sup_a β`
    AlphaBeta,
    /// `|u(0)| log(2 / (1 - |φ(0)|²)) + sup_n ‖uφⁿ‖_B + sup_a β`
    PowerBeta,
}

impl NormMethod {
    pub fn name(self) -> &'static str {
        match self {
            NormMethod::AlphaBeta => "alpha-beta",
            NormMethod::PowerBeta => "power-beta",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "alpha-beta" => Some(NormMethod::AlphaBeta),
            "power-beta" => Some(NormMethod::PowerBeta),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub method: NormMethod,
    /// Sum of `parts`.
    pub value: f64,
    pub parts: Vec<(&'static str, f64)>,
    /// Some part exceeded the divergence threshold or was not finite.
    pub diverged: bool,
}

impl EstimateReport {
    pub fn part(&self, name: &str) -> Option<f64> {
        self.parts.iter().find(|p| p.0 == name).map(|p| p.1)
    }
}

fn report(
    method: NormMethod,
    parts: Vec<(&'static str, f64)>,
    threshold: f64,
    extra_divergence: bool,
) -> EstimateReport {
    let value = parts.iter().map(|p| p.1).sum();
    let diverged = extra_divergence || parts.iter().any(|p| !(p.1 <= threshold));
    EstimateReport {
        method,
        value,
        parts,
        diverged,
    }
}

/// The estimate from an existing profile.
pub fn norm_estimate_from(prof: &FunctionalProfile, method: NormMethod, cfg: &Config) -> EstimateReport {
    match method {
        NormMethod::AlphaBeta => report(
            method,
            vec![
                ("u0_term", prof.u0_term),
                ("sup_alpha", prof.sup_alpha.value),
                ("sup_beta", prof.sup_beta.value),
            ],
            cfg.divergence_threshold,
            false,
        ),
        NormMethod::PowerBeta => report(
            method,
            vec![
                ("u0_term", prof.u0_term),
                ("power_sup", prof.powers.sup),
                ("sup_beta", prof.sup_beta.value),
            ],
            cfg.divergence_threshold,
            prof.powers.diverged,
        ),
    }
}

pub fn norm_estimate(pair: &SymbolPair, method: NormMethod, cfg: &Config) -> Result<EstimateReport> {
    Ok(norm_estimate_from(&profile(pair, cfg)?, method, cfg))
}

/// The four boundary estimates of the essential norm.
#[derive(Debug, Clone, PartialEq)]
pub struct EssNormReport {
    /// Power tail plus `limsup ‖uC_φ g_a‖_B`.
    pub v1: f64,
    /// `α̃ + β̃ + γ̃`.
    pub v2: f64,
    /// `α̃ + limsup ‖uC_φ g_a‖_B + γ̃`.
    pub v3: f64,
    /// Power tail plus `β̃`.
    pub v4: f64,
    pub power_tail: f64,
    pub alpha_tilde: f64,
    pub beta_tilde: f64,
    pub gamma_tilde: f64,
    pub g_tilde: f64,
    /// Every boundary term was vacuous.
    pub vacuous: bool,
    /// `max / min` over the variants; `None` when all vanish.
    pub ratio: Option<f64>,
}

impl EssNormReport {
    pub fn variants(&self) -> [f64; 4] {
        [self.v1, self.v2, self.v3, self.v4]
    }
}

pub fn essnorm_from(prof: &FunctionalProfile) -> EssNormReport {
    let power_tail = prof.powers.limsup;
    let (a, b, g, gt) = (
        prof.alpha_tilde.value,
        prof.beta_tilde.value,
        prof.gamma.value,
        prof.g_tilde.value,
    );
    let v = [power_tail + gt, a + b + g, a + gt + g, power_tail + b];
    let max = v.iter().copied().fold(0.0, f64::max);
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio = if max == 0.0 {
        None
    } else if min > 0.0 {
        Some(max / min)
    } else {
        Some(f64::INFINITY)
    };
    EssNormReport {
        v1: v[0],
        v2: v[1],
        v3: v[2],
        v4: v[3],
        power_tail,
        alpha_tilde: a,
        beta_tilde: b,
        gamma_tilde: g,
        g_tilde: gt,
        vacuous: prof.alpha_tilde.vacuous && prof.beta_tilde.vacuous && prof.g_tilde.vacuous && prof.gamma.vacuous,
        ratio,
    }
}

/// Fails with [`Error::NotBounded`] when the boundedness verdict is `No`.
pub fn essnorm_estimate_from(prof: &FunctionalProfile, cfg: &Config) -> Result<EssNormReport> {
    if classify_from(prof, cfg).bounded == Trilean::No {
        return Err(Error::NotBounded);
    }
    Ok(essnorm_from(prof))
}

pub fn essnorm_estimate(pair: &SymbolPair, cfg: &Config) -> Result<EssNormReport> {
    essnorm_estimate_from(&profile(pair, cfg)?, cfg)
}

/// Cross-check quantities for the composition and multiplication parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ZhaoQuantities {
    /// `(e/2) limsup ‖φⁿ‖_B`.
    pub zhao: f64,
    pub composition_powers: PowerSequence,
    /// `limsup_{|φ(z)|→1} |u(z) φ'(z)| (1 - |z|²) / (1 - |φ(z)|²)`.
    pub composition_part: BoundaryLimsup,
    /// `limsup_{|φ(z)|→1} log(e / (1 - |φ(z)|²)) |u'(z)| (1 - |z|²)`.
    pub multiplier_part: BoundaryLimsup,
}

/// Uses the profile's power sequence when `u ≡ 1`.
pub fn zhao_quantities_from(pair: &SymbolPair, prof: &FunctionalProfile, cfg: &Config) -> Result<ZhaoQuantities> {
    let contact = pair.boundary_contact();
    let composition_powers = if pair.u_expr().as_const() == Some(Complex::new(1.0, 0.0)) {
        prof.powers.clone()
    } else {
        let plain = SymbolPair::new(Expr::real(1.0), pair.phi_expr().clone())?;
        PowerSequence::from_norms(
            power_bloch_norms(&plain, cfg.powers, &cfg.sup_grid)?,
            cfg.window,
            contact,
        )
    };
    let zhao = core::f64::consts::E / 2.0 * composition_powers.limsup;
    let (composition_part, multiplier_part) = if contact {
        let mut pts = cfg.sup_grid.points();
        pts.extend(pair.ray_hints());
        let samples: Vec<(BSample, BSample)> = par::map(&pts, |&z| -> Result<(BSample, BSample)> {
            let w = pair.phi(z)?;
            let s = 1.0 - z.norm_sqr();
            let t = 1.0 - w.norm_sqr();
            let m = w.norm();
            let comp = if t > 0.0 {
                (pair.u(z)? * pair.dphi(z)?).norm() * s / t
            } else {
                0.0
            };
            let mult = if t > 0.0 {
                math::ln(core::f64::consts::E / t) * pair.du(z)?.norm() * s
            } else {
                0.0
            };
            Ok((
                BSample {
                    a: z,
                    phi_modulus: m,
                    value: comp,
                },
                BSample {
                    a: z,
                    phi_modulus: m,
                    value: mult,
                },
            ))
        })
        .into_iter()
        .collect::<Result<_>>()?;
        let (c, m): (Vec<BSample>, Vec<BSample>) = samples.into_iter().unzip();
        (
            BoundaryLimsup::from_samples(&c, &cfg.levels),
            BoundaryLimsup::from_samples(&m, &cfg.levels),
        )
    } else {
        (
            BoundaryLimsup::vacuous(&cfg.levels),
            BoundaryLimsup::vacuous(&cfg.levels),
        )
    };
    Ok(ZhaoQuantities {
        zhao,
        composition_powers,
        composition_part,
        multiplier_part,
    })
}

pub fn zhao_quantities(pair: &SymbolPair, cfg: &Config) -> Result<ZhaoQuantities> {
    zhao_quantities_from(pair, &profile(pair, cfg)?, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trilean {
    Yes,
    No,
    Inconclusive,
}

impl Trilean {
    pub fn name(self) -> &'static str {
        match self {
            Trilean::Yes => "yes",
            Trilean::No => "no",
            Trilean::Inconclusive => "inconclusive",
        }
    }
}

/// A quantity that entered a verdict, with the threshold it was held to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evidence {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub bounded: Trilean,
    pub compact: Trilean,
    pub evidence: Vec<Evidence>,
}

/// Three-way comparison: `Yes` well below `threshold`, `No` at or above it,
/// `Inconclusive` within a factor 2 below.
fn below(value: f64, threshold: f64) -> Trilean {
    if !(value < threshold) {
        Trilean::No
    } else if value < threshold / 2.0 {
        Trilean::Yes
    } else {
        Trilean::Inconclusive
    }
}

fn all_of(ts: &[Trilean]) -> Trilean {
    if ts.contains(&Trilean::No) {
        Trilean::No
    } else if ts.contains(&Trilean::Inconclusive) {
        Trilean::Inconclusive
    } else {
        Trilean::Yes
    }
}

/// Boundedness from the power-beta parts and the growth trends; compactness
/// from the power tail and `β̃`, only once boundedness is settled.
pub fn classify_from(prof: &FunctionalProfile, cfg: &Config) -> Verdict {
    let est = norm_estimate_from(prof, NormMethod::PowerBeta, cfg);
    let mut evidence = Vec::new();
    let mut bounded = Vec::new();
    for &(name, value) in &est.parts {
        evidence.push(Evidence {
            name,
            value,
            threshold: cfg.divergence_threshold,
        });
        bounded.push(below(value, cfg.divergence_threshold));
    }
    if prof.powers.diverged {
        bounded.push(Trilean::No);
    }
    evidence.push(Evidence {
        name: "power_trend",
        value: prof.powers.trend,
        threshold: cfg.growth_slope,
    });
    bounded.push(below(prof.powers.trend, cfg.growth_slope));
    if let Some(t) = prof.beta_trend {
        evidence.push(Evidence {
            name: "beta_trend",
            value: t,
            threshold: cfg.growth_slope,
        });
        bounded.push(below(t, cfg.growth_slope));
    }
    let bounded = all_of(&bounded);

    let ess = essnorm_from(prof);
    let eps = cfg.eps_compact;
    let compact_terms = [("power_tail", ess.power_tail), ("beta_tilde", ess.beta_tilde)];
    for (name, value) in compact_terms {
        evidence.push(Evidence {
            name,
            value,
            threshold: eps,
        });
    }
    for (name, value) in [
        ("alpha_tilde", ess.alpha_tilde),
        ("g_tilde", ess.g_tilde),
        ("gamma_tilde", ess.gamma_tilde),
    ] {
        evidence.push(Evidence {
            name,
            value,
            threshold: eps,
        });
    }
    let mut tail = compact_terms.map(|(_, v)| below(v, eps));
    // a power tail still decaying at the last window may have limit zero
    if tail[0] == Trilean::No && prof.powers.trend < -cfg.growth_slope {
        tail[0] = Trilean::Inconclusive;
    }
    let compact = match bounded {
        Trilean::Yes => all_of(&tail),
        Trilean::No => Trilean::No,
        Trilean::Inconclusive => Trilean::Inconclusive,
    };
    Verdict {
        bounded,
        compact,
        evidence,
    }
}

pub fn classify(pair: &SymbolPair, cfg: &Config) -> Result<Verdict> {
    Ok(classify_from(&profile(pair, cfg)?, cfg))
}

/// `max ‖uC_φ f‖_B / ‖f‖_B` over a family of test functions.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    /// Description of the maximizing test function.
    pub witness: String,
    /// Number of test functions tried.
    pub tried: usize,
}

/// Tries `1, z, …, z⁸`, the `f`, `h`, `g` families at the audit-grid points
/// and `samples` random polynomials of degree at most 10 drawn from a
/// ChaCha8 stream seeded with `cfg.seed`.
pub fn opnorm_lower_bound(pair: &SymbolPair, samples: usize, cfg: &Config) -> Result<LowerBound> {
    if samples == 0 {
        return Err(Error::InvalidParameter("lower bound needs at least one random sample"));
    }
    let mut cands: Vec<(String, Expr, Vec<Complex>)> = Vec::new();
    cands.push((String::from("1"), Expr::real(1.0), Vec::new()));
    for n in 1..=8u32 {
        cands.push((format!("z^{n}"), Expr::z().powi(n), Vec::new()));
    }
    for a in cfg.audit_grid.points() {
        let c = pair.phi(a)?;
        for (tag, kind) in [("f", TestFamily::F), ("h", TestFamily::H), ("g", TestFamily::G)] {
            let f = test_function(c, kind)?;
            cands.push((format!("{tag}_a a={:.6}{:+.6}i", a.re, a.im), f, vec![c, a]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..samples {
        let degree = rng.gen_range(1..=10u32);
        let mut p = Expr::real(0.0);
        for j in 0..=degree {
            let c = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            p = p + Expr::constant(c) * Expr::z().powi(j);
        }
        cands.push((format!("random#{k} degree={degree}"), p, Vec::new()));
    }
    let hints = pair.ray_hints();
    let ratios: Vec<f64> = par::map(&cands, |(_, f, h)| -> Result<f64> {
        let mut all = h.clone();
        all.extend(hints.iter().copied());
        let den = bloch_norm_with_hints(f, &cfg.sup_grid, h)?.value;
        if den == 0.0 {
            return Ok(0.0);
        }
        Ok(weighted_bloch_norm(pair, f, &cfg.sup_grid, &all)?.value / den)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut k = 0;
    for (i, r) in ratios.iter().enumerate() {
        if *r > ratios[k] {
            k = i;
        }
    }
    Ok(LowerBound {
        value: ratios[k],
        witness: cands.swap_remove(k).0,
        tried: ratios.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        let mut c = Config::new(48, 192, 8).unwrap();
        c.powers = 200;
        c
    }

    fn pair(u: Expr, phi: Expr) -> SymbolPair {
        SymbolPair::new(u, phi).unwrap()
    }

    const TWO_OVER_E: f64 = 2.0 / core::f64::consts::E;

    #[test]
    fn identity_estimates() {
        let cfg = cfg();
        let p = pair(Expr::real(1.0), Expr::z());
        let prof = profile(&p, &cfg).unwrap();
        let ab = norm_estimate_from(&prof, NormMethod::AlphaBeta, &cfg);
        assert!(
            (ab.value - (2f64.ln() + core::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-6,
            "{ab:?}"
        );
        let pb = norm_estimate_from(&prof, NormMethod::PowerBeta, &cfg);
        assert!((pb.value - (2f64.ln() + 1.0)).abs() < 1e-9, "{pb:?}");
        let sum: f64 = pb.parts.iter().map(|p| p.1).sum();
        assert!((sum - pb.value).abs() < 1e-12);

        let ess = essnorm_estimate_from(&prof, &cfg).unwrap();
        assert!((ess.v4 / TWO_OVER_E - 1.0).abs() < 0.01, "{ess:?}");
        assert_eq!(ess.beta_tilde, 0.0);

        let z = zhao_quantities_from(&p, &prof, &cfg).unwrap();
        assert!((z.zhao - 1.0).abs() < 0.02);
        assert_eq!(z.multiplier_part.value, 0.0);

        let v = classify_from(&prof, &cfg);
        assert_eq!((v.bounded, v.compact), (Trilean::Yes, Trilean::No));

        let lb = opnorm_lower_bound(&p, 4, &cfg).unwrap();
        assert!(lb.value >= 1.0 - 1e-12 && lb.value <= ab.value, "{lb:?}");
    }

    #[test]
    fn half_identity_is_compact() {
        let cfg = cfg();
        let p = pair(Expr::real(1.0), Expr::z() * Expr::real(0.5));
        let prof = profile(&p, &cfg).unwrap();
        let ess = essnorm_estimate_from(&prof, &cfg).unwrap();
        assert_eq!(ess.variants(), [0.0; 4]);
        assert!(ess.vacuous && ess.ratio.is_none());
        let v = classify_from(&prof, &cfg);
        assert_eq!((v.bounded, v.compact), (Trilean::Yes, Trilean::Yes));
        assert_eq!(zhao_quantities_from(&p, &prof, &cfg).unwrap().zhao, 0.0);
        let lb = opnorm_lower_bound(&p, 2, &cfg).unwrap();
        assert!(lb.value >= 1.0 - 1e-12);
    }

    #[test]
    fn decaying_power_tail_is_not_a_no() {
        // u vanishes at the contact point, so uC_φ is compact while ‖uφⁿ‖_B
        // decays only like n^{-1/2}
        let cfg = cfg();
        let phi = (Expr::real(1.0) + Expr::z()) / Expr::real(2.0);
        let prof = profile(&pair(Expr::real(1.0) - Expr::z(), phi), &cfg).unwrap();
        assert!(prof.powers.trend < -cfg.growth_slope, "{}", prof.powers.trend);
        let v = classify_from(&prof, &cfg);
        assert_eq!((v.bounded, v.compact), (Trilean::Yes, Trilean::Inconclusive));
    }

    #[test]
    fn zero_weight() {
        let cfg = cfg();
        let p = pair(Expr::real(0.0), Expr::z());
        let prof = profile(&p, &cfg).unwrap();
        for m in [NormMethod::AlphaBeta, NormMethod::PowerBeta] {
            assert_eq!(norm_estimate_from(&prof, m, &cfg).value, 0.0);
        }
        assert_eq!(essnorm_from(&prof).variants(), [0.0; 4]);
        assert_eq!(opnorm_lower_bound(&p, 2, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn unbounded_multiplier_is_rejected() {
        let cfg = cfg();
        let u = (Expr::real(2.0) / (Expr::real(1.0) - Expr::z())).ln();
        let p = pair(u, Expr::z());
        let prof = profile(&p, &cfg).unwrap();
        let v = classify_from(&prof, &cfg);
        assert_eq!(v.bounded, Trilean::No, "{v:?}");
        assert_eq!(v.compact, Trilean::No);
        assert_eq!(essnorm_estimate_from(&prof, &cfg), Err(Error::NotBounded));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [NormMethod::AlphaBeta, NormMethod::PowerBeta] {
            assert_eq!(NormMethod::from_name(m.name()), Some(m));
        }
        assert_eq!(NormMethod::from_name("other"), None);
    }

    #[test]
    fn trilean_thresholds() {
        assert_eq!(below(0.001, 0.02), Trilean::Yes);
        assert_eq!(below(0.015, 0.02), Trilean::Inconclusive);
        assert_eq!(below(0.02, 0.02), Trilean::No);
        assert_eq!(below(f64::NAN, 0.02), Trilean::No);
        assert_eq!(all_of(&[Trilean::Yes, Trilean::Inconclusive]), Trilean::Inconclusive);
    }
}
