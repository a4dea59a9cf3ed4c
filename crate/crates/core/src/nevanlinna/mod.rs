//! Generalized Nevanlinna counting functions
//! `N_{φ,γ}(w) = Σ_{φ(z) = w} (log 1/|z|)^γ` for polynomial self-maps, and
//! numerical checks of the inequalities built on them.

mod poly;
mod roots;

pub use poly::{PolynomialMap, MAX_POLYNOMIAL_DEGREE};
pub use roots::polynomial_roots;

use alloc::vec::Vec;

use crate::analytic::Expr;
use crate::error::{Error, Result};
use crate::math;
use crate::mobius::{sigma, sigma_derivative};
use crate::quadrature::{try_disk_integrate, DiskRule};
use crate::Complex;

/// Residual bound for accepted preimages.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;
/// Roots closer than this are merged into one with multiplicity.
pub const MULTIPLICITY_RADIUS: f64 = 1e-6;
/// `|w - φ(0)|` below this counts as the critical value.
pub const CRITICAL_VALUE_TOL: f64 = 1e-12;

/// Preimages of a point inside the disk.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PreimageSet {
    pub roots: Vec<(Complex, usize)>,
}

impl PreimageSet {
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Solutions of `φ(z) = w` in the open disk, with multiplicity.
pub fn preimages(phi: &PolynomialMap, w: Complex) -> Result<PreimageSet> {
    let mut shifted = phi.coefficients().to_vec();
    shifted[0] -= w;
    let mut found: Vec<Complex> = Vec::new();
    for z in polynomial_roots(&shifted)? {
        let (p, dp) = roots::horner(&shifted, z);
        let polished = if dp.norm() > 0.0 { z - p / dp } else { z };
        // Newton can overshoot near multiple roots; keep the better point
        let z = if roots::horner(&shifted, polished).0.norm() <= p.norm() {
            polished
        } else {
            z
        };
        if z.norm() >= 1.0 {
            continue;
        }
        let residual = roots::horner(&shifted, z).0.norm();
        if residual >= ROOT_RESIDUAL_TOL {
            return Err(Error::IllConditioned { residual });
        }
        found.push(z);
    }
    let mut roots: Vec<(Complex, usize)> = Vec::new();
    for z in found {
        match roots.iter_mut().find(|(r, _)| (*r - z).norm() < MULTIPLICITY_RADIUS) {
            Some(entry) => {
                let m = entry.1 as f64;
                entry.0 = (entry.0 * m + z) / (m + 1.0);
                entry.1 += 1;
            }
            None => roots.push((z, 1)),
        }
    }
    Ok(PreimageSet { roots })
}

/// `N_{φ,γ}(w)`; zero when `w` has no preimages in the disk.
pub fn counting_function(phi: &PolynomialMap, w: Complex, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter("counting exponent must be positive"));
    }
    if (w - phi.at_origin()).norm() < CRITICAL_VALUE_TOL {
        return Err(Error::AtCriticalValue);
    }
    let set = preimages(phi, w)?;
    Ok(set
        .roots
        .iter()
        .map(|&(z, m)| m as f64 * math::powf(-math::ln(z.norm()), gamma))
        .fold(0.0, |acc, x| acc + x))
}

/// `(1/r²) ∫_{r𝔻} N_{φ,γ} dA - N_{φ,γ}(0)`, the slack in the sub-mean-value
/// inequality for the counting function. Requires `0 < r < |φ(0)|`.
pub fn littlewood_check(phi: &PolynomialMap, gamma: f64, r: f64, rule: &DiskRule) -> Result<f64> {
    let c = phi.at_origin().norm();
    if c < CRITICAL_VALUE_TOL {
        return Err(Error::PreconditionViolated("littlewood check needs phi(0) != 0"));
    }
    if !(r > 0.0 && r < c) {
        return Err(Error::PreconditionViolated("littlewood check needs 0 < r < |phi(0)|"));
    }
    let mean = try_disk_integrate(|zeta| counting_function(phi, zeta * r, gamma), rule)?;
    Ok(mean - counting_function(phi, Complex::new(0.0, 0.0), gamma)?)
}

/// `∫_𝔻 F(w) N_{φ,2}(w) dA(w)`, integrated in the variable `ζ` with
/// `w = σ_c(ζ)`, `c = φ(0)`, so the logarithmic singularity of the counting
/// function sits at the centre of the rule.
pub fn counting_weighted_integral<F>(phi: &PolynomialMap, weight: F, rule: &DiskRule) -> Result<f64>
where
    F: Fn(Complex) -> Result<f64> + crate::Shareable,
{
    let c = phi.at_origin();
    try_disk_integrate(
        |zeta| {
            let w = sigma(c, zeta);
            let jac = sigma_derivative(c, zeta).norm_sqr();
            match counting_function(phi, w, 2.0) {
                Ok(n) if n == 0.0 => Ok(0.0),
                Ok(n) => Ok(weight(w)? * n * jac),
                // measure zero; the rule never places a node at ζ = 0
                Err(Error::AtCriticalValue) => Ok(0.0),
                Err(e) => Err(e),
            }
        },
        rule,
    )
}

/// `‖f∘φ‖²_{A²} / (|f(φ(0))|² + ∫ |f'|² N_{φ,2} dA)`; one when both sides
/// vanish.
pub fn change_of_variable_ratio(f: &Expr, phi: &PolynomialMap, rule: &DiskRule) -> Result<f64> {
    let composed = f.compose(&phi.to_expr()).compile();
    let lhs = try_disk_integrate(|z| Ok(composed.eval(z)?.norm_sqr()), rule)?;
    let df = f.derivative();
    let head = f.eval(phi.at_origin())?.norm_sqr();
    let tail = match df.as_const() {
        Some(c) if c.norm() == 0.0 => 0.0,
        _ => {
            let dfc = df.compile();
            counting_weighted_integral(phi, |w| Ok(dfc.eval(w)?.norm_sqr()), rule)?
        }
    };
    let rhs = head + tail;
    if rhs == 0.0 && lhs == 0.0 {
        return Ok(1.0);
    }
    Ok(lhs / rhs)
}

/// Slack in `N_{φ,2}(w) ≤ (4δ / (log 2)²) (log 1/|w|)²` on `1/2 ≤ |w| < 1`,
/// where `δ = sup |w|² N_{φ,2}(w)`. Both are taken over `points`; requires
/// `φ(0) = 0`.
pub fn sublog_bound_check(phi: &PolynomialMap, points: &[Complex]) -> Result<f64> {
    let (n, bound) = sublog_bound_worst(phi, points)?;
    Ok(bound - n)
}

/// `(N_{φ,2}(w), bound(w))` at the point of [`sublog_bound_check`] with the
/// smallest slack; `(0, 0)` when no point lies in the annulus.
pub fn sublog_bound_worst(phi: &PolynomialMap, points: &[Complex]) -> Result<(f64, f64)> {
    if phi.at_origin().norm() >= CRITICAL_VALUE_TOL {
        return Err(Error::PreconditionViolated("sublog bound needs phi(0) = 0"));
    }
    let values: Vec<(Complex, f64)> = crate::par::map(points, |&w| -> Result<(Complex, f64)> {
        if w.norm() == 0.0 || w.norm() >= 1.0 {
            return Ok((w, 0.0));
        }
        Ok((w, counting_function(phi, w, 2.0)?))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let delta = values
        .iter()
        .filter(|(w, _)| w.norm() > 0.0 && w.norm() < 1.0)
        .map(|(w, n)| w.norm_sqr() * n)
        .fold(0.0, f64::max);
    let ln2 = core::f64::consts::LN_2;
    let mut worst: Option<(f64, f64)> = None;
    for (w, n) in &values {
        let m = w.norm();
        if (0.5..1.0).contains(&m) {
            let l = math::ln(1.0 / m);
            let bound = 4.0 * delta / (ln2 * ln2) * l * l;
            if worst.map_or(true, |(wn, wb)| bound - n < wb - wn) {
                worst = Some((*n, bound));
            }
        }
    }
    Ok(worst.unwrap_or((0.0, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{build_rule, SupGrid};
    use alloc::vec;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn poly(coeffs: &[(f64, f64)]) -> PolynomialMap {
        PolynomialMap::new(coeffs.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    fn square() -> PolynomialMap {
        poly(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])
    }

    #[test]
    fn preimages_of_square() {
        let s = preimages(&square(), c(0.25, 0.0)).unwrap();
        assert_eq!(s.count(), 2);
        for &(z, m) in &s.roots {
            assert_eq!(m, 1);
            assert!((z.norm() - 0.5).abs() < 1e-15 && z.im.abs() < 1e-15);
        }
        let s = preimages(&square(), c(0.81, 0.0)).unwrap();
        assert!(s.roots.iter().all(|(z, _)| (z.norm() - 0.9).abs() < 1e-14));
    }

    #[test]
    fn no_preimages_inside() {
        let cubic = poly(&[(0.7, 0.0), (0.0, 0.0), (0.0, 0.0), (0.25, 0.0)]);
        let w = c(-0.5, 0.0);
        assert!(preimages(&cubic, w).unwrap().is_empty());
        assert_eq!(counting_function(&cubic, w, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn double_root_has_multiplicity_two() {
        let s = preimages(&square(), c(1e-20, 0.0)).unwrap();
        assert_eq!(s.count(), 2);
    }

    #[test]
    fn counting_examples() {
        let ln2 = core::f64::consts::LN_2;
        let n1 = counting_function(&square(), c(0.25, 0.0), 1.0).unwrap();
        assert!((n1 - 2.0 * ln2).abs() < 1e-14);
        let n2 = counting_function(&square(), c(0.25, 0.0), 2.0).unwrap();
        assert!((n2 - 2.0 * ln2 * ln2).abs() < 1e-14);
        assert_eq!(
            counting_function(&square(), c(0.0, 0.0), 1.0),
            Err(Error::AtCriticalValue)
        );
    }

    #[test]
    fn littlewood_examples() {
        let rule = build_rule(32, 64, 2.0).unwrap();
        let half_shift = poly(&[(0.5, 0.0), (0.5, 0.0)]);
        assert!(littlewood_check(&half_shift, 2.0, 0.4, &rule).unwrap() >= -1e-6);
        let p = poly(&[(0.5, 0.0), (0.0, 0.0), (0.3, 0.0)]);
        assert!(littlewood_check(&p, 1.0, 0.3, &rule).unwrap() >= -1e-6);
        let half = poly(&[(0.0, 0.0), (0.5, 0.0)]);
        assert!(matches!(
            littlewood_check(&half, 1.0, 0.1, &rule),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn littlewood_with_interior_preimage_of_origin() {
        // φ(z) = (z + 0.3)/1.4 has φ(0) ≠ 0 and sends -0.3 to 0
        let p = poly(&[(0.3 / 1.4, 0.0), (1.0 / 1.4, 0.0)]);
        let rule = build_rule(64, 256, 2.0).unwrap();
        for gamma in [1.0, 2.0] {
            let m = littlewood_check(&p, gamma, 0.1, &rule).unwrap();
            assert!(m >= -1e-6, "{m}");
        }
    }

    #[test]
    fn change_of_variable_examples() {
        let rule = build_rule(64, 256, 2.0).unwrap();
        let r = change_of_variable_ratio(&Expr::z(), &square(), &rule).unwrap();
        assert!((r - 4.0 / 3.0).abs() < 1e-3, "{r}");
        let k = change_of_variable_ratio(&Expr::real(2.0), &square(), &rule).unwrap();
        assert!((k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sublog_examples() {
        let pts = SupGrid::new(32, 64).unwrap().points();
        for p in [
            poly(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]),
            poly(&[(0.0, 0.0), (0.5, 0.0)]),
            poly(&[(0.0, 0.0), (1.0, 0.0)]),
        ] {
            assert!(sublog_bound_check(&p, &pts).unwrap() >= -1e-6);
        }
        assert!(sublog_bound_check(&poly(&[(0.5, 0.0), (0.5, 0.0)]), &pts).is_err());
    }

    proptest! {
        #[test]
        fn square_counting_closed_form(r in 0.01..0.99f64, theta in 0.0..core::f64::consts::TAU, gamma in 0.5..3.0f64) {
            let w = Complex::from_polar(r, theta);
            let n = counting_function(&square(), w, gamma).unwrap();
            let expected = 2.0 * (0.5 * (1.0 / r).ln()).powf(gamma);
            prop_assert!((n - expected).abs() < 1e-10 * expected.max(1.0));
        }

        #[test]
        fn preimage_residuals(
            c1 in -0.3..0.3f64, c2 in -0.3..0.3f64, c3 in -0.3..0.3f64,
            r in 0.0..0.95f64, theta in 0.0..core::f64::consts::TAU,
        ) {
            let p = PolynomialMap::new(vec![c(c1, 0.0), c(0.3, c2), c(c3, 0.1)]).unwrap();
            let w = Complex::from_polar(r, theta);
            let set = preimages(&p, w).unwrap();
            prop_assert!(set.count() <= 2);
            for (z, _) in set.roots {
                prop_assert!((p.eval(z) - w).norm() < ROOT_RESIDUAL_TOL);
            }
        }
    }
}
