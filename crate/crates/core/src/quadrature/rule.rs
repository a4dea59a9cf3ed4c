use alloc::vec::Vec;
use core::f64::consts::PI;

use super::legendre::gauss_legendre;
use crate::error::{Error, Result};
use crate::math::{self, Neumaier};
use crate::par::{self, Shareable};
use crate::Complex;

/// Tensor rule for `∫_𝔻 g dA` with `dA = dx dy / π`.
///
/// Radial nodes are Gauss–Legendre in `s ∈ [0, 1]` mapped by
/// `r = 1 - (1 - s)^q`; angular nodes are uniform, offset by half a step.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskRule {
    radii: Vec<f64>,
    /// Ring masses; they sum to one.
    ring_weights: Vec<f64>,
    angular: usize,
    grading: f64,
}

/// Shape of a rule, carried into reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleMeta {
    pub radial: usize,
    pub angular: usize,
    pub grading: f64,
}

/// Nodes per segment in [`level_set_integrals`].
const SEGMENT_NODES: usize = 24;

pub fn build_rule(n_r: usize, angular: usize, q: f64) -> Result<DiskRule> {
    if n_r < 16 {
        return Err(Error::InvalidParameter("rule needs at least 16 radial nodes"));
    }
    if angular < 64 {
        return Err(Error::InvalidParameter("rule needs at least 64 angular nodes"));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter("grading exponent must be at least 1"));
    }
    let (x, w) = gauss_legendre(n_r);
    let mut radii = Vec::with_capacity(n_r);
    let mut ring_weights = Vec::with_capacity(n_r);
    for (x, w) in x.iter().zip(&w) {
        let s = 0.5 * (x + 1.0);
        let r = 1.0 - math::powf(1.0 - s, q);
        // d(r²) = 2 r dr, dr/ds = q (1 - s)^{q-1}, ds = dx / 2
        ring_weights.push(r * q * math::powf(1.0 - s, q - 1.0) * w);
        radii.push(r);
    }
    // exact for integer q; absorbs the Jacobian's quadrature error otherwise
    let total = math::sum(ring_weights.iter().copied());
    for w in &mut ring_weights {
        *w /= total;
    }
    Ok(DiskRule {
        radii,
        ring_weights,
        angular,
        grading: q,
    })
}

impl DiskRule {
    pub fn radial_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.radii.iter().copied().zip(self.ring_weights.iter().copied())
    }

    pub fn angular_count(&self) -> usize {
        self.angular
    }

    pub fn grading_exponent(&self) -> f64 {
        self.grading
    }

    pub fn meta(&self) -> RuleMeta {
        RuleMeta {
            radial: self.radii.len(),
            angular: self.angular,
            grading: self.grading,
        }
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angular
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn angle(&self, m: usize) -> f64 {
        2.0 * PI * (m as f64 + 0.5) / self.angular as f64
    }

    /// Unit vectors of the angular nodes.
    pub fn directions(&self) -> Vec<Complex> {
        (0..self.angular)
            .map(|m| Complex::from_polar(1.0, self.angle(m)))
            .collect()
    }

    /// All `(node, weight)` pairs in ring-major order.
    pub fn nodes(&self) -> impl Iterator<Item = (Complex, f64)> + '_ {
        let dirs = self.directions();
        let m = self.angular as f64;
        self.radial_nodes().flat_map(move |(r, w)| {
            let dirs = dirs.clone();
            (0..dirs.len()).map(move |k| (dirs[k] * r, w / m))
        })
    }

    /// `s = 1 - (1 - r)^{1/q}`, inverse of the radial map.
    fn s_of(&self, r: f64) -> f64 {
        1.0 - math::powf(1.0 - r, 1.0 / self.grading)
    }

    fn r_of(&self, s: f64) -> f64 {
        1.0 - math::powf(1.0 - s, self.grading)
    }

    fn dr_ds(&self, s: f64) -> f64 {
        self.grading * math::powf(1.0 - s, self.grading - 1.0)
    }
}

fn finite(v: f64, node: Complex) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { node })
    }
}

/// `∫_𝔻 g dA` by `rule`. Rings are summed with compensation and reduced in
/// radial order, so the result does not depend on the thread count.
pub fn disk_integrate<G>(g: G, rule: &DiskRule) -> Result<f64>
where
    G: Fn(Complex) -> f64 + Shareable,
{
    try_disk_integrate(|z| Ok(g(z)), rule)
}

/// [`disk_integrate`] for integrands whose evaluation can fail.
pub fn try_disk_integrate<G>(g: G, rule: &DiskRule) -> Result<f64>
where
    G: Fn(Complex) -> Result<f64> + Shareable,
{
    let dirs = rule.directions();
    let rings = par::map_range(rule.radii.len(), |j| -> Result<f64> {
        let r = rule.radii[j];
        let mut acc = Neumaier::default();
        for d in &dirs {
            let z = d * r;
            acc.add(finite(g(z)?, z)?);
        }
        Ok(acc.total() * rule.ring_weights[j] / rule.angular as f64)
    });
    let mut total = Neumaier::default();
    for ring in rings {
        total.add(ring?);
    }
    Ok(total.total())
}

/// `∫_{E_t} w dA` for every threshold `t`, where `E_t = {level > t}`.
///
/// Each angular ray is sampled at the rule's radii; crossings of `level = t`
/// are located by bisection and every sub-interval inside `E_t` is integrated
/// with its own Gauss–Legendre rule in the graded variable. This resolves thin
/// boundary sets far better than weighting nodes by an indicator.
pub fn level_set_integrals<L, W>(level: L, weight: W, thresholds: &[f64], rule: &DiskRule) -> Result<Vec<f64>>
where
    L: Fn(Complex) -> Result<f64> + Shareable,
    W: Fn(Complex) -> Result<f64> + Shareable,
{
    let (gx, gw) = gauss_legendre(SEGMENT_NODES);
    let dirs = rule.directions();
    let rays = par::map(&dirs, |&dir| -> Result<Vec<f64>> {
        let mut radii = Vec::with_capacity(rule.radii.len() + 1);
        radii.push(0.0);
        radii.extend_from_slice(&rule.radii);
        let samples: Vec<f64> = radii
            .iter()
            .map(|&r| level(dir * r).and_then(|v| finite(v, dir * r)))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(thresholds.len());
        for &t in thresholds {
            let mut acc = Neumaier::default();
            let mut start: Option<f64> = if samples[0] > t { Some(0.0) } else { None };
            for i in 1..radii.len() {
                let inside = samples[i] > t;
                match (start, inside) {
                    (None, true) => {
                        start = Some(crossing(&level, dir, radii[i - 1], radii[i], t)?);
                    }
                    (Some(a), false) => {
                        let b = crossing(&level, dir, radii[i - 1], radii[i], t)?;
                        acc.add(segment(&weight, rule, dir, a, b, &gx, &gw)?);
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some(a) = start {
                acc.add(segment(&weight, rule, dir, a, 1.0, &gx, &gw)?);
            }
            out.push(acc.total());
        }
        Ok(out)
    });
    let mut totals = alloc::vec![Neumaier::default(); thresholds.len()];
    for ray in rays {
        for (acc, v) in totals.iter_mut().zip(ray?) {
            acc.add(v);
        }
    }
    let m = rule.angular as f64;
    Ok(totals.iter().map(|a| 2.0 * a.total() / m).collect())
}

/// Radius in `[lo, hi]` where `level` crosses `t` along `dir`.
fn crossing<L>(level: &L, dir: Complex, lo: f64, hi: f64, t: f64) -> Result<f64>
where
    L: Fn(Complex) -> Result<f64>,
{
    let lo_inside = level(dir * lo)? > t;
    let (mut a, mut b) = (lo, hi);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (level(dir * mid)? > t) == lo_inside {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// `∫_a^b w(r·dir) r dr` in the graded variable.
fn segment<W>(weight: &W, rule: &DiskRule, dir: Complex, a: f64, b: f64, gx: &[f64], gw: &[f64]) -> Result<f64>
where
    W: Fn(Complex) -> Result<f64>,
{
    let (sa, sb) = (rule.s_of(a), rule.s_of(b));
    let half = 0.5 * (sb - sa);
    let mut acc = Neumaier::default();
    for (x, w) in gx.iter().zip(gw) {
        let s = sa + half * (x + 1.0);
        let r = rule.r_of(s);
        let z = dir * r;
        let v = finite(weight(z)?, z)?;
        acc.add(w * v * r * rule.dr_ds(s));
    }
    Ok(acc.total() * half)
}
