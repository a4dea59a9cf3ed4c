use alloc::vec::Vec;
use core::f64::consts::PI;

use super::Expr;
use crate::error::{Error, Result};
use crate::math;
use crate::Complex;

/// Slack on `sup |φ| ≤ 1`.
pub const TOL_SELF_MAP: f64 = 1e-9;
/// `sup |φ|` above `1 - TOL_BOUNDARY` counts as boundary contact.
pub const TOL_BOUNDARY: f64 = 1e-3;
/// Default probe radius.
pub const DEFAULT_PROBE_RADIUS: f64 = 1.0 - 1e-6;
/// Default number of angular probes.
pub const DEFAULT_PROBE_COUNT: usize = 1024;

/// Outcome of [`validate_self_map`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfMapReport {
    pub is_self_map: bool,
    pub sup_modulus: f64,
    pub boundary_contact: bool,
    /// Probe point where the maximum modulus was found.
    pub witness: Complex,
}

impl SelfMapReport {
    /// Direction of the witness on the unit circle.
    pub fn witness_direction(&self) -> Complex {
        let n = self.witness.norm();
        if n > 0.0 {
            self.witness / n
        } else {
            Complex::new(1.0, 0.0)
        }
    }
}

/// Checks `φ(𝔻) ⊆ 𝔻` by sampling `|φ|` on the circle of radius `r_probe`
/// and refining the best samples in angle. By the maximum principle this
/// bounds `|φ|` on the whole disk of that radius.
pub fn validate_self_map(phi: &Expr, angular: usize, r_probe: f64) -> Result<SelfMapReport> {
    if angular < 256 {
        return Err(Error::InvalidParameter("self-map probe needs at least 256 angles"));
    }
    if !(r_probe > 0.0 && r_probe < 1.0) {
        return Err(Error::InvalidParameter("probe radius must lie in (0, 1)"));
    }
    let prog = phi.compile();
    let step = 2.0 * PI / angular as f64;
    let modulus = |theta: f64| -> Result<f64> {
        let z = Complex::from_polar(r_probe, theta);
        Ok(prog.eval(z)?.norm())
    };
    let samples: Vec<f64> = (0..angular).map(|k| modulus(step * k as f64)).collect::<Result<_>>()?;

    // refine every local maximum among the eight largest samples
    let mut order: Vec<usize> = (0..angular).collect();
    order.sort_by(|&i, &j| samples[j].total_cmp(&samples[i]).then(i.cmp(&j)));
    let mut best_theta = step * order[0] as f64;
    let mut best = samples[order[0]];
    for &k in order.iter().take(8) {
        let prev = samples[(k + angular - 1) % angular];
        let next = samples[(k + 1) % angular];
        if samples[k] < prev || samples[k] < next {
            continue;
        }
        let (theta, value) = golden_max(&modulus, step * k as f64 - step, step * k as f64 + step)?;
        if value > best {
            best = value;
            best_theta = theta;
        }
    }

    let witness = Complex::from_polar(r_probe, best_theta);
    if best > 1.0 + TOL_SELF_MAP {
        return Err(Error::NotSelfMap {
            sup_modulus: best,
            witness,
        });
    }
    Ok(SelfMapReport {
        is_self_map: true,
        sup_modulus: best,
        boundary_contact: best > 1.0 - TOL_BOUNDARY,
        witness,
    })
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden_max(f: &impl Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let ratio = (math::sqrt(5.0) - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..80 {
        if b - a < 1e-13 {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}
