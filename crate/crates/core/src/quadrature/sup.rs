use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;
use crate::par::{self, Shareable};
use crate::Complex;

/// Outermost probe radius for suprema over the disk.
pub const SUP_RADIUS_CAP: f64 = 1.0 - 1e-6;

const REFINE_STEP_TOL: f64 = 1e-10;
const REFINE_MAX_ITER: usize = 200;
const REFINE_STARTS: usize = 3;

/// Polar probe grid for [`disk_sup`].
///
/// Half of the radii are uniform on `[0, 0.9]`; the other half have `1 - r`
/// log-spaced from `0.1` down to `1 - SUP_RADIUS_CAP`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupGrid {
    radii: Vec<f64>,
    angular: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupResult {
    pub value: f64,
    pub argmax: Complex,
    /// The refinement met its step tolerance at an interior point.
    pub converged: bool,
}

impl SupGrid {
    pub fn new(radial: usize, angular: usize) -> Result<Self> {
        if radial < 4 || angular < 4 {
            return Err(Error::InvalidParameter("sup grid needs at least 4 radii and 4 angles"));
        }
        let inner = radial / 2;
        let outer = radial - inner;
        let mut radii = Vec::with_capacity(radial + 1);
        for k in 0..inner {
            radii.push(0.9 * k as f64 / inner as f64);
        }
        let (lo, hi) = (math::ln(0.1), math::ln(1.0 - SUP_RADIUS_CAP));
        for k in 0..outer {
            let t = k as f64 / (outer - 1).max(1) as f64;
            radii.push(1.0 - math::exp(lo + t * (hi - lo)));
        }
        Ok(SupGrid { radii, angular })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular
    }

    fn angle_step(&self) -> f64 {
        2.0 * PI / self.angular as f64
    }

    /// Grid points in ring-major order; the origin appears once.
    pub fn points(&self) -> Vec<Complex> {
        let step = self.angle_step();
        let mut pts = Vec::with_capacity(self.radii.len() * self.angular);
        for &r in &self.radii {
            if r == 0.0 {
                pts.push(Complex::new(0.0, 0.0));
                continue;
            }
            pts.extend((0..self.angular).map(|k| Complex::from_polar(r, step * k as f64)));
        }
        pts
    }
}

/// Supremum of `g` over the disk of radius [`SUP_RADIUS_CAP`].
pub fn disk_sup<G>(g: G, grid: &SupGrid, refine: bool) -> Result<SupResult>
where
    G: Fn(Complex) -> Result<f64> + Shareable,
{
    disk_sup_with_hints(g, grid, refine, &[])
}

/// [`disk_sup`] with extra probe points evaluated alongside the grid.
pub fn disk_sup_with_hints<G>(g: G, grid: &SupGrid, refine: bool, hints: &[Complex]) -> Result<SupResult>
where
    G: Fn(Complex) -> Result<f64> + Shareable,
{
    let mut pts = grid.points();
    pts.extend(hints.iter().filter(|h| h.norm() <= SUP_RADIUS_CAP));
    let values: Vec<f64> = par::map(&pts, |&z| checked(&g, z)).into_iter().collect::<Result<_>>()?;

    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let coarse = SupResult {
        value: values[order[0]],
        argmax: pts[order[0]],
        converged: false,
    };
    if !refine {
        return Ok(coarse);
    }
    let d_rho = 0.25 * math::ln(1.0 / (1.0 - SUP_RADIUS_CAP)) / grid.radii.len() as f64;
    let d_theta = grid.angle_step();
    // the search never moves downhill, so the best start dominates the grid
    let mut best = coarse;
    for (k, &i) in order.iter().take(REFINE_STARTS).enumerate() {
        let found = pattern_search(&g, pts[i], d_rho, d_theta, SUP_RADIUS_CAP, REFINE_MAX_ITER)?;
        if k == 0 || found.value > best.value {
            best = found;
        }
    }
    Ok(best)
}

fn checked<G: Fn(Complex) -> Result<f64>>(g: &G, z: Complex) -> Result<f64> {
    let v = g(z)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: z })
    }
}

/// Compass search for a local maximum in the coordinates
/// `(ρ, θ) = (-ln(1 - r), arg z)`, which shrink steps near the boundary.
///
/// Stops when both steps fall below `1e-10` or after `max_iter` polls.
/// `converged` is false when the iteration limit was hit or the maximizer sits
/// on the radius cap.
pub(crate) fn pattern_search<G>(
    g: &G,
    start: Complex,
    d_rho: f64,
    d_theta: f64,
    cap: f64,
    max_iter: usize,
) -> Result<SupResult>
where
    G: Fn(Complex) -> Result<f64>,
{
    let rho_cap = -math::ln(1.0 - cap);
    let to_z = |rho: f64, theta: f64| Complex::from_polar(1.0 - math::exp(-rho), theta);
    let mut rho = (-math::ln(1.0 - start.norm().min(cap))).clamp(0.0, rho_cap);
    let mut theta = math::atan2(start.im, start.re);
    let mut value = checked(g, to_z(rho, theta))?;
    let (mut sr, mut st) = (d_rho, d_theta);
    let mut converged = false;
    for _ in 0..max_iter {
        if sr < REFINE_STEP_TOL && st < REFINE_STEP_TOL {
            converged = true;
            break;
        }
        let mut moved = false;
        for (dr, dt) in [(sr, 0.0), (-sr, 0.0), (0.0, st), (0.0, -st)] {
            let (nr, nt) = ((rho + dr).clamp(0.0, rho_cap), theta + dt);
            if nr == rho && dt == 0.0 {
                continue;
            }
            let v = checked(g, to_z(nr, nt))?;
            if v > value {
                value = v;
                rho = nr;
                theta = nt;
                moved = true;
                break;
            }
        }
        if !moved {
            sr *= 0.5;
            st *= 0.5;
        }
    }
    if rho >= rho_cap {
        converged = false;
    }
    Ok(SupResult {
        value,
        argmax: to_z(rho, theta),
        converged,
    })
}

/// Default radii of the `a`-grid.
pub const A_GRID_RADII: [f64; 8] = [0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.99, 0.999];

/// Polar grid of parameters `a` for suprema of the form `sup_a F(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AGrid {
    radii: Vec<f64>,
    angular: usize,
    extra: Vec<Complex>,
}

impl AGrid {
    /// The first `levels` default radii; more than eight levels continue with
    /// `1 - 10^{-k}`.
    pub fn new(levels: usize, angular: usize) -> Result<Self> {
        if levels == 0 || angular == 0 {
            return Err(Error::InvalidParameter("a-grid needs at least one level and one angle"));
        }
        let mut radii: Vec<f64> = A_GRID_RADII.iter().copied().take(levels).collect();
        for k in 4..(4 + levels.saturating_sub(A_GRID_RADII.len())) {
            radii.push(1.0 - math::powi(10.0, -(k as i32)));
        }
        Ok(AGrid {
            radii,
            angular,
            extra: Vec::new(),
        })
    }

    pub fn default_grid() -> Self {
        AGrid::new(A_GRID_RADII.len(), 64).unwrap()
    }

    /// Adds points that are probed together with the polar grid.
    pub fn with_extra(mut self, points: impl IntoIterator<Item = Complex>) -> Self {
        self.extra.extend(points);
        self
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    /// Grid points in ring-major order (origin once), then the extra points.
    pub fn points(&self) -> Vec<Complex> {
        let step = 2.0 * PI / self.angular as f64;
        let mut pts = Vec::new();
        for &r in &self.radii {
            if r == 0.0 {
                pts.push(Complex::new(0.0, 0.0));
            } else {
                pts.extend((0..self.angular).map(|k| Complex::from_polar(r, step * k as f64)));
            }
        }
        pts.extend(self.extra.iter().copied());
        pts
    }
}

/// Maximum of `f` over an `a`-grid followed by a short local refinement that
/// stays inside the grid's outer radius.
pub fn grid_sup<F>(f: F, grid: &AGrid, refine_iters: usize) -> Result<SupResult>
where
    F: Fn(Complex) -> Result<f64> + Shareable,
{
    let pts = grid.points();
    let values: Vec<f64> = par::map(&pts, |&a| checked(&f, a)).into_iter().collect::<Result<_>>()?;
    let mut k = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[k] {
            k = i;
        }
    }
    let coarse = SupResult {
        value: values[k],
        argmax: pts[k],
        converged: refine_iters == 0,
    };
    if refine_iters == 0 {
        return Ok(coarse);
    }
    let cap = grid.max_radius().max(pts[k].norm());
    if cap <= 0.0 {
        return Ok(coarse);
    }
    let found = pattern_search(
        &f,
        pts[k],
        0.25,
        2.0 * PI / grid.angular as f64 / 4.0,
        cap,
        refine_iters,
    )?;
    Ok(if found.value > coarse.value {
        found
    } else {
        SupResult {
            converged: found.converged,
            ..coarse
        }
    })
}
