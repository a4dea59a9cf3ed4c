use alloc::vec::Vec;
use core::f64::consts::PI;

use super::Expr;
use crate::error::{Error, Result};
use crate::math;
use crate::Complex;

/// Default sampling radius for [`taylor_truncate`].
pub const DEFAULT_FIT_RADIUS: f64 = 0.75;
pub const MAX_TAYLOR_DEGREE: usize = 512;

/// Residual above which the fit is rejected.
const REJECT_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    /// `c_0, …, c_N`.
    pub coefficients: Vec<Complex>,
    /// `max |f - Σ c_k z^k|` on the circle of half the fitting radius.
    pub residual: f64,
}

impl TaylorSeries {
    pub fn eval(&self, z: Complex) -> Complex {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

/// Recovers `c_0..c_n` from samples of `f` on `|z| = r_fit` by a discrete
/// Fourier transform.
///
/// Coefficient estimates whose contribution `|c_k| r_fit^k` sits below the
/// round-off floor of the samples are set to zero; dividing them by `r_fit^k`
/// would only amplify noise.
pub fn taylor_truncate(f: &Expr, n: usize, r_fit: f64) -> Result<TaylorSeries> {
    if n > MAX_TAYLOR_DEGREE {
        return Err(Error::InvalidParameter("taylor degree must not exceed 512"));
    }
    if !(r_fit > 0.0 && r_fit < 1.0) {
        return Err(Error::InvalidParameter("fitting radius must lie in (0, 1)"));
    }
    let prog = f.compile();
    let samples_len = (4 * (n + 1)).next_power_of_two().max(256);
    let step = 2.0 * PI / samples_len as f64;
    let unit: Vec<Complex> = (0..samples_len)
        .map(|j| Complex::from_polar(1.0, step * j as f64))
        .collect();
    let values: Vec<Complex> = unit.iter().map(|&e| prog.eval(e * r_fit)).collect::<Result<_>>()?;
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 1e-14 * scale.max(f64::MIN_POSITIVE);

    let mut coefficients = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = Complex::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            // e^{-ikθ_j}, indexed modulo the sample count
            acc += v * unit[(k * j) % samples_len].conj();
        }
        let moment = acc / samples_len as f64;
        let c = if moment.norm() <= floor {
            Complex::new(0.0, 0.0)
        } else {
            moment / math::powi(r_fit, k as i32)
        };
        coefficients.push(c);
    }

    let mut series = TaylorSeries {
        coefficients,
        residual: 0.0,
    };
    let check_radius = r_fit / 2.0;
    let mut residual: f64 = 0.0;
    for j in 0..64 {
        let z = Complex::from_polar(check_radius, 2.0 * PI * (j as f64 + 0.5) / 64.0);
        residual = residual.max((prog.eval(z)? - series.eval(z)).norm());
    }
    series.residual = residual;
    if residual > REJECT_RESIDUAL {
        return Err(Error::PoorConvergence { residual });
    }
    Ok(series)
}
