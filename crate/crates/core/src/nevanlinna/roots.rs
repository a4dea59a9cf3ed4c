//! Polynomial roots as eigenvalues of the companion matrix.
//!
//! The companion matrix is already upper Hessenberg, so we run complex
//! single-shift QR directly on it: Wilkinson shifts, Givens rotations, and
//! deflation of negligible subdiagonal entries.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// All roots of `Σ c_k z^k`, which must have a nonzero leading coefficient.
pub fn polynomial_roots(coefficients: &[Complex]) -> Result<Vec<Complex>> {
    let d = coefficients.len().saturating_sub(1);
    let lead = *coefficients.last().ok_or(Error::InvalidParameter("empty polynomial"))?;
    if lead == ZERO {
        return Err(Error::InvalidParameter("leading coefficient must be nonzero"));
    }
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-coefficients[0] / lead]),
        _ => {}
    }
    // first row holds -c_{d-1}/c_d, ..., -c_0/c_d
    let mut h = vec![vec![ZERO; d]; d];
    for j in 0..d {
        h[0][j] = -coefficients[d - 1 - j] / lead;
    }
    for i in 1..d {
        h[i][i - 1] = Complex::new(1.0, 0.0);
    }
    hessenberg_eigenvalues(h)
}

fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex>>) -> Result<Vec<Complex>> {
    let n = h.len();
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let mut rot: Vec<(Complex, Complex)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig.push(h[0][0]);
            break;
        }
        let mut l = hi;
        while l > 0 {
            let scale = h[l][l].norm() + h[l - 1][l - 1].norm();
            if h[l][l - 1].norm() <= f64::EPSILON * scale.max(f64::MIN_POSITIVE) {
                h[l][l - 1] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(h[hi][hi]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 60 * n {
            return Err(Error::IllConditioned {
                residual: h[hi][hi - 1].norm(),
            });
        }
        let mu = if iter % 11 == 10 {
            // exceptional shift breaks cycles
            h[hi][hi] + Complex::new(0.75 * h[hi][hi - 1].norm(), 0.5 * h[hi][hi - 1].norm())
        } else {
            wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for k in l..=hi {
            h[k][k] -= mu;
        }
        rot.clear();
        for k in l..hi {
            let (x, y) = (h[k][k], h[k + 1][k]);
            let r = math::sqrt(x.norm_sqr() + y.norm_sqr());
            let (c, s) = if r == 0.0 {
                (Complex::new(1.0, 0.0), ZERO)
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let (a, b) = (h[k][j], h[k + 1][j]);
                h[k][j] = c.conj() * a + s.conj() * b;
                h[k + 1][j] = -s * a + c * b;
            }
            rot.push((c, s));
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = l + idx;
            for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(l) {
                let (a, b) = (row[k], row[k + 1]);
                row[k] = a * c + b * s;
                row[k + 1] = -a * s.conj() + b * c.conj();
            }
        }
        for k in l..=hi {
            h[k][k] += mu;
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let (m1, m2) = (half_tr + disc, half_tr - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// `(p(z), p'(z))` by Horner.
pub(crate) fn horner(coefficients: &[Complex], z: Complex) -> (Complex, Complex) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coefficients.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}
