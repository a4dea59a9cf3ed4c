use alloc::vec;
use alloc::vec::Vec;

use super::roots::horner;
use crate::analytic::{validate_self_map, Expr, Node, SelfMapReport, DEFAULT_PROBE_COUNT, DEFAULT_PROBE_RADIUS};
use crate::error::{Error, Result};
use crate::Complex;

/// Degree limit for symbols expanded by [`PolynomialMap::from_expr`].
pub const MAX_POLYNOMIAL_DEGREE: usize = 64;

/// A polynomial self-map `φ(z) = Σ c_k z^k` of the disk with degree ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialMap {
    coefficients: Vec<Complex>,
    report: SelfMapReport,
}

impl PolynomialMap {
    /// Trims negligible leading coefficients and validates the self-map
    /// property.
    pub fn new(mut coefficients: Vec<Complex>) -> Result<Self> {
        let scale = coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coefficients.len() > 1 && coefficients.last().unwrap().norm() <= 1e-15 * scale {
            coefficients.pop();
        }
        if coefficients.len() < 2 {
            return Err(Error::InvalidParameter("polynomial symbol must have degree at least 1"));
        }
        let expr = to_expr(&coefficients);
        let report = validate_self_map(&expr, DEFAULT_PROBE_COUNT, DEFAULT_PROBE_RADIUS)?;
        Ok(PolynomialMap { coefficients, report })
    }

    /// Expands a tree built from `z`, constants, `+ - ×`, integer powers,
    /// composition and division by constants. Anything else is
    /// [`Error::UnsupportedSymbol`].
    pub fn from_expr(e: &Expr) -> Result<Self> {
        PolynomialMap::new(expand(e)?)
    }

    pub fn coefficients(&self) -> &[Complex] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn report(&self) -> &SelfMapReport {
        &self.report
    }

    pub fn at_origin(&self) -> Complex {
        self.coefficients[0]
    }

    pub fn eval(&self, z: Complex) -> Complex {
        horner(&self.coefficients, z).0
    }

    pub fn to_expr(&self) -> Expr {
        to_expr(&self.coefficients)
    }
}

fn to_expr(coefficients: &[Complex]) -> Expr {
    let mut terms = coefficients
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() != 0.0)
        .map(|(k, &c)| {
            let mono = match k {
                0 => return Expr::constant(c),
                1 => Expr::z(),
                k => Expr::z().powi(k as u32),
            };
            if c == Complex::new(1.0, 0.0) {
                mono
            } else {
                Expr::constant(c) * mono
            }
        });
    let first = terms.next().unwrap_or_else(|| Expr::real(0.0));
    terms.fold(first, |acc, t| acc + t)
}

fn check_degree(p: Vec<Complex>) -> Result<Vec<Complex>> {
    if p.len() > MAX_POLYNOMIAL_DEGREE + 1 {
        Err(Error::InvalidParameter("polynomial degree exceeds 64"))
    } else {
        Ok(p)
    }
}

fn add(a: &[Complex], b: &[Complex], sign: f64) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0); a.len().max(b.len())];
    for (k, v) in a.iter().enumerate() {
        out[k] += v;
    }
    for (k, v) in b.iter().enumerate() {
        out[k] += v * sign;
    }
    out
}

fn mul(a: &[Complex], b: &[Complex]) -> Result<Vec<Complex>> {
    let mut out = vec![Complex::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    check_degree(out)
}

fn pow(a: &[Complex], n: u32) -> Result<Vec<Complex>> {
    let mut out = vec![Complex::new(1.0, 0.0)];
    for _ in 0..n {
        out = mul(&out, a)?;
    }
    Ok(out)
}

fn as_constant(p: &[Complex]) -> Option<Complex> {
    if p.iter().skip(1).all(|c| c.norm() == 0.0) {
        Some(p[0])
    } else {
        None
    }
}

fn expand(e: &Expr) -> Result<Vec<Complex>> {
    Ok(match e.node() {
        Node::Var => vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
        Node::Const(c) => vec![*c],
        Node::Add(a, b) => add(&expand(a)?, &expand(b)?, 1.0),
        Node::Sub(a, b) => add(&expand(a)?, &expand(b)?, -1.0),
        Node::Mul(a, b) => mul(&expand(a)?, &expand(b)?)?,
        Node::Neg(a) => expand(a)?.into_iter().map(|c| -c).collect(),
        Node::PowInt(n, a) => pow(&expand(a)?, *n)?,
        Node::Div(a, b) => {
            let d = as_constant(&expand(b)?).ok_or(Error::UnsupportedSymbol)?;
            if d.norm() < crate::analytic::SINGULAR_MODULUS {
                return Err(Error::DivisionNearZero {
                    at: Complex::new(0.0, 0.0),
                });
            }
            expand(a)?.into_iter().map(|c| c / d).collect()
        }
        Node::Compose(f, g) => {
            let (f, g) = (expand(f)?, expand(g)?);
            let mut out = vec![Complex::new(0.0, 0.0)];
            for &c in f.iter().rev() {
                out = add(&mul(&out, &g)?, &[c], 1.0);
            }
            out
        }
        Node::Log(_) | Node::Exp(_) | Node::Mobius(_) => return Err(Error::UnsupportedSymbol),
    })
}
