//! Symbolic differentiation.
//!
//! Rules are applied per node kind. Constant operands are folded on the fly
//! (`0·f → 0`, `1·f → f`, `0 + f → f`, constant ∘ g → constant) so that
//! derivatives of long products stay linear in the size of the input.

use super::expr::{Expr, Node};
use crate::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

fn konst(c: Complex) -> Expr {
    Expr::constant(c)
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => konst(x + y),
        (Some(x), _) if x == ZERO => b,
        (_, Some(y)) if y == ZERO => a,
        _ => a + b,
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => konst(x - y),
        (_, Some(y)) if y == ZERO => a,
        (Some(x), _) if x == ZERO => neg(b),
        _ => a - b,
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => konst(x * y),
        (Some(x), _) | (_, Some(x)) if x == ZERO => konst(ZERO),
        (Some(x), _) if x == ONE => b,
        (_, Some(y)) if y == ONE => a,
        _ => a * b,
    }
}

fn neg(a: Expr) -> Expr {
    match a.as_const() {
        Some(x) => konst(-x),
        None => -a,
    }
}

impl Expr {
    /// Returns `g` with `g(z) = f'(z)` wherever `f` is holomorphic.
    pub fn derivative(&self) -> Expr {
        match self.node() {
            Node::Var => konst(ONE),
            Node::Const(_) => konst(ZERO),
            Node::Add(a, b) => add(a.derivative(), b.derivative()),
            Node::Sub(a, b) => sub(a.derivative(), b.derivative()),
            Node::Mul(a, b) => add(mul(a.derivative(), b.clone()), mul(a.clone(), b.derivative())),
            Node::Div(a, b) => {
                let da = a.derivative();
                let db = b.derivative();
                if db.as_const() == Some(ZERO) {
                    // quotient by a constant denominator
                    return match da.as_const() {
                        Some(x) if x == ZERO => konst(ZERO),
                        _ => da / b.clone(),
                    };
                }
                let num = sub(mul(da, b.clone()), mul(a.clone(), db));
                num / b.powi(2)
            }
            Node::Neg(a) => neg(a.derivative()),
            Node::PowInt(n, a) => match *n {
                0 => konst(ZERO),
                1 => a.derivative(),
                n => {
                    let lower = if n == 2 { a.clone() } else { a.powi(n - 1) };
                    mul(mul(konst(Complex::new(n as f64, 0.0)), lower), a.derivative())
                }
            },
            Node::Compose(f, g) => {
                let df = f.derivative();
                let outer = match df.as_const() {
                    Some(c) => konst(c),
                    None => df.compose(g),
                };
                mul(outer, g.derivative())
            }
            Node::Log(a) => {
                let da = a.derivative();
                match da.as_const() {
                    Some(x) if x == ZERO => konst(ZERO),
                    _ => da / a.clone(),
                }
            }
            Node::Exp(a) => mul(self.clone(), a.derivative()),
            Node::Mobius(a) => {
                // σ_a'(z) = -(1 - |a|²) / (1 - ā z)²
                let scale = konst(Complex::new(-(1.0 - a.norm_sqr()), 0.0));
                let den = konst(ONE) - konst(a.conj()) * Expr::z();
                scale / den.powi(2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn cube_derivative() {
        let g = Expr::z().powi(3).derivative();
        assert!((g.eval(c(0.5, 0.0)).unwrap() - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mobius_derivative_at_origin() {
        let g = Expr::mobius(c(0.5, 0.0)).unwrap().derivative();
        assert!((g.eval(c(0.0, 0.0)).unwrap() - c(-0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn log_test_function_derivative() {
        // log(2 / (1 - c̄ z)) with c = 0.5 has derivative c̄ / (1 - c̄ z)
        let cbar = c(0.5, 0.0);
        let h = (Expr::real(2.0) / (Expr::real(1.0) - Expr::constant(cbar) * Expr::z())).ln();
        let g = h.derivative();
        assert!((g.eval(c(0.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let z = c(0.3, -0.2);
        let expected = cbar / (c(1.0, 0.0) - cbar * z);
        assert!((g.eval(z).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn constant_folding_keeps_power_derivatives_small() {
        let phi = Expr::z() * Expr::real(0.5);
        let f = Expr::real(1.0) * phi.powi(200);
        let d = f.derivative();
        assert!(d.size() < 20, "size {}", d.size());
    }

    #[test]
    fn derivative_of_constant_composition_is_zero() {
        let f = Expr::real(3.0).compose(&Expr::z().exp());
        assert_eq!(f.derivative().as_const(), Some(ZERO));
    }
}
