use alloc::sync::Arc;
use core::fmt;
use core::ops;

use crate::error::{Error, Result};
use crate::Complex;

/// Denominators and logarithm arguments below this modulus are rejected.
pub const SINGULAR_MODULUS: f64 = 1e-300;

/// One node of an [`Expr`] tree.
///
/// Every node denotes a holomorphic function of the single variable `z`.
/// `Compose(f, g)` is `f(g(z))`; `Mobius(a)` is the disk automorphism
/// `σ_a(z) = (a - z) / (1 - ā z)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Var,
    Const(Complex),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    PowInt(u32, Expr),
    Compose(Expr, Expr),
    /// Principal branch.
    Log(Expr),
    Exp(Expr),
    Mobius(Complex),
}

/// Immutable, cheaply clonable expression tree for a holomorphic function on
/// the unit disk.
#[derive(Clone, PartialEq)]
pub struct Expr(Arc<Node>);

impl Expr {
    pub fn new(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Identity of the shared node, used to deduplicate subtrees.
    pub(crate) fn ptr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn z() -> Self {
        Expr::new(Node::Var)
    }

    pub fn constant(c: Complex) -> Self {
        Expr::new(Node::Const(c))
    }

    pub fn real(x: f64) -> Self {
        Expr::constant(Complex::new(x, 0.0))
    }

    /// `σ_a`. Fails unless `|a| < 1`.
    pub fn mobius(a: Complex) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) || a.norm_sqr() >= 1.0 {
            return Err(Error::InvalidParameter("mobius parameter must satisfy |a| < 1"));
        }
        Ok(Expr::new(Node::Mobius(a)))
    }

    pub fn powi(&self, n: u32) -> Self {
        Expr::new(Node::PowInt(n, self.clone()))
    }

    pub fn ln(&self) -> Self {
        Expr::new(Node::Log(self.clone()))
    }

    pub fn exp(&self) -> Self {
        Expr::new(Node::Exp(self.clone()))
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &Expr) -> Self {
        Expr::new(Node::Compose(self.clone(), inner.clone()))
    }

    pub fn as_const(&self) -> Option<Complex> {
        match self.node() {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// Number of nodes, counting shared subtrees once per occurrence.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Var | Node::Const(_) | Node::Mobius(_) => 0,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => a.size() + b.size(),
            Node::Compose(a, b) => a.size() + b.size(),
            Node::Neg(a) | Node::Log(a) | Node::Exp(a) | Node::PowInt(_, a) => a.size(),
        }
    }

    /// Evaluates the tree at `z` by direct recursion.
    ///
    /// This is the reference evaluator; hot loops go through
    /// [`Compiled`](super::Compiled), which must agree with it.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        let v = self.eval_raw(z)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: z })
        }
    }

    fn eval_raw(&self, z: Complex) -> Result<Complex> {
        Ok(match self.node() {
            Node::Var => z,
            Node::Const(c) => *c,
            Node::Add(a, b) => a.eval_raw(z)? + b.eval_raw(z)?,
            Node::Sub(a, b) => a.eval_raw(z)? - b.eval_raw(z)?,
            Node::Mul(a, b) => a.eval_raw(z)? * b.eval_raw(z)?,
            Node::Div(a, b) => {
                let num = a.eval_raw(z)?;
                let den = b.eval_raw(z)?;
                checked_div(num, den, z)?
            }
            Node::Neg(a) => -a.eval_raw(z)?,
            Node::PowInt(n, a) => powu(a.eval_raw(z)?, *n),
            Node::Compose(f, g) => {
                let w = g.eval_raw(z)?;
                f.eval_raw(w)?
            }
            Node::Log(a) => checked_ln(a.eval_raw(z)?, z)?,
            Node::Exp(a) => a.eval_raw(z)?.exp(),
            Node::Mobius(a) => mobius_value(*a, z)?,
        })
    }
}

#[inline]
pub(crate) fn checked_div(num: Complex, den: Complex, at: Complex) -> Result<Complex> {
    if den.norm() < SINGULAR_MODULUS {
        return Err(Error::DivisionNearZero { at });
    }
    Ok(num / den)
}

#[inline]
pub(crate) fn checked_ln(w: Complex, at: Complex) -> Result<Complex> {
    if w.norm() < SINGULAR_MODULUS {
        return Err(Error::LogDomain { at });
    }
    Ok(w.ln())
}

#[inline]
pub(crate) fn mobius_value(a: Complex, z: Complex) -> Result<Complex> {
    let den = Complex::new(1.0, 0.0) - a.conj() * z;
    checked_div(a - z, den, z)
}

/// `w^n` by binary powering.
#[inline]
pub(crate) fn powu(w: Complex, n: u32) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    let mut base = w;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        k >>= 1;
        if k > 0 {
            base = base * base;
        }
    }
    acc
}

macro_rules! binop {
    ($trait:ident, $method:ident, $node:ident) => {
        impl ops::$trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::new(Node::$node(self, rhs))
            }
        }
        impl ops::$trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::new(Node::$node(self.clone(), rhs.clone()))
            }
        }
        impl ops::$trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::new(Node::$node(self, rhs.clone()))
            }
        }
        impl ops::$trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::new(Node::$node(self.clone(), rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::new(Node::Neg(self))
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::new(Node::Neg(self.clone()))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Var => f.write_str("z"),
            Node::Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Node::Const(c) => write!(f, "({}{:+}i)", c.re, c.im),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "{a}*{b}"),
            Node::Div(a, b) => write!(f, "{a}/{b}"),
            Node::Neg(a) => write!(f, "-{a}"),
            Node::PowInt(n, a) => write!(f, "{a}^{n}"),
            Node::Compose(a, b) => write!(f, "{a}∘{b}"),
            Node::Log(a) => write!(f, "log({a})"),
            Node::Exp(a) => write!(f, "exp({a})"),
            Node::Mobius(a) if a.im == 0.0 => write!(f, "σ[{}]", a.re),
            Node::Mobius(a) => write!(f, "σ[{}{:+}i]", a.re, a.im),
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
    fn mobius_at_origin_is_parameter() {
        let f = Expr::mobius(c(0.5, 0.0)).unwrap();
        assert_eq!(f.eval(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn square_of_point() {
        let f = Expr::z().powi(2);
        let v = f.eval(c(0.3, 0.4)).unwrap();
        assert!((v - c(-0.07, 0.24)).norm() < 1e-15);
    }

    #[test]
    fn mobius_is_an_involution() {
        let s = Expr::mobius(c(0.0, 0.3)).unwrap();
        let f = s.compose(&s);
        let z = c(0.2, -0.1);
        assert!((f.eval(z).unwrap() - z).norm() < 1e-15);
    }

    #[test]
    fn mobius_rejects_boundary_parameter() {
        assert!(Expr::mobius(c(1.0, 0.0)).is_err());
        assert!(Expr::mobius(c(0.8, 0.6)).is_err());
        assert!(Expr::mobius(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn division_and_log_guards() {
        let f = Expr::real(1.0) / Expr::z();
        assert!(matches!(f.eval(c(0.0, 0.0)), Err(Error::DivisionNearZero { .. })));
        let g = Expr::z().ln();
        assert!(matches!(g.eval(c(0.0, 0.0)), Err(Error::LogDomain { .. })));
    }

    #[test]
    fn overflow_is_reported() {
        let f = Expr::real(1e300).powi(3);
        assert!(matches!(f.eval(c(0.0, 0.0)), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn binary_power_matches_repeated_product() {
        let w = c(0.7, -0.2);
        let mut p = c(1.0, 0.0);
        for n in 0..40 {
            assert!((powu(w, n) - p).norm() < 1e-14);
            p *= w;
        }
    }
}
