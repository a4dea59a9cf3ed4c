//! Disk automorphisms `σ_a(z) = (a - z) / (1 - ā z)` and pseudo-hyperbolic
//! distance.

use crate::analytic::Expr;
use crate::error::{Error, Result};
use crate::Complex;

/// Largest `|a|` accepted by [`make_mobius`].
pub const MAX_CENTER_MODULUS: f64 = 1.0 - 1e-8;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex);

impl DiskPoint {
    pub fn new(value: Complex) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() && value.norm_sqr() < 1.0 {
            Ok(DiskPoint(value))
        } else {
            Err(Error::InvalidParameter("disk point must satisfy |z| < 1"))
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        DiskPoint::new(Complex::from_polar(r, theta))
    }

    pub const fn origin() -> Self {
        DiskPoint(Complex::new(0.0, 0.0))
    }

    pub fn value(self) -> Complex {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

impl From<DiskPoint> for Complex {
    fn from(p: DiskPoint) -> Complex {
        p.0
    }
}

/// `σ_a` as an expression. Rejects `|a| > 1 - 1e-8`.
pub fn make_mobius(a: DiskPoint) -> Result<Expr> {
    if a.modulus() > MAX_CENTER_MODULUS {
        return Err(Error::InvalidParameter("mobius center too close to the boundary"));
    }
    Expr::mobius(a.value())
}

/// `σ_a(z)`.
#[inline]
pub fn sigma(a: Complex, z: Complex) -> Complex {
    (a - z) / (Complex::new(1.0, 0.0) - a.conj() * z)
}

/// `σ_a'(z) = -(1 - |a|²) / (1 - ā z)²`.
#[inline]
pub fn sigma_derivative(a: Complex, z: Complex) -> Complex {
    let d = Complex::new(1.0, 0.0) - a.conj() * z;
    Complex::new(-(1.0 - a.norm_sqr()), 0.0) / (d * d)
}

/// `|σ_w(z)| = |z - w| / |1 - w̄ z|`.
pub fn pseudo_hyperbolic(z: DiskPoint, w: DiskPoint) -> f64 {
    let (z, w) = (z.value(), w.value());
    let num = (z - w).norm();
    let den = (Complex::new(1.0, 0.0) - w.conj() * z).norm();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(c(re, im)).unwrap()
    }

    #[test]
    fn origin_center_is_negation() {
        let s = make_mobius(DiskPoint::origin()).unwrap();
        assert_eq!(s.eval(c(0.3, 0.0)).unwrap(), c(-0.3, 0.0));
    }

    #[test]
    fn center_maps_to_origin() {
        let s = make_mobius(p(0.5, 0.0)).unwrap();
        assert!(s.eval(c(0.5, 0.0)).unwrap().norm() < 1e-16);
    }

    #[test]
    fn schwarz_pick_equality_example() {
        let a = c(0.5, 0.0);
        let z = c(0.2, 0.1);
        let lhs = (1.0 - z.norm_sqr()) * sigma_derivative(a, z).norm();
        let rhs = 1.0 - sigma(a, z).norm_sqr();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn center_limits() {
        assert!(DiskPoint::new(c(1.0, 0.0)).is_err());
        let near = p(1.0 - 1e-9, 0.0);
        assert!(make_mobius(near).is_err());
        assert!(make_mobius(p(1.0 - 2e-8, 0.0)).is_ok());
    }

    #[test]
    fn distance_examples() {
        let a = p(0.3, -0.4);
        assert!((pseudo_hyperbolic(DiskPoint::origin(), a) - 0.5).abs() < 1e-15);
        assert!((pseudo_hyperbolic(p(0.5, 0.0), p(-0.5, 0.0)) - 0.8).abs() < 1e-15);
        assert_eq!(pseudo_hyperbolic(a, a), 0.0);
    }

    fn disk(max: f64) -> impl Strategy<Value = Complex> {
        (0.0..max, 0.0..core::f64::consts::TAU).prop_map(|(r, t)| Complex::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn involution(a in disk(0.95), z in disk(0.95)) {
            prop_assert!((sigma(a, sigma(a, z)) - z).norm() < 1e-12);
        }

        #[test]
        fn symmetric_distance(z in disk(0.999), w in disk(0.999)) {
            let (pz, pw) = (DiskPoint::new(z).unwrap(), DiskPoint::new(w).unwrap());
            prop_assert!((pseudo_hyperbolic(pz, pw) - pseudo_hyperbolic(pw, pz)).abs() < 1e-14);
            prop_assert!(pseudo_hyperbolic(pz, pw) < 1.0);
        }

        #[test]
        fn schwarz_pick_equality(a in disk(0.95), z in disk(0.95)) {
            let lhs = (1.0 - z.norm_sqr()) * sigma_derivative(a, z).norm();
            let rhs = 1.0 - sigma(a, z).norm_sqr();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn expression_matches_closed_form(a in disk(0.95), z in disk(0.95)) {
            let s = make_mobius(DiskPoint::new(a).unwrap()).unwrap();
            prop_assert!((s.eval(z).unwrap() - sigma(a, z)).norm() < 1e-14);
            prop_assert!((s.derivative().eval(z).unwrap() - sigma_derivative(a, z)).norm() < 1e-12);
        }
    }
}
