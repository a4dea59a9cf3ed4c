//! Holomorphic functions on the unit disk as expression trees.

mod compiled;
mod diff;
mod expr;
mod selfmap;
mod taylor;

pub use compiled::Compiled;
pub use expr::{Expr, Node, SINGULAR_MODULUS};
pub use selfmap::{
    validate_self_map, SelfMapReport, DEFAULT_PROBE_COUNT, DEFAULT_PROBE_RADIUS, TOL_BOUNDARY, TOL_SELF_MAP,
};
pub use taylor::{taylor_truncate, TaylorSeries, DEFAULT_FIT_RADIUS, MAX_TAYLOR_DEGREE};

use crate::error::Result;
use crate::Complex;

/// Evaluates `f` at `z`.
pub fn eval(f: &Expr, z: Complex) -> Result<Complex> {
    f.eval(z)
}

/// Symbolic derivative of `f`.
pub fn derivative(f: &Expr) -> Expr {
    f.derivative()
}
