//! Numerical estimates for weighted composition operators `f ↦ u·(f∘φ)` on the
//! Bloch space of the unit disk.
//!
//! The crate is `no_std` (with `alloc`). Enable `std` to use the platform math
//! library and `parallel` to spread grid and quadrature jobs over a rayon pool.
//! Parallel jobs are always reduced in a fixed order, so results do not depend
//! on the number of threads.
//!
//! Layout:
//!
//! - [`analytic`]: expression trees for holomorphic functions, evaluation,
//!   symbolic derivatives, self-map validation and Taylor coefficients.
//! - [`mobius`]: disk automorphisms and the pseudo-hyperbolic distance.
//! - [`quadrature`]: tensor rules for normalized area measure and suprema over
//!   the disk.
//! - [`norms`]: Bloch, Bergman and Möbius-invariant norms.
//! - [`nevanlinna`]: generalized counting functions for polynomial symbols.
//! - [`functionals`]: the `α`/`β` functionals, test families, power norms,
//!   level-set moments, boundary limsup approximants and the inequality audit.
//! - [`estimators`]: norm and essential-norm estimators and the
//!   boundedness/compactness classifier.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analytic;
pub mod config;
pub mod error;
pub mod estimators;
pub mod functionals;
mod math;
pub mod mobius;
pub mod nevanlinna;
pub mod norms;
pub mod par;
pub mod quadrature;

pub use analytic::{Expr, Node, SelfMapReport};
pub use config::Config;
pub use error::{Error, Result};
pub use mobius::DiskPoint;
pub use quadrature::{DiskRule, SupGrid, SupResult};

pub use par::Shareable;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
