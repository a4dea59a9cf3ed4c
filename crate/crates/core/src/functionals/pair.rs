use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::analytic::{validate_self_map, Compiled, Expr, SelfMapReport, DEFAULT_PROBE_COUNT, DEFAULT_PROBE_RADIUS};
use crate::error::Result;
use crate::math;
use crate::mobius::{sigma, MAX_CENTER_MODULUS};
use crate::Complex;

/// A weight `u` and a validated self-map `φ` of the disk.
#[derive(Debug, Clone)]
pub struct SymbolPair {
    u: Expr,
    phi: Expr,
    u_prog: Compiled,
    du_prog: Compiled,
    phi_prog: Compiled,
    dphi_prog: Compiled,
    report: SelfMapReport,
    u_constant: bool,
}

impl SymbolPair {
    /// Validates `φ` and checks that `u` evaluates on the probe circle.
    pub fn new(u: Expr, phi: Expr) -> Result<Self> {
        let report = validate_self_map(&phi, DEFAULT_PROBE_COUNT, DEFAULT_PROBE_RADIUS)?;
        let du = u.derivative();
        let u_constant = du.as_const() == Some(Complex::new(0.0, 0.0));
        let pair = SymbolPair {
            u_prog: u.compile(),
            du_prog: du.compile(),
            phi_prog: phi.compile(),
            dphi_prog: phi.derivative().compile(),
            u,
            phi,
            report,
            u_constant,
        };
        pair.u(Complex::new(0.0, 0.0))?;
        for k in 0..256 {
            pair.u(Complex::from_polar(DEFAULT_PROBE_RADIUS, 2.0 * PI * k as f64 / 256.0))?;
        }
        Ok(pair)
    }

    pub fn u_expr(&self) -> &Expr {
        &self.u
    }

    pub fn phi_expr(&self) -> &Expr {
        &self.phi
    }

    pub fn report(&self) -> &SelfMapReport {
        &self.report
    }

    pub fn boundary_contact(&self) -> bool {
        self.report.boundary_contact
    }

    /// `u'` vanishes identically.
    pub fn u_is_constant(&self) -> bool {
        self.u_constant
    }

    pub fn u(&self, z: Complex) -> Result<Complex> {
        self.u_prog.eval(z)
    }

    pub fn du(&self, z: Complex) -> Result<Complex> {
        self.du_prog.eval(z)
    }

    pub fn phi(&self, z: Complex) -> Result<Complex> {
        self.phi_prog.eval(z)
    }

    pub fn dphi(&self, z: Complex) -> Result<Complex> {
        self.dphi_prog.eval(z)
    }

    /// `(σ_{φ(a)} ∘ φ ∘ σ_a)(z)`, a self-map fixing the origin.
    pub fn conjugate(&self, a: Complex, phi_a: Complex, z: Complex) -> Result<Complex> {
        Ok(sigma(phi_a, self.phi(sigma(a, z))?))
    }

    /// `u·(f∘φ)` as an expression.
    pub fn apply(&self, f: &Expr) -> Expr {
        let composed = f.compose(&self.phi);
        match self.u.as_const() {
            Some(c) if c == Complex::new(1.0, 0.0) => composed,
            _ => &self.u * composed,
        }
    }

    /// Points `sζ` on the ray through the witness of the self-map report,
    /// with `s = 1 - 10^{-j/8}`, up to the first point where `|φ| ≥ target`.
    /// Empty for strict self-maps.
    pub fn approach_points(&self, target: f64) -> Result<Vec<Complex>> {
        let mut pts = Vec::new();
        if !self.boundary_contact() {
            return Ok(pts);
        }
        let dir = self.report.witness_direction();
        for j in 1..=64 {
            let s = 1.0 - math::powf(10.0, -(j as f64) / 8.0);
            if s > MAX_CENTER_MODULUS {
                break;
            }
            let a = dir * s;
            pts.push(a);
            if self.phi(a)?.norm() >= target {
                break;
            }
        }
        Ok(pts)
    }

    /// Probe hints along the witness ray for suprema that peak near a
    /// boundary contact.
    pub fn ray_hints(&self) -> Vec<Complex> {
        if !self.boundary_contact() {
            return Vec::new();
        }
        let dir = self.report.witness_direction();
        (1..=24)
            .map(|j| dir * (1.0 - math::powf(10.0, -(j as f64) / 4.0)))
            .collect()
    }
}
