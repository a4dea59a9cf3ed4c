//! Cross-module invariants on random inputs.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use bloch_wco_core::functionals::{alpha, beta, conjugate_norm, SymbolPair};
use bloch_wco_core::mobius::sigma;
use bloch_wco_core::nevanlinna::{counting_function, PolynomialMap};
use bloch_wco_core::norms::{ap_norm, bloch_seminorm_with_hints};
use bloch_wco_core::quadrature::{build_rule, disk_integrate, SupGrid};
use bloch_wco_core::{Complex, DiskPoint, Expr};
use proptest::prelude::*;

fn disk(max: f64) -> impl Strategy<Value = Complex> {
    (0.0..max, 0.0..TAU).prop_map(|(r, t)| Complex::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // σ_{φ(a)}∘σ_b∘σ_a is a rotation, so its A² norm is that of z
    #[test]
    fn automorphism_conjugates_are_rotations(b in disk(0.8), a in disk(0.9)) {
        let rule = build_rule(24, 64, 2.0).unwrap();
        let pair = SymbolPair::new(Expr::real(1.0), Expr::mobius(b).unwrap()).unwrap();
        let p = DiskPoint::new(a).unwrap();
        let n = conjugate_norm(&pair, p, &rule).unwrap();
        prop_assert!((n - FRAC_1_SQRT_2).abs() < 1e-9, "{n}");
        prop_assert!((alpha(&pair, p, &rule).unwrap() - n).abs() < 1e-15);
        prop_assert_eq!(beta(&pair, p, &rule).unwrap(), 0.0);
    }

    // with u(z) = z and φ = id, α(a) = |a| / √2
    #[test]
    fn alpha_scales_with_weight(a in disk(0.95)) {
        let rule = build_rule(24, 64, 2.0).unwrap();
        let pair = SymbolPair::new(Expr::z(), Expr::z()).unwrap();
        let v = alpha(&pair, DiskPoint::new(a).unwrap(), &rule).unwrap();
        prop_assert!((v - a.norm() * FRAC_1_SQRT_2).abs() < 1e-9);
    }

    // N_{z^k, γ}(w) = k (log(1/|w|)/k)^γ
    #[test]
    fn counting_function_of_monomials(w in disk(0.95), k in 1u32..6, gamma in 0.5..3.0f64) {
        prop_assume!(w.norm() > 1e-3);
        let poly = PolynomialMap::from_expr(&Expr::z().powi(k)).unwrap();
        let n = counting_function(&poly, w, gamma).unwrap();
        let kf = k as f64;
        let expected = kf * (-(w.norm().ln()) / kf).powf(gamma);
        prop_assert!((n - expected).abs() < 1e-9 * expected.max(1.0), "{n} vs {expected}");
    }

    // rotation invariance of the area rule
    #[test]
    fn rotated_integrands_agree(c in disk(0.9), t in 0.0..TAU) {
        let rule = build_rule(32, 128, 2.0).unwrap();
        let rot = Complex::from_polar(1.0, t);
        let f = |z: Complex| (z - c).norm_sqr();
        let a = disk_integrate(f, &rule).unwrap();
        let b = disk_integrate(move |z: Complex| f(z * rot), &rule).unwrap();
        // ∫|z - c|² dA = 1/2 + |c|²
        prop_assert!((a - (0.5 + c.norm_sqr())).abs() < 1e-12);
        prop_assert!((b - a).abs() < 1e-12);
    }

    // the Bloch seminorm is invariant under disk automorphisms
    #[test]
    fn bloch_seminorm_is_mobius_invariant(a in disk(0.7), n in 1u32..5) {
        let grid = SupGrid::new(48, 192).unwrap();
        let f = Expr::z().powi(n);
        let g = f.compose(&Expr::mobius(a).unwrap());
        let bf = bloch_seminorm_with_hints(&f, &grid, &[]).unwrap().value;
        let bg = bloch_seminorm_with_hints(&g, &grid, &[a, sigma(a, Complex::new(0.0, 0.0))]).unwrap().value;
        prop_assert!((bf - bg).abs() < 1e-6 * bf, "{bf} vs {bg}");
    }
}

#[test]
fn monomial_bergman_norms() {
    let rule = build_rule(64, 256, 2.0).unwrap();
    for n in 0..=20u32 {
        for p in [1.0, 2.0, 4.0] {
            // ‖zⁿ‖_{A^p}^p = 2 / (np + 2)
            let v = ap_norm(&Expr::z().powi(n), p, &rule).unwrap().value;
            let expected = (2.0 / (n as f64 * p + 2.0)).powf(1.0 / p);
            assert!((v - expected).abs() < 1e-9, "n={n} p={p}: {v} vs {expected}");
        }
    }
}
