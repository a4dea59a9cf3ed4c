//! Acceptance criteria 1–13. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::f64::consts::{E, FRAC_1_SQRT_2, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bloch_wco::report::Cell;
use bloch_wco::{corpus, run, Command, LabeledPair, PairInput, Settings, Table};
use bloch_wco_core::estimators::{classify, essnorm_estimate, zhao_quantities, Trilean};
use bloch_wco_core::functionals::{nevanlinna_audit, subordination_audit, test_function, SymbolPair, TestFamily};
use bloch_wco_core::mobius::{sigma, sigma_derivative};
use bloch_wco_core::nevanlinna::{change_of_variable_ratio, sublog_bound_check, PolynomialMap};
use bloch_wco_core::norms::{ap_norm, bloch_norm_with_hints, bloch_seminorm, garsia_bloch_norm, sup_norm};
use bloch_wco_core::quadrature::{disk_integrate, level_set_integrals, AGrid, SupGrid};
use bloch_wco_core::{Complex, Config, Expr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn pairs() -> Vec<LabeledPair> {
    corpus().expect("bundled corpus parses")
}

fn polynomials() -> Vec<(String, PolynomialMap)> {
    pairs()
        .into_iter()
        .filter_map(|p| PolynomialMap::from_expr(p.pair.phi_expr()).ok().map(|m| (p.label, m)))
        .collect()
}

fn spread(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn mobius_layer() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let point = |rng: &mut ChaCha8Rng| {
        // uniform in area on |z| < 0.99
        Complex::from_polar(0.99 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
    };
    let (mut inv, mut pick) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let (a, z) = (point(&mut rng), point(&mut rng));
        inv = inv.max((sigma(a, sigma(a, z)) - z).norm());
        let lhs = (1.0 - z.norm_sqr()) * sigma_derivative(a, z).norm();
        pick = pick.max((lhs - (1.0 - sigma(a, z).norm_sqr())).abs());
    }
    let t = start.elapsed();
    outcome(
        inv < 1e-12 && pick < 1e-12 && t < Duration::from_secs(1),
        format!("involution {inv:.2e}, schwarz-pick {pick:.2e}, {:.3}s", t.as_secs_f64()),
    )
}

fn quadrature_anchors() -> Outcome {
    let cfg = Config::default();
    let mut worst: f64 = 0.0;
    for n in 0..=20u32 {
        let v = ap_norm(&Expr::z().powi(n), 2.0, &cfg.rule).unwrap().value;
        worst = worst.max((v * v - 1.0 / (n as f64 + 1.0)).abs());
    }
    let area = disk_integrate(|_| 1.0, &cfg.rule).unwrap();
    let t = 0.99;
    let annulus = level_set_integrals(|z| Ok(z.norm()), |_| Ok(1.0), &[t], &cfg.rule).unwrap()[0];
    let annulus_err = (annulus - (1.0 - t * t)).abs();
    outcome(
        worst < 1e-9 && (area - 1.0).abs() < 1e-12 && annulus_err < 5e-4,
        format!(
            "monomials {worst:.2e}, area {:.2e}, annulus {annulus_err:.2e}",
            (area - 1.0).abs()
        ),
    )
}

fn power_limit() -> Outcome {
    let cfg = Config::default();
    let n = 200.0f64;
    // sup_r n r^{n-1} (1 - r²) is attained at r² = (n - 1) / (n + 1)
    let r = ((n - 1.0) / (n + 1.0)).sqrt();
    let oracle = n * r.powf(n - 1.0) * (1.0 - r * r);
    let v = bloch_norm_with_hints(&Expr::z().powi(200), &cfg.sup_grid, &[])
        .unwrap()
        .value;
    let pair = SymbolPair::new(Expr::real(1.0), Expr::z()).unwrap();
    let zhao = zhao_quantities(&pair, &cfg).unwrap().zhao;
    let rel = (v / (2.0 / E) - 1.0).abs();
    outcome(
        rel < 0.01 && (v / oracle - 1.0).abs() < 1e-6 && (zhao - 1.0).abs() < 0.02,
        format!(
            "‖z^200‖_B {v:.6} (oracle {oracle:.6}, 2/e {:.6}), zhao {zhao:.6}",
            2.0 / E
        ),
    )
}

fn test_family_bounds() -> Outcome {
    let start = Instant::now();
    let grid = SupGrid::new(32, 128).unwrap();
    let a_points = AGrid::default_grid().points();
    let (mut fb, mut finf, mut hb) = (0.0f64, 0.0f64, 0.0f64);
    let mut count = 0;
    for p in pairs() {
        for &a in &a_points {
            let c = p.pair.phi(a).unwrap();
            let f = test_function(c, TestFamily::F).unwrap();
            let h = test_function(c, TestFamily::H).unwrap();
            fb = fb.max(bloch_norm_with_hints(&f, &grid, &[c]).unwrap().value);
            finf = finf.max(sup_norm(&f, &grid).unwrap().value);
            hb = hb.max(bloch_norm_with_hints(&h, &grid, &[c]).unwrap().value);
            count += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        fb <= 4.0 + 1e-6 && finf <= 2.0 + 1e-9 && hb <= 2.0 + 2f64.ln() + 1e-6 && t < Duration::from_secs(60),
        format!(
            "{count} points: max ‖f_a‖_B {fb:.6}, ‖f_a‖_∞ {finf:.6}, ‖h_a‖_B {hb:.6}, {:.1}s",
            t.as_secs_f64()
        ),
    )
}

fn littlewood() -> Outcome {
    let cfg = Config::default();
    let mut maps: Vec<Vec<Complex>> = Vec::new();
    let mut worst = f64::INFINITY;
    for (_, poly) in polynomials() {
        if poly.at_origin().norm() == 0.0 {
            continue;
        }
        let audit = nevanlinna_audit(&poly, &cfg);
        assert!(audit.skipped.is_empty(), "{:?}", audit.skipped);
        let rows: Vec<_> = audit.rows.iter().filter(|r| r.check == "littlewood_submean").collect();
        assert_eq!(rows.len(), 4);
        for r in rows {
            worst = worst.min(r.margin());
        }
        if !maps.contains(&poly.coefficients().to_vec()) {
            maps.push(poly.coefficients().to_vec());
        }
    }
    outcome(
        worst >= -1e-6 && maps.len() >= 5,
        format!("{} distinct polynomials, min margin {worst:.3e}", maps.len()),
    )
}

fn sublog() -> Outcome {
    let cfg = Config::default();
    let z = Expr::z;
    let maps = [
        ("z", z()),
        ("z^2", z().powi(2)),
        ("z/2", z() / Expr::real(2.0)),
        ("z^2/2", z().powi(2) / Expr::real(2.0)),
        ("z(1+z)/2", z() * (Expr::real(1.0) + z()) / Expr::real(2.0)),
    ];
    let points = cfg.sup_grid.points();
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, e) in maps {
        let m = sublog_bound_check(&PolynomialMap::from_expr(&e).unwrap(), &points).unwrap();
        pass &= m >= -1e-6;
        parts.push(format!("{name} {m:.3e}"));
    }
    outcome(pass, format!("margins {}", parts.join(", ")))
}

fn subordination() -> Outcome {
    let cfg = Config::default();
    let audit = subordination_audit(&cfg.rule);
    let ratios: Vec<f64> = audit.rows.iter().map(|r| r.ratio()).collect();
    let (_, max) = spread(&ratios);
    outcome(
        audit.skipped.is_empty() && max <= 20.0,
        format!("{} cases, max ratio {max:.4}", audit.rows.len()),
    )
}

fn change_of_variable() -> Outcome {
    let cfg = Config::default();
    let square = PolynomialMap::from_expr(&Expr::z().powi(2)).unwrap();
    let anchor = change_of_variable_ratio(&Expr::z(), &square, &cfg.rule).unwrap();
    let ratios: Vec<f64> = polynomials()
        .iter()
        .map(|(_, p)| change_of_variable_ratio(&Expr::z(), p, &cfg.rule).unwrap())
        .collect();
    let (lo, hi) = spread(&ratios);
    outcome(
        (anchor - 4.0 / 3.0).abs() < 1e-3 && lo > 0.0 && hi / lo <= 10.0,
        format!("anchor {anchor:.6}, {} pairs in [{lo:.4}, {hi:.4}]", ratios.len()),
    )
}

fn garsia() -> Outcome {
    let cfg = Config::default();
    let anchor = garsia_bloch_norm(&Expr::z(), &cfg.a_grid, &cfg.rule).unwrap().value;
    let mut ratios = Vec::new();
    for p in pairs() {
        let image = p.pair.apply(&Expr::z());
        let b = bloch_seminorm(&image, &cfg.sup_grid).unwrap().value;
        if b == 0.0 {
            continue;
        }
        ratios.push(garsia_bloch_norm(&image, &cfg.a_grid, &cfg.rule).unwrap().value / b);
    }
    let (lo, hi) = spread(&ratios);
    outcome(
        (anchor - FRAC_1_SQRT_2).abs() < 1e-3 && lo > 0.0 && hi / lo <= 10.0,
        format!("anchor {anchor:.6}, {} pairs in [{lo:.4}, {hi:.4}]", ratios.len()),
    )
}

fn number(t: &Table, row: &[Cell], name: &str) -> Option<f64> {
    match &row[t.column(name)?] {
        Cell::Num(v) => Some(*v),
        Cell::Int(v) => Some(*v as f64),
        _ => None,
    }
}

fn text(t: &Table, row: &[Cell], name: &str) -> String {
    match &row[t.column(name).unwrap()] {
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        _ => String::new(),
    }
}

fn pair_rows(t: &Table) -> Vec<&Vec<Cell>> {
    t.rows
        .iter()
        .filter(|r| text(t, r, "label") != bloch_wco::run::LIBRARY_LABEL)
        .collect()
}

fn estimator_agreement(sweep: &Table) -> Outcome {
    let rows = pair_rows(sweep);
    let mut bad = Vec::new();
    let mut ratios = Vec::new();
    let mut exact = 0;
    for r in &rows {
        if number(sweep, r, "alpha_beta") == Some(0.0) && number(sweep, r, "power_beta") == Some(0.0) {
            exact += 1;
            continue;
        }
        match number(sweep, r, "estimate_ratio") {
            Some(x) if (0.2..=5.0).contains(&x) => ratios.push(x),
            other => bad.push(format!("{}={other:?}", text(sweep, r, "label"))),
        }
    }
    let id = rows.iter().find(|r| text(sweep, r, "label") == "identity").unwrap();
    let ab = number(sweep, id, "alpha_beta").unwrap();
    let pb = number(sweep, id, "power_beta").unwrap();
    let (lo, hi) = spread(&ratios);
    outcome(
        bad.is_empty() && (ab - 1.4003).abs() < 1e-2 && (pb - 1.6931).abs() < 1e-2,
        format!(
            "identity {ab:.4} / {pb:.4}; {} ratios in [{lo:.4}, {hi:.4}], {exact} both zero; outside {bad:?}",
            ratios.len()
        ),
    )
}

fn lower_bound_sanity(sweep: &Table) -> Outcome {
    let mut bad = Vec::new();
    let mut ratios = Vec::new();
    for r in pair_rows(sweep) {
        let label = text(sweep, r, "label");
        let est = number(sweep, r, "alpha_beta").unwrap();
        let lower = number(sweep, r, "lower_bound").unwrap();
        if est == 0.0 && lower == 0.0 {
            continue;
        }
        match number(sweep, r, "lower_ratio") {
            Some(x) if (1.0..=50.0).contains(&x) => ratios.push(x),
            other => bad.push(format!("{label}={:.4}", other.unwrap_or(f64::NAN))),
        }
    }
    let (lo, hi) = spread(&ratios);
    outcome(
        bad.is_empty(),
        format!("{} pairs in [{lo:.4}, {hi:.4}]; outside {bad:?}", ratios.len()),
    )
}

fn compactness(sweep: &Table) -> Outcome {
    let cfg = Config::default();
    let half = SymbolPair::new(Expr::real(1.0), Expr::z() / Expr::real(2.0)).unwrap();
    let ess = essnorm_estimate(&half, &cfg).unwrap();
    let half_ok = classify(&half, &cfg).unwrap().compact == Trilean::Yes && ess.variants().iter().all(|&v| v < 0.02);

    let id = SymbolPair::new(Expr::real(1.0), Expr::z()).unwrap();
    let tail = essnorm_estimate(&id, &cfg).unwrap().power_tail;
    let id_ok = classify(&id, &cfg).unwrap().compact == Trilean::No && (tail / (2.0 / E) - 1.0).abs() < 0.01;

    let mut coherent = Vec::new();
    let mut bad = Vec::new();
    for r in pair_rows(sweep) {
        if text(sweep, r, "boundary_contact") != "true" {
            continue;
        }
        let label = text(sweep, r, "label");
        match number(sweep, r, "variant_ratio") {
            Some(x) if x <= 10.0 => coherent.push(x),
            Some(x) => bad.push(format!("{label}={x:.2}")),
            None => {}
        }
    }
    let (lo, hi) = spread(&coherent);
    outcome(
        half_ok && id_ok && bad.is_empty(),
        format!(
            "z/2 compact {half_ok}; identity tail {tail:.6}, non-compact {id_ok}; variant ratio {} pairs in [{lo:.3}, {hi:.3}], above 10 {bad:?}",
            coherent.len()
        ),
    )
}

fn sweep_with(threads: usize) -> (Table, Vec<u8>, Duration) {
    let settings = Settings::new(64, 256, 8).unwrap();
    let inputs: Vec<PairInput> = pairs().into_iter().map(PairInput::from).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let start = Instant::now();
    let table = pool.install(|| run(Command::Sweep, &inputs, &settings)).unwrap();
    let elapsed = start.elapsed();
    let mut bytes = Vec::new();
    table.write_csv(&mut bytes).unwrap();
    (table, bytes, elapsed)
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, o: Outcome| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag} {name}: {}", o.detail);
        if !o.pass {
            failed += 1;
        }
    };
    report(1, "mobius layer", mobius_layer());
    report(2, "quadrature anchors", quadrature_anchors());
    report(3, "bloch power-norm limit", power_limit());
    report(4, "test-family bounds", test_family_bounds());
    report(5, "littlewood sub-mean", littlewood());
    report(6, "sub-logarithmic counting bound", sublog());
    report(7, "subordination constant", subordination());
    report(8, "change of variable", change_of_variable());
    report(9, "garsia equivalence", garsia());

    let (sweep, first, elapsed) = sweep_with(1);
    report(10, "estimator agreement", estimator_agreement(&sweep));
    report(11, "lower-bound sanity", lower_bound_sanity(&sweep));
    report(12, "compactness classification", compactness(&sweep));

    let (_, second, _) = sweep_with(4);
    let identical = first == second;
    report(
        13,
        "determinism",
        outcome(
            identical && elapsed < Duration::from_secs(600),
            format!(
                "{} pairs in {:.1}s; 1 vs 4 threads byte-identical {identical}",
                pair_rows(&sweep).len(),
                elapsed.as_secs_f64()
            ),
        ),
    );
    println!("{failed} of 13 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
