use std::collections::HashMap;
use std::path::PathBuf;
use std::process::Command;

use bloch_wco::cli::main_with;
use bloch_wco::Cli;
use clap::Parser;

fn corpus_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", name].iter().collect();
    p.display().to_string()
}

const SMALL: &[&str] = &[
    "--radial",
    "24",
    "--angular",
    "128",
    "--sup-grid",
    "4",
    "--powers",
    "60",
];

/// Runs the command into a temporary file and returns the raw text.
fn run_raw(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report");
    let mut argv = vec!["bloch-wco"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(SMALL);
    let out_s = out.display().to_string();
    argv.extend_from_slice(&["--out", &out_s]);
    main_with(&Cli::parse_from(argv)).unwrap();
    std::fs::read_to_string(out).unwrap()
}

fn rows(text: &str) -> Vec<HashMap<String, String>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().clone();
    r.records()
        .map(|rec| {
            header
                .iter()
                .zip(rec.unwrap().iter())
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect()
        })
        .collect()
}

fn num(row: &HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn norm_row_for_identity() {
    let text = run_raw(&["norm", "--pair", &corpus_file("01-identity.json")]);
    assert!(text.starts_with("# command=norm\n"), "{text}");
    assert!(text.contains("# seed=42\n"));
    let r = &rows(&text)[0];
    assert_eq!(r["label"], "identity");
    assert!((num(r, "u0_term") - 2f64.ln()).abs() < 1e-12);
    assert!((num(r, "sup_alpha") - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
    assert_eq!(num(r, "sup_beta"), 0.0);
    assert!((num(r, "power_sup") - 1.0).abs() < 1e-12);
    assert!((num(r, "power_beta") - (1.0 + 2f64.ln())).abs() < 1e-12);
    assert!(r["error"].is_empty());
}

#[test]
fn essnorm_of_half_identity_vanishes() {
    let text = run_raw(&["essnorm", "--pair", &corpus_file("02-half-identity.json")]);
    let r = &rows(&text)[0];
    for v in ["v1", "v2", "v3", "v4"] {
        assert_eq!(num(r, v), 0.0, "{v}");
    }
    assert_eq!(r["compact"], "yes");
    assert_eq!(r["bounded"], "yes");
}

#[test]
fn classify_identity() {
    let text = run_raw(&["classify", "--pair", &corpus_file("01-identity.json")]);
    let r = &rows(&text)[0];
    assert_eq!((r["bounded"].as_str(), r["compact"].as_str()), ("yes", "no"));
}

#[test]
fn audit_littlewood_margins() {
    let text = run_raw(&["audit", "--pair", &corpus_file("16-strict-quadratic.json")]);
    let all = rows(&text);
    let lw: Vec<_> = all.iter().filter(|r| r["check"] == "littlewood_submean").collect();
    assert_eq!(lw.len(), 4);
    for r in &lw {
        assert!(num(r, "margin") >= -1e-6, "{r:?}");
        assert!(!r["detail"].is_empty());
    }
    assert!(all.iter().all(|r| r["holds"] == "true"), "{all:?}");
    assert!(text.contains("# summary ratio:change_of_variable count=1"));
}

#[test]
fn nevanlinna_command_skips_non_polynomials() {
    let text = run_raw(&[
        "nevanlinna",
        "--pair",
        &corpus_file("11-square.json"),
        "--pair",
        &corpus_file("13-automorphism.json"),
    ]);
    let all = rows(&text);
    let square: Vec<_> = all.iter().filter(|r| r["label"] == "square").collect();
    assert!(square
        .iter()
        .any(|r| r["check"] == "change_of_variable" && (num(r, "lhs") - 4.0 / 3.0).abs() < 1e-3));
    let auto: Vec<_> = all.iter().filter(|r| r["label"] == "automorphism").collect();
    assert_eq!(auto.len(), 1);
    assert!(auto[0]["error"].starts_with("unsupported_symbol"), "{:?}", auto[0]);
}

#[test]
fn bad_inputs_become_error_rows() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"u\": {\"op\": \"z\"},\n \"phi\": {\"op\": \"const\", \"re\": 2}}",
    )
    .unwrap();
    let doubling = dir.path().join("doubling.json");
    std::fs::write(
        &doubling,
        r#"{"label": "doubling", "u": {"op": "z"}, "phi": {"op": "mul", "args": [{"op": "const", "re": 2, "im": 0}, {"op": "z"}]}}"#,
    )
    .unwrap();
    let missing = dir.path().join("missing.json");
    let text = run_raw(&[
        "norm",
        "--pair",
        &bad.display().to_string(),
        "--pair",
        &doubling.display().to_string(),
        "--pair",
        &missing.display().to_string(),
        "--pair",
        &corpus_file("02-half-identity.json"),
    ]);
    let all = rows(&text);
    assert_eq!(all.len(), 4);
    assert!(all[0]["error"].starts_with("parse_error: line 2"), "{:?}", all[0]);
    assert!(all[1]["label"].ends_with("doubling.json"));
    assert!(all[1]["error"].starts_with("not_self_map"), "{:?}", all[1]);
    assert!(all[2]["error"].starts_with("io_error"), "{:?}", all[2]);
    assert!(all[3]["error"].is_empty());
}

#[test]
fn json_output() {
    let text = run_raw(&["norm", "--format", "json", "--pair", &corpus_file("01-identity.json")]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["command"], "norm");
    assert_eq!(v["rows"][0]["label"], "identity");
    assert!(v["rows"][0]["alpha_beta"].as_f64().unwrap() > 1.0);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let pairs = ["06-horocyclic.json", "17-strict-cubic.json", "21-product-weight.json"];
    let mut args = vec!["sweep".to_string()];
    for p in pairs {
        args.push("--pair".into());
        args.push(corpus_file(p));
    }
    let run_with = |threads: &str| {
        let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
        a.extend_from_slice(&["--threads", threads]);
        run_raw(&a)
    };
    let one = run_with("1");
    assert_eq!(one, run_with("3"));
    assert_eq!(one, run_with("1"));
    assert!(one.contains("# summary estimate_ratio count=3"));
}

#[test]
fn binary_reports_usage_errors() {
    let out = Command::new(env!("CARGO_BIN_EXE_bloch-wco"))
        .args(["norm", "--levels", "0.9,0.5"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("levels"), "{err}");
}
