//! Command implementations. Every command maps pairs to rows in input order;
//! a pair that fails contributes a row carrying the error instead.

use bloch_wco_core::estimators::{
    classify_from, essnorm_from, norm_estimate_from, opnorm_lower_bound, zhao_quantities_from, NormMethod, Trilean,
    Verdict,
};
use bloch_wco_core::functionals::{
    inequality_audit, nevanlinna_audit, profile, subordination_audit, Audit, AuditRow, SymbolPair,
};
use bloch_wco_core::nevanlinna::PolynomialMap;
use bloch_wco_core::{Config, Error};
use rayon::prelude::*;

use crate::report::{complex_cells, Cell, SummaryStat, Table};
use crate::symbol::LabeledPair;
use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Norm,
    Essnorm,
    Classify,
    Audit,
    Nevanlinna,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Essnorm => "essnorm",
            Command::Classify => "classify",
            Command::Audit => "audit",
            Command::Nevanlinna => "nevanlinna",
            Command::Sweep => "sweep",
        }
    }
}

/// A pair as read from disk or the corpus; failures are kept so that they
/// show up in the report.
#[derive(Debug)]
pub struct PairInput {
    pub label: String,
    pub pair: Result<SymbolPair, HarnessError>,
}

impl From<LabeledPair> for PairInput {
    fn from(p: LabeledPair) -> Self {
        PairInput {
            label: p.label,
            pair: Ok(p.pair),
        }
    }
}

/// Configuration plus the settings that only the harness uses.
#[derive(Debug, Clone)]
pub struct Settings {
    pub cfg: Config,
    pub sup_levels: usize,
    pub radial: usize,
    pub angular: usize,
}

impl Settings {
    pub fn new(radial: usize, angular: usize, sup_levels: usize) -> Result<Self, HarnessError> {
        Ok(Settings {
            cfg: Config::new(radial, angular, sup_levels)?,
            sup_levels,
            radial,
            angular,
        })
    }

    fn meta(&self, command: Command) -> Vec<(String, String)> {
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let c = &self.cfg;
        vec![
            ("command".into(), command.name().into()),
            ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ("radial".into(), self.radial.to_string()),
            ("angular".into(), self.angular.to_string()),
            ("grading".into(), c.rule.grading_exponent().to_string()),
            ("sup_levels".into(), self.sup_levels.to_string()),
            ("powers".into(), c.powers.to_string()),
            ("window".into(), c.window.to_string()),
            ("levels".into(), list(&c.levels)),
            ("level_radii".into(), list(&c.level_radii)),
            ("tlevels".into(), list(&c.thresholds)),
            ("divergence_threshold".into(), c.divergence_threshold.to_string()),
            ("eps_compact".into(), c.eps_compact.to_string()),
            ("growth_slope".into(), c.growth_slope.to_string()),
            ("rng".into(), "chacha8".into()),
            ("seed".into(), c.seed.to_string()),
            ("random_polynomials".into(), c.random_polynomials.to_string()),
            ("tol".into(), c.tol.to_string()),
        ]
    }
}

const NORM_COLUMNS: &[&str] = &[
    "label",
    "alpha_beta",
    "power_beta",
    "estimate_ratio",
    "u0_term",
    "sup_alpha",
    "sup_alpha_re",
    "sup_alpha_im",
    "sup_beta",
    "sup_beta_re",
    "sup_beta_im",
    "power_sup",
    "power_tail",
    "flags",
    "error",
];
const ESSNORM_COLUMNS: &[&str] = &[
    "label",
    "v1",
    "v2",
    "v3",
    "v4",
    "variant_ratio",
    "power_tail",
    "power_window_max",
    "alpha_tilde",
    "beta_tilde",
    "gamma_tilde",
    "g_tilde",
    "zhao",
    "composition_part",
    "multiplier_part",
    "bounded",
    "compact",
    "flags",
    "error",
];
const CLASSIFY_EVIDENCE: &[&str] = &[
    "u0_term",
    "power_sup",
    "sup_beta",
    "power_trend",
    "beta_trend",
    "power_tail",
    "beta_tilde",
    "alpha_tilde",
    "g_tilde",
    "gamma_tilde",
];
const AUDIT_COLUMNS: &[&str] = &[
    "label",
    "check",
    "detail",
    "lhs",
    "rhs",
    "constant",
    "two_sided",
    "ratio",
    "margin",
    "holds",
    "witness_re",
    "witness_im",
    "flags",
    "error",
];
const SWEEP_COLUMNS: &[&str] = &[
    "label",
    "boundary_contact",
    "alpha_beta",
    "power_beta",
    "estimate_ratio",
    "lower_bound",
    "lower_ratio",
    "lower_witness",
    "v1",
    "v2",
    "v3",
    "v4",
    "variant_ratio",
    "zhao",
    "bounded",
    "compact",
    "audit_rows",
    "audit_failures",
    "worst_check",
    "worst_check_ratio",
    "flags",
    "error",
];

/// Label of the rows made for the subordination library.
pub const LIBRARY_LABEL: &str = "subordination-library";

fn error_text(e: &HarnessError) -> String {
    format!("{}: {e}", e.kind())
}

fn error_row(columns: &[&'static str], label: &str, error: String) -> Vec<Cell> {
    let mut row = vec![Cell::Empty; columns.len()];
    row[0] = label.into();
    row[columns.len() - 1] = error.into();
    row
}

fn flags(list: &[(&str, bool)]) -> Cell {
    let set: Vec<&str> = list.iter().filter(|f| f.1).map(|f| f.0).collect();
    if set.is_empty() {
        Cell::Empty
    } else {
        set.join(";").into()
    }
}

fn ratio(a: f64, b: f64) -> Option<f64> {
    if b > 0.0 {
        Some(a / b)
    } else {
        None
    }
}

/// Rows for every pair, computed in parallel, returned in input order.
fn per_pair<F>(inputs: &[PairInput], columns: &[&'static str], f: F) -> Vec<Vec<Cell>>
where
    F: Fn(&str, &SymbolPair) -> Result<Vec<Vec<Cell>>, HarnessError> + Sync,
{
    let chunks: Vec<Vec<Vec<Cell>>> = inputs
        .par_iter()
        .map(|p| match &p.pair {
            Ok(pair) => f(&p.label, pair).unwrap_or_else(|e| vec![error_row(columns, &p.label, error_text(&e))]),
            Err(e) => vec![error_row(columns, &p.label, error_text(e))],
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

pub fn run(command: Command, inputs: &[PairInput], s: &Settings) -> Result<Table, HarnessError> {
    s.cfg.validate()?;
    let mut table = match command {
        Command::Norm => norm_table(inputs, &s.cfg),
        Command::Essnorm => essnorm_table(inputs, &s.cfg),
        Command::Classify => classify_table(inputs, &s.cfg),
        Command::Audit => audit_table(inputs, &s.cfg),
        Command::Nevanlinna => nevanlinna_table(inputs, &s.cfg),
        Command::Sweep => sweep_table(inputs, &s.cfg),
    };
    table.meta = s.meta(command);
    Ok(table)
}

fn norm_table(inputs: &[PairInput], cfg: &Config) -> Table {
    let mut t = Table::new(NORM_COLUMNS.to_vec());
    t.rows = per_pair(inputs, NORM_COLUMNS, |label, pair| {
        let prof = profile(pair, cfg)?;
        let ab = norm_estimate_from(&prof, NormMethod::AlphaBeta, cfg);
        let pb = norm_estimate_from(&prof, NormMethod::PowerBeta, cfg);
        let [are, aim] = complex_cells(Some(prof.sup_alpha.argmax));
        let [bre, bim] = complex_cells(Some(prof.sup_beta.argmax));
        Ok(vec![vec![
            label.into(),
            ab.value.into(),
            pb.value.into(),
            ratio(ab.value, pb.value).into(),
            prof.u0_term.into(),
            prof.sup_alpha.value.into(),
            are,
            aim,
            prof.sup_beta.value.into(),
            bre,
            bim,
            prof.powers.sup.into(),
            prof.powers.limsup.into(),
            flags(&[
                ("diverged", ab.diverged || pb.diverged),
                ("alpha_sup_unconverged", !prof.sup_alpha.converged),
                ("beta_sup_unconverged", !prof.sup_beta.converged),
            ]),
            Cell::Empty,
        ]])
    });
    t.summary
        .extend(SummaryStat::of("estimate_ratio", t.numbers("estimate_ratio")));
    t
}

fn essnorm_table(inputs: &[PairInput], cfg: &Config) -> Table {
    let mut t = Table::new(ESSNORM_COLUMNS.to_vec());
    t.rows = per_pair(inputs, ESSNORM_COLUMNS, |label, pair| {
        let prof = profile(pair, cfg)?;
        let verdict = classify_from(&prof, cfg);
        if verdict.bounded == Trilean::No {
            return Err(Error::NotBounded.into());
        }
        let ess = essnorm_from(&prof);
        let z = zhao_quantities_from(pair, &prof, cfg)?;
        Ok(vec![vec![
            label.into(),
            ess.v1.into(),
            ess.v2.into(),
            ess.v3.into(),
            ess.v4.into(),
            ess.ratio.into(),
            ess.power_tail.into(),
            prof.powers.window_max.into(),
            ess.alpha_tilde.into(),
            ess.beta_tilde.into(),
            ess.gamma_tilde.into(),
            ess.g_tilde.into(),
            z.zhao.into(),
            (!z.composition_part.vacuous).then_some(z.composition_part.value).into(),
            (!z.multiplier_part.vacuous).then_some(z.multiplier_part.value).into(),
            verdict.bounded.name().into(),
            verdict.compact.name().into(),
            flags(&[("vacuous", ess.vacuous), ("strict_self_map", !pair.boundary_contact())]),
            Cell::Empty,
        ]])
    });
    t.summary
        .extend(SummaryStat::of("variant_ratio", t.numbers("variant_ratio")));
    t
}

fn evidence(v: &Verdict, name: &str) -> Cell {
    v.evidence.iter().find(|e| e.name == name).map(|e| e.value).into()
}

fn classify_table(inputs: &[PairInput], cfg: &Config) -> Table {
    let mut columns = vec!["label", "bounded", "compact"];
    columns.extend_from_slice(CLASSIFY_EVIDENCE);
    columns.extend_from_slice(&["flags", "error"]);
    let mut t = Table::new(columns.clone());
    t.rows = per_pair(inputs, &columns, |label, pair| {
        let prof = profile(pair, cfg)?;
        let v = classify_from(&prof, cfg);
        let mut row: Vec<Cell> = vec![label.into(), v.bounded.name().into(), v.compact.name().into()];
        row.extend(CLASSIFY_EVIDENCE.iter().map(|n| evidence(&v, n)));
        row.push(flags(&[("strict_self_map", !pair.boundary_contact())]));
        row.push(Cell::Empty);
        Ok(vec![row])
    });
    t
}

fn audit_rows(label: &str, audit: &Audit, tol: f64) -> Vec<Vec<Cell>> {
    let mut rows = Vec::new();
    for r in &audit.rows {
        let [wre, wim] = complex_cells(r.witness);
        rows.push(vec![
            label.into(),
            r.check.into(),
            if r.detail.is_empty() {
                Cell::Empty
            } else {
                r.detail.clone().into()
            },
            r.lhs.into(),
            r.rhs.into(),
            r.constant.into(),
            r.two_sided.into(),
            r.ratio().into(),
            r.margin().into(),
            r.holds(tol).into(),
            wre,
            wim,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    for (check, e) in &audit.skipped {
        let mut row = error_row(AUDIT_COLUMNS, label, format!("{}: {e}", e.kind()));
        row[1] = (*check).into();
        row[12] = "skipped".into();
        rows.push(row);
    }
    rows
}

/// `max ratio` per check name across rows.
fn check_constants(t: &mut Table, rows: &[AuditRow]) {
    let mut names: Vec<&str> = rows.iter().map(|r| r.check).collect();
    names.sort_unstable();
    names.dedup();
    for n in names {
        // rows with both sides zero carry no constant
        let v = rows
            .iter()
            .filter(|r| r.check == n && (r.lhs != 0.0 || r.rhs != 0.0))
            .map(|r| r.ratio());
        t.summary.extend(SummaryStat::of(format!("ratio:{n}"), v));
    }
}

/// Runs `f` on every pair in parallel and lays out its audit, in input order.
fn audit_layout<F>(inputs: &[PairInput], tol: f64, f: F) -> (Table, Vec<AuditRow>)
where
    F: Fn(&SymbolPair) -> Result<Audit, HarnessError> + Sync,
{
    let mut t = Table::new(AUDIT_COLUMNS.to_vec());
    let audits: Vec<Result<Audit, String>> = inputs
        .par_iter()
        .map(|p| match &p.pair {
            Ok(pair) => f(pair).map_err(|e| error_text(&e)),
            Err(e) => Err(error_text(e)),
        })
        .collect();
    let mut all = Vec::new();
    for (p, a) in inputs.iter().zip(audits) {
        match a {
            Ok(a) => {
                t.rows.extend(audit_rows(&p.label, &a, tol));
                all.extend(a.rows);
            }
            Err(e) => t.push(error_row(AUDIT_COLUMNS, &p.label, e)),
        }
    }
    (t, all)
}

fn audit_table(inputs: &[PairInput], cfg: &Config) -> Table {
    let (mut t, mut all) = audit_layout(inputs, cfg.tol, |pair| {
        let prof = profile(pair, cfg)?;
        Ok(inequality_audit(pair, &prof, cfg))
    });
    let lib = subordination_audit(&cfg.rule);
    t.rows.extend(audit_rows(LIBRARY_LABEL, &lib, cfg.tol));
    all.extend(lib.rows);
    check_constants(&mut t, &all);
    t
}

fn nevanlinna_table(inputs: &[PairInput], cfg: &Config) -> Table {
    let (mut t, all) = audit_layout(inputs, cfg.tol, |pair| {
        let poly = PolynomialMap::from_expr(pair.phi_expr())?;
        Ok(nevanlinna_audit(&poly, cfg))
    });
    check_constants(&mut t, &all);
    t
}

struct SweepResult {
    row: Vec<Cell>,
    audit: Vec<AuditRow>,
    contact: bool,
}

fn sweep_pair(label: &str, pair: &SymbolPair, cfg: &Config) -> Result<SweepResult, HarnessError> {
    let prof = profile(pair, cfg)?;
    let ab = norm_estimate_from(&prof, NormMethod::AlphaBeta, cfg);
    let pb = norm_estimate_from(&prof, NormMethod::PowerBeta, cfg);
    let lb = opnorm_lower_bound(pair, cfg.random_polynomials, cfg)?;
    let ess = essnorm_from(&prof);
    let z = zhao_quantities_from(pair, &prof, cfg)?;
    let v = classify_from(&prof, cfg);
    let audit = inequality_audit(pair, &prof, cfg);
    let failures = audit.rows.iter().filter(|r| !r.holds(cfg.tol)).count();
    let worst =
        audit
            .rows
            .iter()
            .map(|r| (r, r.ratio() / r.constant))
            .fold(None::<(&AuditRow, f64)>, |acc, x| match acc {
                Some(a) if a.1 >= x.1 => Some(a),
                _ => Some(x),
            });
    let contact = pair.boundary_contact();
    let row = vec![
        label.into(),
        contact.into(),
        ab.value.into(),
        pb.value.into(),
        ratio(ab.value, pb.value).into(),
        lb.value.into(),
        ratio(ab.value, lb.value).into(),
        lb.witness.into(),
        ess.v1.into(),
        ess.v2.into(),
        ess.v3.into(),
        ess.v4.into(),
        ess.ratio.into(),
        z.zhao.into(),
        v.bounded.name().into(),
        v.compact.name().into(),
        audit.rows.len().into(),
        failures.into(),
        worst.map_or(Cell::Empty, |w| w.0.check.into()),
        worst.map(|w| w.0.ratio()).into(),
        flags(&[
            ("diverged", ab.diverged || pb.diverged),
            ("vacuous", ess.vacuous),
            ("audit_skipped", !audit.skipped.is_empty()),
        ]),
        Cell::Empty,
    ];
    Ok(SweepResult {
        row,
        audit: audit.rows,
        contact,
    })
}

fn sweep_table(inputs: &[PairInput], cfg: &Config) -> Table {
    let mut t = Table::new(SWEEP_COLUMNS.to_vec());
    let results: Vec<Result<SweepResult, String>> = inputs
        .par_iter()
        .map(|p| match &p.pair {
            Ok(pair) => sweep_pair(&p.label, pair, cfg).map_err(|e| error_text(&e)),
            Err(e) => Err(error_text(e)),
        })
        .collect();
    let mut all = Vec::new();
    let mut contact_ratios = Vec::new();
    for (p, r) in inputs.iter().zip(results) {
        match r {
            Ok(s) => {
                if s.contact {
                    if let Cell::Num(x) = s.row[12] {
                        contact_ratios.push(x);
                    }
                }
                t.rows.push(s.row);
                all.extend(s.audit);
            }
            Err(e) => t.rows.push(error_row(SWEEP_COLUMNS, &p.label, e)),
        }
    }
    let lib = subordination_audit(&cfg.rule);
    all.extend(lib.rows);
    for name in ["estimate_ratio", "lower_ratio"] {
        t.summary.extend(SummaryStat::of(name, t.numbers(name)));
    }
    t.summary
        .extend(SummaryStat::of("variant_ratio:boundary_contact", contact_ratios));
    check_constants(&mut t, &all);
    t
}
