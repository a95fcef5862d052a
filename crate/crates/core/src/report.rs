//! Machine-readable documents and text renderings for the command line.
//!
//! Every JSON document starts with `schema_version` ("1") and `command`,
//! keeps a fixed field order, and carries wall-clock time only in a trailing
//! `duration_ms` field. Doubles are written in their shortest round-trip
//! decimal form, so parsing a document gives back the identical bits.

use serde::Serialize;

use crate::helmert::{Certification, DenseMatrix, HelmertOrder};
use crate::verifier::{
    ClaimId, ControlOutcome, NegativeControl, TheoremReport, VerificationConfig,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<P: Serialize> {
    pub schema_version: &'static str,
    pub command: String,
    #[serde(flatten)]
    pub payload: P,
}

impl<P: Serialize> ReportDocument<P> {
    pub fn new(command: impl Into<String>, payload: P) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self)
            .expect("documents contain only finite numbers and string keys")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixPayload {
    pub order: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixPayload {
    pub fn of(m: &DenseMatrix) -> Self {
        Self {
            order: m.order(),
            rows: m.rows().map(<[f64]>::to_vec).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationPayload {
    pub results: Vec<Certification>,
    pub overall_pass: bool,
    pub duration_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformPayload {
    pub n: usize,
    pub z: Vec<f64>,
    pub y: Vec<f64>,
    /// `y_n = √n z̄`.
    pub scaled_mean: f64,
    /// `Σ_{i<n} y_i²`.
    pub w: f64,
}

/// A negative control without its nested timing, so documents stay stable.
#[derive(Debug, Clone, Serialize)]
pub struct ControlSummary {
    pub control: NegativeControl,
    pub target: ClaimId,
    pub target_failed: bool,
    pub collateral_failures: Vec<ClaimId>,
    pub detected: bool,
    pub results: Vec<crate::verifier::ClaimResult>,
}

impl From<&ControlOutcome> for ControlSummary {
    fn from(o: &ControlOutcome) -> Self {
        Self {
            control: o.control,
            target: o.target,
            target_failed: o.target_failed,
            collateral_failures: o.collateral_failures.clone(),
            detected: o.detected,
            results: o.report.results.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ControlsPayload {
    pub config: VerificationConfig,
    pub controls: Vec<ControlSummary>,
    pub overall_pass: bool,
    pub duration_ms: u64,
}

/// `O_n` with entries as `c/√r`, columns separated by spaces.
pub fn matrix_symbolic_text(order: HelmertOrder) -> String {
    let n = order.get();
    let mut out = String::new();
    for i in 1..=n {
        let row: Vec<String> = (1..=n)
            .map(|j| order.symbolic_entry(i, j).expect("in range").to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn join_rows(m: &DenseMatrix, sep: &str) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(sep));
        out.push('\n');
    }
    out
}

pub fn matrix_decimal_text(m: &DenseMatrix) -> String {
    join_rows(m, " ")
}

/// One row per line, comma-separated, no header.
pub fn matrix_csv(m: &DenseMatrix) -> String {
    join_rows(m, ",")
}

pub fn certification_line(c: &Certification) -> String {
    match c {
        Certification::Pass { order, pairs_checked } => {
            format!("n={order}: pass ({pairs_checked} row pairs, integer arithmetic)")
        }
        Certification::Fail { order, case, entry, expected_sum } => format!(
            "n={order}: FAIL at row pair ({}, {}) [{:?}]: integer sum {} over sqrt({}), expected {}",
            entry.i, entry.j, case, entry.integer_sum, entry.shared_radicand, expected_sum
        ),
    }
}

pub fn theorem_text(report: &TheoremReport) -> String {
    let mut out = String::new();
    let cfg = &report.config;
    out.push_str(&format!(
        "n={} trials={} seed={} alpha={} bins={}",
        cfg.n, cfg.trials, cfg.seed.0, cfg.alpha, cfg.bins
    ));
    if let Some(p) = cfg.params {
        out.push_str(&format!(" mu={} sigma={}", p.mu(), p.sigma()));
    }
    if let Some(c) = report.negative_control {
        out.push_str(&format!(" negative_control={c:?}"));
    }
    out.push('\n');
    for r in &report.results {
        out.push_str(&format!(
            "{:<7}{:<6}{}\n",
            r.claim_id.as_str(),
            if r.passed { "PASS" } else { "FAIL" },
            r.verdict
        ));
        for (k, p) in &r.p_values {
            out.push_str(&format!("         p[{k}] = {p:?}\n"));
        }
        for (k, b) in &r.bounds {
            out.push_str(&format!(
                "         |{k}| = {:?} (bound {b:?})\n",
                r.statistics[k].abs()
            ));
        }
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.overall_pass { "PASS" } else { "FAIL" }
    ));
    out
}
