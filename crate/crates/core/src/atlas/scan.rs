use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::{fmt_opt, Table};
use super::with_pool;
use crate::error::{Error, Result};
use crate::maslov::{morse_index, GalerkinOptions};
use crate::monodromy::period_map_alpha;
use crate::spectral::{analyze, Region, Verdict};

/// Knobs shared by the scanning operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub galerkin: GalerkinOptions,
    /// Compute the Galerkin indices; otherwise the index columns stay empty.
    pub indices: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { galerkin: GalerkinOptions::default(), indices: true }
    }
}

/// Evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![lo],
        _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// One point of an `(alpha, e)` scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub alpha: f64,
    pub e: f64,
    pub i1: Option<usize>,
    pub im1: Option<usize>,
    pub nu1: Option<usize>,
    pub num1: Option<usize>,
    /// Normal-form label, prefixed `MARGINAL:` near a case boundary.
    pub form: String,
    pub marginal: bool,
    pub verdict: Option<Verdict>,
    pub region: Option<Region>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub sympl_residual: Option<f64>,
    /// Galerkin counts settled under cutoff doubling.
    pub converged: bool,
    pub error: Option<String>,
}

impl ScanRecord {
    fn failed(alpha: f64, e: f64, err: &Error) -> Self {
        Self {
            alpha,
            e,
            i1: None,
            im1: None,
            nu1: None,
            num1: None,
            form: "ERROR".into(),
            marginal: false,
            verdict: None,
            region: None,
            theta1: None,
            theta2: None,
            sympl_residual: None,
            converged: false,
            error: Some(err.to_string()),
        }
    }
}

/// Monodromy, classification and indices at one `(alpha, e)`.
pub fn scan_point(alpha: f64, e: f64, options: &ScanOptions) -> ScanRecord {
    try_scan_point(alpha, e, options).unwrap_or_else(|err| ScanRecord::failed(alpha, e, &err))
}

fn try_scan_point(alpha: f64, e: f64, options: &ScanOptions) -> Result<ScanRecord> {
    let path = period_map_alpha(alpha, e)?;
    let verdict = analyze(&path.period_map)?;
    let angles = verdict.normal_form.rotation_angles();
    let mut record = ScanRecord {
        alpha,
        e,
        i1: None,
        im1: None,
        nu1: None,
        num1: None,
        form: verdict.normal_form.to_string(),
        marginal: verdict.normal_form.marginal,
        verdict: Some(verdict.verdict),
        region: verdict.region,
        theta1: angles.first().copied(),
        theta2: angles.get(1).copied(),
        sympl_residual: Some(path.sympl_residual),
        converged: true,
        error: None,
    };
    if options.indices {
        let one = morse_index(alpha, e, Complex64::new(1.0, 0.0), &options.galerkin)?;
        let minus = morse_index(alpha, e, Complex64::new(-1.0, 0.0), &options.galerkin)?;
        record.i1 = Some(one.i_omega);
        record.nu1 = Some(one.nu_omega);
        record.im1 = Some(minus.i_omega);
        record.num1 = Some(minus.nu_omega);
        record.converged = one.converged && minus.converged;
    }
    Ok(record)
}

/// Scan the grid `alphas x es` in parallel; records come back in row-major
/// `(e outer, alpha inner)` order regardless of scheduling.
pub fn scan_alpha_e(alphas: &[f64], es: &[f64], options: &ScanOptions) -> Vec<ScanRecord> {
    let points: Vec<(f64, f64)> = es.iter().flat_map(|&e| alphas.iter().map(move |&a| (a, e))).collect();
    with_pool(|| points.par_iter().map(|&(a, e)| scan_point(a, e, options)).collect())
}

/// The verdict implied by the `-1` index and whether the spectrum avoids the unit circle,
/// for points off the curves.
pub fn expected_verdict(i_minus1: usize, hyperbolic: bool) -> Option<Verdict> {
    match (i_minus1, hyperbolic) {
        (0, true) => Some(Verdict::Hyperbolic),
        (0, false) | (2, false) => Some(Verdict::StronglyLinearlyStable),
        (1, false) => Some(Verdict::EllipticHyperbolic),
        _ => None,
    }
}

pub const SCAN_AE_HEADER: [&str; 11] =
    ["alpha", "e", "i1", "im1", "nu1", "num1", "form", "verdict", "theta1", "theta2", "residual"];

pub fn scan_table(records: &[ScanRecord]) -> Table {
    let mut table = Table::new(&SCAN_AE_HEADER);
    for r in records {
        if let Some(err) = &r.error {
            table.comment(format!("alpha={} e={}: {err}", r.alpha, r.e));
        }
        table.row(vec![
            r.alpha.to_string(),
            r.e.to_string(),
            fmt_opt(r.i1),
            fmt_opt(r.im1),
            fmt_opt(r.nu1),
            fmt_opt(r.num1),
            r.form.clone(),
            fmt_opt(r.verdict),
            fmt_opt(r.theta1),
            fmt_opt(r.theta2),
            r.sympl_residual.map_or(String::new(), |v| format!("{v:e}")),
        ]);
    }
    table
}
