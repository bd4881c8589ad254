use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::{fmt_opt, Table};
use super::with_pool;
use crate::error::{Error, Result};
use crate::monodromy::period_map_alpha;
use crate::reduction::symmetric_chain;
use crate::spectral::{analyze, Verdict};

/// Symmetric chain `m1 = m3` at one `m2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricRecord {
    pub m2: f64,
    pub y: f64,
    pub z: f64,
    pub alpha: f64,
    pub form: String,
    pub verdict: Verdict,
}

pub fn symmetric_point(m2: f64, e: f64) -> Result<SymmetricRecord> {
    let chain = symmetric_chain(m2)?;
    let verdict = analyze(&period_map_alpha(chain.alpha, e)?.period_map)?;
    Ok(SymmetricRecord {
        m2,
        y: chain.y,
        z: chain.z,
        alpha: chain.alpha,
        form: verdict.normal_form.to_string(),
        verdict: verdict.verdict,
    })
}

pub fn symmetric_sweep(m2s: &[f64], e: f64) -> Vec<Result<SymmetricRecord>> {
    with_pool(|| m2s.par_iter().map(|&m| symmetric_point(m, e)).collect())
}

/// Stability threshold on the symmetric chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub m2: f64,
    pub alpha: f64,
    /// Final bracket `[unstable, stable]` in `m2`.
    pub bracket: (f64, f64),
}

/// Bisect the verdict flip from linearly unstable to linearly stable, starting from the
/// last such flip in the sweep.
pub fn find_threshold(sweep: &[Result<SymmetricRecord>], e: f64, width: f64) -> Result<Threshold> {
    let ok: Vec<&SymmetricRecord> = sweep.iter().filter_map(|r| r.as_ref().ok()).collect();
    let flip = ok
        .windows(2)
        .rev()
        .find(|w| !w[0].verdict.is_linearly_stable() && w[1].verdict.is_linearly_stable())
        .ok_or_else(|| Error::Inconsistency("no unstable-to-stable flip in the sweep".into()))?;
    let (mut lo, mut hi) = (flip[0].m2, flip[1].m2);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if symmetric_point(mid, e)?.verdict.is_linearly_stable() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let m2 = 0.5 * (lo + hi);
    Ok(Threshold { m2, alpha: symmetric_chain(m2)?.alpha, bracket: (lo, hi) })
}

pub fn symmetric_table(records: &[Result<SymmetricRecord>], m2s: &[f64]) -> Table {
    let mut table = Table::new(&["m2", "y", "z", "alpha", "form", "verdict"]);
    for (m2, r) in m2s.iter().zip(records) {
        match r {
            Ok(r) => table.row(vec![
                r.m2.to_string(),
                r.y.to_string(),
                r.z.to_string(),
                r.alpha.to_string(),
                r.form.clone(),
                fmt_opt(Some(r.verdict)),
            ]),
            Err(err) => table.comment(format!("m2={m2}: {err}")),
        }
    }
    table
}
