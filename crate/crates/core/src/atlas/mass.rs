use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::{fmt_opt, Table};
use super::with_pool;
use crate::error::Result;
use crate::kepler_cc::{CentralConfiguration, MassTriple};
use crate::monodromy::period_map;
use crate::reduction::ReducedParams;
use crate::spectral::{analyze, Verdict};

/// One point of the `(m1, m3)` mass-plane map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassRecord {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub x: Option<f64>,
    pub a4: Option<[f64; 2]>,
    pub alpha: Option<f64>,
    pub form: String,
    pub verdict: Option<Verdict>,
    pub error: Option<String>,
}

/// Central configuration, `alpha` and verdict for the masses `(m1, 1 - m1 - m3, m3)`.
pub fn mass_point(m1: f64, m3: f64, e: f64) -> MassRecord {
    let m2 = 1.0 - m1 - m3;
    let run = || -> Result<MassRecord> {
        let cc = CentralConfiguration::solve(&MassTriple::new(m1, m2, m3)?)?;
        let params = ReducedParams::from_configuration(&cc, e)?;
        let verdict = analyze(&period_map(&params)?.period_map)?;
        let a4 = cc.a4();
        Ok(MassRecord {
            m1,
            m2,
            m3,
            x: Some(cc.x),
            a4: Some([a4.x, a4.y]),
            alpha: Some(params.alpha),
            form: verdict.normal_form.to_string(),
            verdict: Some(verdict.verdict),
            error: None,
        })
    };
    run().unwrap_or_else(|err| MassRecord {
        m1,
        m2,
        m3,
        x: None,
        a4: None,
        alpha: None,
        form: "ERROR".into(),
        verdict: None,
        error: Some(err.to_string()),
    })
}

/// Map the open simplex over the grid `m1s x m3s`; points with `m1 + m3 >= 1` are skipped.
/// Rows are ordered `m1` outer, `m3` inner.
pub fn scan_mass_plane(m1s: &[f64], m3s: &[f64], e: f64) -> Vec<MassRecord> {
    let points: Vec<(f64, f64)> = m1s
        .iter()
        .flat_map(|&a| m3s.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| *a > 0.0 && *b > 0.0 && a + b < 1.0)
        .collect();
    with_pool(|| points.par_iter().map(|&(a, b)| mass_point(a, b, e)).collect())
}

pub const SCAN_MASS_HEADER: [&str; 9] = ["m1", "m2", "m3", "x", "a4x", "a4y", "alpha", "form", "verdict"];

pub fn mass_table(records: &[MassRecord]) -> Table {
    let mut table = Table::new(&SCAN_MASS_HEADER);
    for r in records {
        if let Some(err) = &r.error {
            table.comment(format!("m1={} m3={}: {err}", r.m1, r.m3));
        }
        table.row(vec![
            r.m1.to_string(),
            r.m2.to_string(),
            r.m3.to_string(),
            fmt_opt(r.x),
            fmt_opt(r.a4.map(|a| a[0])),
            fmt_opt(r.a4.map(|a| a[1])),
            fmt_opt(r.alpha),
            r.form.clone(),
            fmt_opt(r.verdict),
        ]);
    }
    table
}
