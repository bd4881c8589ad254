use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::curves::{trace_curve, CurveOptions};
use super::output::Table;
use super::symmetric::{find_threshold, symmetric_sweep};
use crate::error::Result;
use crate::kepler_cc::{solve_symmetric_y, CentralConfiguration, MassTriple};
use crate::maslov::{bott_check, morse_index, GalerkinOptions};
use crate::monodromy::period_map_alpha;
use crate::reduction::{fixed_point_deviation, symmetric_alpha};
use crate::spectral::{analyze, FormKind, Verdict};

use super::scan::linspace;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<(bool, String)>) -> SelfCheck {
    match outcome {
        Ok((pass, detail)) => SelfCheck { name, pass, detail },
        Err(err) => SelfCheck { name, pass: false, detail: err.to_string() },
    }
}

fn circular_thresholds() -> Result<(bool, String)> {
    let c = trace_curve(0.0, &CurveOptions::default())?;
    let (k, sm) = (8f64.sqrt(), 33f64.sqrt() / 2.0);
    let pass = (c.alpha_k - k).abs() <= 1e-6 && (c.alpha_s - sm).abs() <= 1e-6 && (c.alpha_m - sm).abs() <= 1e-6;
    Ok((pass, format!("alpha_k={:.9} alpha_s={:.9} alpha_m={:.9}", c.alpha_k, c.alpha_s, c.alpha_m)))
}

fn circular_forms() -> Result<(bool, String)> {
    let mut labels = Vec::new();
    let mut pass = true;
    for alpha in [1.0, 8f64.sqrt(), 2.85, 33f64.sqrt() / 2.0, 2.95] {
        let v = analyze(&period_map_alpha(alpha, 0.0)?.period_map)?;
        let ok = match v.normal_form.kind() {
            FormKind::ComplexSaddle => alpha == 1.0,
            FormKind::KreinCollision { theta, trivial } => {
                trivial && ((theta - (2.0 * PI - 2f64.sqrt() * PI)).abs() < 1e-6)
            }
            FormKind::EllipticElliptic { theta1, theta2 } if alpha == 2.85 => theta1 < PI && theta2 > PI,
            FormKind::EllipticElliptic { theta1, .. } => theta1 > PI && v.verdict == Verdict::StronglyLinearlyStable,
            FormKind::MinusIdentityRotation { .. } => true,
            _ => false,
        };
        pass &= ok;
        labels.push(v.normal_form.to_string());
    }
    Ok((pass, labels.join(" ")))
}

fn symmetric_endpoints() -> Result<(bool, String)> {
    let y0 = solve_symmetric_y(0.0)?;
    let a0 = symmetric_alpha(0.0)?;
    let y1 = solve_symmetric_y(1.0 - 1e-8)?;
    let a1 = symmetric_alpha(1.0 - 1e-8)?;
    let pass = (y0 - 3f64.sqrt()).abs() <= 1e-10 && (a0 - 1.5).abs() <= 1e-10 && (y1 - 1.0).abs() <= 1e-3 && (a1 - 3.0).abs() <= 1e-3;
    Ok((pass, format!("y(0)={y0:.12} alpha(0)={a0:.12} y(1-)={y1:.6} alpha(1-)={a1:.6}")))
}

fn stability_threshold() -> Result<(bool, String)> {
    let grid = linspace(0.8, 0.9, 11);
    let t = find_threshold(&symmetric_sweep(&grid, 0.0), 0.0, 1e-10)?;
    let pass = (t.m2 - 0.854).abs() <= 1e-3 && (t.alpha - 8f64.sqrt()).abs() <= 1e-5;
    Ok((pass, format!("m2*={:.6} alpha={:.9}", t.m2, t.alpha)))
}

fn index_endpoints() -> Result<(bool, String)> {
    let opts = GalerkinOptions::default();
    let (one, minus) = (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
    let mut pass = true;
    for e in [0.0, 0.5] {
        let a3 = morse_index(3.0, e, minus, &opts)?;
        let k3 = morse_index(3.0, e, one, &opts)?;
        let a0 = morse_index(0.0, e, minus, &opts)?;
        pass &= a3.i_omega == 2 && k3.i_omega == 0 && k3.nu_omega == 3 && a0.i_omega == 0 && a0.nu_omega == 0;
    }
    Ok((pass, "i_-1(3)=2, i_1(3)=0, nu_1(3)=3, i_-1(0)=nu_-1(0)=0 at e=0,0.5".into()))
}

fn bott() -> Result<(bool, String)> {
    let r = bott_check(3.0, 0.3, &GalerkinOptions::default())?;
    Ok((r.holds && r.doubled == 2, format!("i1(doubled)={} i1={} i-1={}", r.doubled, r.i1, r.i_minus1)))
}

fn fixed_point() -> Result<(bool, String)> {
    let cc = CentralConfiguration::solve(&MassTriple::new(0.3, 0.4, 0.3)?)?;
    let mut worst: f64 = 0.0;
    for e in [0.0, 0.3, 0.7] {
        worst = worst.max(fixed_point_deviation(&cc, e, 1.0, 100)?);
    }
    Ok((worst <= 1e-10, format!("max deviation {worst:e}")))
}

/// Quick versions of the headline checks.
pub fn run_selftest() -> Vec<SelfCheck> {
    vec![
        check("circular-thresholds", circular_thresholds()),
        check("circular-normal-forms", circular_forms()),
        check("symmetric-endpoints", symmetric_endpoints()),
        check("stability-threshold", stability_threshold()),
        check("index-endpoints", index_endpoints()),
        check("bott-identity", bott()),
        check("reduction-fixed-point", fixed_point()),
    ]
}

pub fn selftest_table(checks: &[SelfCheck]) -> Table {
    let mut table = Table::new(&["check", "status", "detail"]);
    for c in checks {
        table.row(vec![c.name.into(), if c.pass { "PASS" } else { "FAIL" }.into(), c.detail.replace(',', ";")]);
    }
    table
}
