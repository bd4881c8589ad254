//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so that every criterion reports even when an
//! earlier one fails; the process exits non-zero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nalgebra::{Matrix2, Matrix4, Vector2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use ere_stability::atlas::{find_threshold, linspace, symmetric_sweep, trace_curve, CurveOptions};
use ere_stability::kepler_cc::{solve_symmetric_y, CentralConfiguration, KeplerOrbit, MassTriple};
use ere_stability::maslov::{index_via_splitting, morse_index, morse_index_periods, GalerkinOptions};
use ere_stability::monodromy::period_map_alpha;
use ere_stability::reduction::{build_d, ere_state, inertial_to_reduced, symmetric_alpha, unit_massless_frame};
use ere_stability::spectral::{analyze, eigenstructure, FormKind, Tolerances, Verdict};
use ere_stability::Error;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const MINUS_ONE: Complex64 = Complex64::new(-1.0, 0.0);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn index_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for e in [0.0, 0.2, 0.4, 0.6, 0.8] {
        for k in 0..13 {
            out.push((0.25 * k as f64, e));
        }
    }
    out
}

/// Circular thresholds `alpha_k = 2 sqrt 2`, `alpha_s = alpha_m = sqrt(33)/2`.
fn c1() -> Outcome {
    let start = Instant::now();
    let c = trace_curve(0.0, &CurveOptions::default()).map_err(err)?;
    let (k, sm) = (8f64.sqrt(), 33f64.sqrt() / 2.0);
    let detail = format!("alpha_k={:.10} alpha_s={:.10} alpha_m={:.10}", c.alpha_k, c.alpha_s, c.alpha_m);
    ensure((c.alpha_k - k).abs() <= 1e-6, format!("alpha_k off: {detail}"))?;
    ensure((c.alpha_s - sm).abs() <= 1e-6 && (c.alpha_m - sm).abs() <= 1e-6, format!("alpha_s/m off: {detail}"))?;
    ensure(start.elapsed() <= Duration::from_secs(30), "slower than 30 s")?;
    Ok(detail)
}

/// Normal forms along the circular orbit.
fn c2() -> Outcome {
    let start = Instant::now();
    let form = |alpha: f64| -> Result<_, String> {
        let m = period_map_alpha(alpha, 0.0).map_err(err)?.period_map;
        Ok((m, analyze(&m).map_err(err)?))
    };

    let (_, v) = form(1.0)?;
    ensure(v.normal_form.kind() == FormKind::ComplexSaddle, format!("alpha=1: {}", v.normal_form))?;

    let (_, v) = form(8f64.sqrt())?;
    let target = TAU - 2f64.sqrt() * PI;
    match v.normal_form.kind() {
        FormKind::KreinCollision { theta, trivial: true } if (theta - target).abs() < 1e-6 => {}
        other => return Err(format!("alpha=2sqrt2: {other:?}")),
    }

    let (_, v) = form(2.85)?;
    match v.normal_form.kind() {
        FormKind::EllipticElliptic { theta1, theta2 } if theta1 > 0.0 && theta1 < PI && theta2 > PI => {}
        other => return Err(format!("alpha=2.85: {other:?}")),
    }

    let (m, v) = form(33f64.sqrt() / 2.0)?;
    ensure(matches!(v.normal_form.kind(), FormKind::MinusIdentityRotation { .. }), format!("alpha=sqrt33/2: {}", v.normal_form))?;
    // eigenvalue check straight from the characteristic polynomial
    let eig = m.complex_eigenvalues();
    let rot = Complex64::from_polar(1.0, 3f64.sqrt() * PI);
    let near = |z: Complex64| eig.iter().filter(|l| (**l - z).norm() < 1e-6).count();
    ensure(near(MINUS_ONE) == 2, format!("-1 multiplicity: {eig:?}"))?;
    ensure(near(rot) == 1 && near(rot.conj()) == 1, format!("rotation pair: {eig:?}"))?;

    let (_, v) = form(2.95)?;
    match v.normal_form.kind() {
        FormKind::EllipticElliptic { theta1, theta2 } if theta1 > PI && theta2 > PI && theta2 <= TAU => {}
        other => return Err(format!("alpha=2.95: {other:?}")),
    }
    ensure(v.verdict == Verdict::StronglyLinearlyStable, "alpha=2.95 not strongly stable")?;
    ensure(start.elapsed() <= Duration::from_secs(5), "slower than 5 s")?;
    Ok("CS, N2-trivial, EE(mixed), -I2+R, EE(upper)".into())
}

/// Symmetric chain endpoints.
fn c3() -> Outcome {
    let y0 = solve_symmetric_y(0.0).map_err(err)?;
    let a0 = symmetric_alpha(0.0).map_err(err)?;
    ensure((y0 - 3f64.sqrt()).abs() <= 1e-10, format!("y(0) = {y0}"))?;
    ensure((a0 - 1.5).abs() <= 1e-10, format!("alpha(0) = {a0}"))?;
    let y1 = solve_symmetric_y(1.0 - 1e-8).map_err(err)?;
    let a1 = symmetric_alpha(1.0 - 1e-8).map_err(err)?;
    ensure((y1 - 1.0).abs() <= 1e-3, format!("y(1-) = {y1}"))?;
    ensure((a1 - 3.0).abs() <= 1e-3, format!("alpha(1-) = {a1}"))?;
    Ok(format!("y(0)={y0:.12} alpha(0)={a0:.12} y(1-)={y1:.6} alpha(1-)={a1:.6}"))
}

/// Stability threshold on the symmetric chain.
fn c4() -> Outcome {
    let start = Instant::now();
    let grid = linspace(0.0, 0.999, 201);
    let t = find_threshold(&symmetric_sweep(&grid, 0.0), 0.0, 1e-10).map_err(err)?;
    let detail = format!("m2*={:.6} alpha(m2*)={:.9}", t.m2, t.alpha);
    ensure((t.m2 - 0.854).abs() <= 1e-3, format!("threshold off: {detail}"))?;
    let alpha = symmetric_alpha(t.m2).map_err(err)?;
    ensure((alpha - 8f64.sqrt()).abs() <= 1e-5, format!("alpha off: {detail}"))?;
    ensure(start.elapsed() <= Duration::from_secs(60), "slower than 60 s")?;
    Ok(detail)
}

/// Index values on the 13 x 5 grid and at the ends of the alpha range.
fn c5() -> Outcome {
    let start = Instant::now();
    let opts = GalerkinOptions { n0: 128, n_max: 512, ..Default::default() };
    for (alpha, e) in index_grid() {
        let r = morse_index(alpha, e, ONE, &opts).map_err(err)?;
        ensure(r.converged && r.i_omega == 0, format!("i_1({alpha}, {e}) = {} converged={}", r.i_omega, r.converged))?;
    }
    for e in [0.0, 0.2, 0.5, 0.8] {
        let m = morse_index(3.0, e, MINUS_ONE, &opts).map_err(err)?;
        ensure(m.converged && m.i_omega == 2, format!("i_-1(3, {e}) = {}", m.i_omega))?;
        let k = morse_index(3.0, e, ONE, &opts).map_err(err)?;
        ensure(k.converged && k.nu_omega == 3, format!("nu_1(3, {e}) = {}", k.nu_omega))?;
        let z = morse_index(0.0, e, MINUS_ONE, &opts).map_err(err)?;
        ensure(z.converged && z.i_omega == 0 && z.nu_omega == 0, format!("alpha=0, e={e}: ({}, {})", z.i_omega, z.nu_omega))?;
    }
    ensure(start.elapsed() <= Duration::from_secs(600), "slower than 10 min")?;
    Ok(format!("65 grid points i_1=0; endpoint values hold ({:.1} s)", start.elapsed().as_secs_f64()))
}

/// Monotonicity of the -1 index, total jump 2, and the location of the degeneracy.
fn c6() -> Outcome {
    let opts = GalerkinOptions::default();
    let curve_opts = CurveOptions::default();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for e in [0.0, 0.2, 0.5, 0.8] {
        let c = trace_curve(e, &curve_opts).map_err(err)?;
        let mut alphas = linspace(0.0, 2.99, 300);
        alphas.extend([c.alpha_s, c.alpha_m]);
        alphas.sort_by(f64::total_cmp);
        alphas.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let mut prev = 0;
        let (mut below, mut above, mut stray) = (0, 0, 0);
        for &a in &alphas {
            let r = morse_index(a, e, MINUS_ONE, &opts).map_err(err)?;
            if r.i_omega < prev {
                failures.push(format!("e={e}: index drops at alpha={a}"));
            }
            prev = r.i_omega;
            let at_curve = (a - c.alpha_s).abs() < 1e-12 || (a - c.alpha_m).abs() < 1e-12;
            if r.nu_omega > 0 && !at_curve {
                stray += r.nu_omega;
            }
            if a < c.alpha_m && (a - c.alpha_m).abs() >= 1e-12 {
                below += r.nu_omega;
            } else {
                above += r.nu_omega;
            }
        }
        let end = morse_index(3.0, e, MINUS_ONE, &opts).map_err(err)?.i_omega;
        if end != 2 {
            failures.push(format!("e={e}: total increase {end}"));
        }
        if stray > 0 {
            failures.push(format!("e={e}: degeneracy {stray} away from the traced points"));
        }
        if below != 0 || above != 2 {
            failures.push(format!(
                "e={e}: sum below alpha_m = {below}, from alpha_m = {above} (alpha_s={:.6}, alpha_m={:.6})",
                c.alpha_s, c.alpha_m
            ));
        }
        notes.push(format!("e={e}: below={below} above={above}"));
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

/// Bott iteration identity at random points.
fn c7() -> Outcome {
    let opts = GalerkinOptions::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 20 {
        let alpha: f64 = rng.gen_range(0.0..3.0);
        let e: f64 = rng.gen_range(0.0..0.8);
        let nf = analyze(&period_map_alpha(alpha, e).map_err(err)?.period_map).map_err(err)?.normal_form;
        if nf.marginal {
            continue;
        }
        let doubled = morse_index_periods(alpha, e, ONE, 2, &opts).map_err(err)?;
        let i1 = morse_index(alpha, e, ONE, &opts).map_err(err)?;
        let im1 = morse_index(alpha, e, MINUS_ONE, &opts).map_err(err)?;
        ensure(
            doubled.i_omega == i1.i_omega + im1.i_omega,
            format!("alpha={alpha} e={e}: {} != {} + {}", doubled.i_omega, i1.i_omega, im1.i_omega),
        )?;
        checked += 1;
    }
    Ok("20 points".into())
}

/// Galerkin index against the splitting-number walk on the 13 x 5 grid.
fn c8() -> Outcome {
    let opts = GalerkinOptions { n0: 128, n_max: 512, ..Default::default() };
    let (mut compared, mut skipped) = (0, Vec::new());
    for (alpha, e) in index_grid() {
        let m = period_map_alpha(alpha, e).map_err(err)?.period_map;
        let i1 = morse_index(alpha, e, ONE, &opts).map_err(err)?.i_omega;
        let morse = morse_index(alpha, e, MINUS_ONE, &opts).map_err(err)?.i_omega;
        match index_via_splitting(i1, &m, MINUS_ONE) {
            Ok(split) => {
                ensure(split == morse, format!("alpha={alpha} e={e}: splitting {split} vs Morse {morse}"))?;
                compared += 1;
            }
            Err(Error::Marginal(_)) => skipped.push(format!("({alpha},{e})")),
            Err(other) => return Err(format!("alpha={alpha} e={e}: {other}")),
        }
    }
    Ok(format!("{compared} agree, marginal skipped: [{}]", skipped.join(" ")))
}

/// The relative equilibrium is the fixed point `(0, sigma, sigma, 0)` after reduction.
fn c9() -> Outcome {
    let cc = CentralConfiguration::solve(&MassTriple::new(0.25, 0.45, 0.3).map_err(err)?).map_err(err)?;
    let unit = unit_massless_frame(&cc);
    let a4 = unit.positions[3];
    ensure((a4 - Vector2::new(1.0, 0.0)).norm() < 1e-14, "unit frame does not place the body at (1, 0)")?;
    let mut worst: f64 = 0.0;
    for e in [0.0, 0.3, 0.7] {
        let p = 1.3;
        let orbit = KeplerOrbit::new(unit.mu, e, p).map_err(err)?;
        let sigma = (unit.mu * p).powf(0.25);
        for k in 0..100 {
            let t = orbit.period * (k as f64 * 0.037 - 1.1);
            let (big_p, q) = ere_state(&a4, &orbit, t);
            let (big_z, z, _) = inertial_to_reduced(&big_p, &q, t, &orbit);
            let state = [big_z.x, big_z.y, z.x, z.y];
            for (got, want) in state.iter().zip([0.0, sigma, sigma, 0.0]) {
                worst = worst.max((got - want).abs());
            }
        }
    }
    ensure(worst <= 1e-10, format!("max error {worst:e}"))?;
    Ok(format!("max error {worst:e}"))
}

/// Symplecticity, the circular exponential oracle, and trace/determinant of `D`.
fn c10() -> Outcome {
    let j = {
        let mut j = Matrix4::<f64>::zeros();
        j[(0, 2)] = -1.0;
        j[(1, 3)] = -1.0;
        j[(2, 0)] = 1.0;
        j[(3, 1)] = 1.0;
        j
    };
    let mut worst_residual: f64 = 0.0;
    for (alpha, e) in index_grid() {
        let m = period_map_alpha(alpha, e).map_err(err)?.period_map;
        let residual = (m.transpose() * j * m - j).norm();
        worst_residual = worst_residual.max(residual);
    }
    ensure(worst_residual <= 1e-9, format!("symplectic residual {worst_residual:e}"))?;

    let mut worst_exp: f64 = 0.0;
    for alpha in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 8f64.sqrt(), 2.85, 33f64.sqrt() / 2.0, 2.95, 3.0] {
        // B0 = [[I, -J], [J, I - D]] with D = diag((3 + alpha)/2, (3 - alpha)/2)
        let mut b = Matrix4::<f64>::identity();
        b[(0, 3)] = 1.0;
        b[(1, 2)] = -1.0;
        b[(2, 1)] = -1.0;
        b[(3, 0)] = 1.0;
        b[(2, 2)] = 1.0 - (3.0 + alpha) / 2.0;
        b[(3, 3)] = 1.0 - (3.0 - alpha) / 2.0;
        let oracle = (j * b * TAU).exp();
        let m = period_map_alpha(alpha, 0.0).map_err(err)?.period_map;
        worst_exp = worst_exp.max((m - oracle).abs().max());
    }
    ensure(worst_exp <= 1e-8, format!("ODE vs exponential {worst_exp:e}"))?;

    let mut rng = rand::rngs::StdRng::seed_from_u64(10);
    let mut worst_trace: f64 = 0.0;
    let mut min_det = f64::INFINITY;
    for _ in 0..10_000 {
        let m1: f64 = rng.gen_range(1e-3..1.0);
        let m3: f64 = rng.gen_range(1e-3..1.0);
        if m1 + m3 >= 1.0 - 1e-3 {
            continue;
        }
        let cc = CentralConfiguration::solve(&MassTriple::new(m1, 1.0 - m1 - m3, m3).map_err(err)?)
            .map_err(|x| format!("({m1}, {m3}): {x}"))?;
        let d: Matrix2<f64> = build_d(&cc).map_err(err)?;
        worst_trace = worst_trace.max((d.trace() - 3.0).abs());
        min_det = min_det.min(d.determinant());
    }
    ensure(worst_trace <= 1e-9, format!("trace(D) off by {worst_trace:e}"))?;
    ensure(min_det >= -1e-12, format!("det(D) = {min_det}"))?;
    Ok(format!(
        "residual {worst_residual:e}, exp oracle {worst_exp:e}, |trace-3| {worst_trace:e}, min det {min_det:.3e}"
    ))
}

fn main() {
    let _ = eigenstructure(&Matrix4::identity(), &Tolerances::default());
    let criteria: [(&str, fn() -> Outcome); 10] =
        [("C1", c1), ("C2", c2), ("C3", c3), ("C4", c4), ("C5", c5), ("C6", c6), ("C7", c7), ("C8", c8), ("C9", c9), ("C10", c10)];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == name) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[acceptance] {name} PASS ({secs:.1} s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[acceptance] {name} FAIL ({secs:.1} s) {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
