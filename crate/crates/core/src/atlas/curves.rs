use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::Table;
use super::with_pool;
use crate::error::{Error, Result};
use crate::kepler_cc::{check_eccentricity, DEFAULT_E_MAX};
use crate::maslov::{galerkin_spectrum, morse_index, GalerkinOptions};
use crate::monodromy::period_map_alpha;
use crate::spectral::{eigenstructure, EigenStructure, Tolerances};

/// Spectrum closer than this to the unit circle counts as touching it.
pub const UNIT_DISTANCE_TOL: f64 = 1e-8;

/// Slack allowed when checking `alpha_k <= alpha_s <= alpha_m` on polished values.
pub const ORDER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveOptions {
    pub galerkin: GalerkinOptions,
    /// Target bracket width of the bisections.
    pub width: f64,
    /// Refine each bracket on a smooth function crossing zero at the curve.
    pub polish: bool,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self { galerkin: GalerkinOptions::default(), width: 1e-8, polish: true }
    }
}

/// The three curves at one eccentricity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub e: f64,
    pub alpha_k: f64,
    pub alpha_s: f64,
    pub alpha_m: f64,
    /// Final bisection brackets `[lo, hi]`.
    pub bracket_k: (f64, f64),
    pub bracket_s: (f64, f64),
    pub bracket_m: (f64, f64),
    /// `alpha_s` and `alpha_m` brackets merged: the `-1` index jumps by two at once.
    pub coincident: bool,
}

impl CurveSample {
    pub fn is_ordered(&self) -> bool {
        self.alpha_k <= self.alpha_s + ORDER_TOL && self.alpha_s <= self.alpha_m + ORDER_TOL && self.alpha_m < 3.0
    }
}

/// Largest `x` in `[lo, hi]` with `pred(x)` false, given `pred(lo)` false and `pred(hi)`
/// true; returns the final bracket.
fn bisect(mut lo: f64, mut hi: f64, width: f64, mut pred: impl FnMut(f64) -> Result<bool>) -> Result<(f64, f64)> {
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

/// Root of `f` on `[lo, hi]` by the Illinois variant of regula falsi, or `None` when `f`
/// does not change sign there.
fn polish_root(lo: f64, hi: f64, f: impl Fn(f64) -> Result<f64>) -> Result<Option<f64>> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(Some(a));
    }
    if fb == 0.0 {
        return Ok(Some(b));
    }
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    let mut side = 0;
    for _ in 0..100 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c)?;
        if fc == 0.0 || (b - a).abs() < 1e-15 {
            return Ok(Some(c));
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() < 1e-14 {
            break;
        }
    }
    Ok(Some((a * fb - b * fa) / (fb - fa)))
}

fn minus_one_index(alpha: f64, e: f64, options: &GalerkinOptions) -> Result<usize> {
    Ok(morse_index(alpha, e, Complex64::new(-1.0, 0.0), options)?.require_converged()?.i_omega)
}

fn spectrum(alpha: f64, e: f64) -> Result<EigenStructure> {
    eigenstructure(&period_map_alpha(alpha, e)?.period_map, &Tolerances::default())
}

/// True when the period map has no eigenvalue within [`UNIT_DISTANCE_TOL`] of the unit circle.
pub fn is_hyperbolic(alpha: f64, e: f64) -> Result<bool> {
    Ok(spectrum(alpha, e)?.distance_to_unit_circle() > UNIT_DISTANCE_TOL)
}

/// `alpha_s` or `alpha_m`: where the `level`-th condensed Galerkin eigenvalue at `omega = -1`
/// crosses zero.
fn locate_index_jump(e: f64, level: usize, options: &CurveOptions) -> Result<((f64, f64), f64)> {
    let bracket = bisect(0.0, 3.0, options.width, |a| Ok(minus_one_index(a, e, &options.galerkin)? >= level))?;
    if !options.polish {
        return Ok((bracket, 0.5 * (bracket.0 + bracket.1)));
    }
    let minus_one = Complex64::new(-1.0, 0.0);
    let n = morse_index(bracket.1, e, minus_one, &options.galerkin)?.n_used;
    let eigen = |a: f64| -> Result<f64> {
        let spectrum = galerkin_spectrum(a, e, minus_one, n, 1)?;
        Ok(spectrum.eigenvalues[level - 1])
    };
    // the count flips once the eigenvalue passes the null threshold, slightly past its zero
    let lo = (bracket.0 - 1e3 * options.width).max(0.0);
    let root = polish_root(lo, bracket.1, eigen)?;
    Ok((bracket, root.unwrap_or(0.5 * (bracket.0 + bracket.1))))
}

/// Signed function that crosses zero where the spectrum reaches the unit circle: the
/// discriminant of the `s`-quadratic for a Krein collision, or `min |s| - 2` when a real
/// pair reaches `+-1`.
fn unit_circle_entry(lo: f64, hi: f64, e: f64) -> Result<Option<Box<dyn Fn(f64) -> Result<f64>>>> {
    let (a, b) = (spectrum(lo, e)?, spectrum(hi, e)?);
    let min_s = |es: &EigenStructure| es.s_roots.iter().map(|s| if s.im.abs() > 0.0 { f64::INFINITY } else { s.re.abs() - 2.0 }).fold(f64::INFINITY, f64::min);
    if a.discriminant < 0.0 && b.discriminant >= 0.0 && b.s_roots.iter().all(|s| s.re.abs() < 2.0) {
        return Ok(Some(Box::new(move |x| Ok(spectrum(x, e)?.discriminant))));
    }
    if min_s(&a) > 0.0 && min_s(&b) <= 0.0 {
        return Ok(Some(Box::new(move |x| Ok(min_s(&spectrum(x, e)?)))));
    }
    Ok(None)
}

/// Trace `alpha_k(e) <= alpha_s(e) <= alpha_m(e)`.
pub fn trace_curve(e: f64, options: &CurveOptions) -> Result<CurveSample> {
    check_eccentricity(e, DEFAULT_E_MAX)?;
    let start = minus_one_index(0.0, e, &options.galerkin)?;
    let end = minus_one_index(3.0, e, &options.galerkin)?;
    if start != 0 || end != 2 {
        return Err(Error::CurveDiagnostic(format!(
            "e = {e}: -1 index runs from {start} to {end}, expected a total jump of 2 from 0"
        )));
    }
    let (bracket_s, alpha_s) = locate_index_jump(e, 1, options)?;
    let (bracket_m, alpha_m) = locate_index_jump(e, 2, options)?;

    if !is_hyperbolic(0.0, e)? {
        return Err(Error::CurveDiagnostic(format!("e = {e}: spectrum meets the unit circle at alpha = 0")));
    }
    let bracket_k = bisect(0.0, bracket_s.1, options.width, |a| Ok(!is_hyperbolic(a, e)?))?;
    let mut alpha_k = 0.5 * (bracket_k.0 + bracket_k.1);
    if options.polish {
        let widen = 1e3 * options.width;
        let (lo, hi) = ((bracket_k.0 - widen).max(0.0), bracket_k.1 + widen);
        if let Some(f) = unit_circle_entry(lo, hi, e)? {
            if let Some(root) = polish_root(lo, hi, f)? {
                alpha_k = root;
            }
        }
    }
    let coincident = bracket_s.1 >= bracket_m.0 - options.width;
    let sample = CurveSample { e, alpha_k, alpha_s, alpha_m, bracket_k, bracket_s, bracket_m, coincident };
    if !sample.is_ordered() {
        return Err(Error::CurveDiagnostic(format!("curves out of order: {sample:?}")));
    }
    Ok(sample)
}

/// [`trace_curve`] for each eccentricity, in parallel, results in input order.
pub fn trace_curves(es: &[f64], options: &CurveOptions) -> Vec<Result<CurveSample>> {
    with_pool(|| es.par_iter().map(|&e| trace_curve(e, options)).collect())
}

pub fn curve_table(samples: &[Result<CurveSample>], es: &[f64]) -> Table {
    let mut table = Table::new(&["e", "alpha_k", "alpha_s", "alpha_m", "width_k", "width_s", "width_m", "coincident"]);
    for (e, s) in es.iter().zip(samples) {
        match s {
            Ok(s) => table.row(vec![
                s.e.to_string(),
                format!("{:.12}", s.alpha_k),
                format!("{:.12}", s.alpha_s),
                format!("{:.12}", s.alpha_m),
                format!("{:e}", s.bracket_k.1 - s.bracket_k.0),
                format!("{:e}", s.bracket_s.1 - s.bracket_s.0),
                format!("{:e}", s.bracket_m.1 - s.bracket_m.0),
                s.coincident.to_string(),
            ]),
            Err(err) => table.comment(format!("e={e}: {err}")),
        }
    }
    table
}
