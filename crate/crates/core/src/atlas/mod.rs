//! Scanning engine and command line: `(alpha, e)` stability diagrams, the curves
//! `Gamma_k`, `Gamma_s`, `Gamma_m`, mass-plane maps and the symmetric chain sweep.
//!
//! Grid work runs on a rayon pool sized by `ERE_THREADS` when set; records are always
//! returned in grid order.

pub mod cli;
mod curves;
mod mass;
mod output;
mod selftest;
mod scan;
mod symmetric;

pub use curves::{curve_table, is_hyperbolic, trace_curve, trace_curves, CurveOptions, CurveSample, ORDER_TOL, UNIT_DISTANCE_TOL};
pub use mass::{mass_point, mass_table, scan_mass_plane, MassRecord, SCAN_MASS_HEADER};
pub use output::{fmt_opt, Table};
pub use scan::{expected_verdict, linspace, scan_alpha_e, scan_point, scan_table, ScanOptions, ScanRecord, SCAN_AE_HEADER};
pub use selftest::{run_selftest, selftest_table, SelfCheck};
pub use symmetric::{find_threshold, symmetric_point, symmetric_sweep, symmetric_table, SymmetricRecord, Threshold};

/// Worker count from `ERE_THREADS`, if set to a positive integer.
pub fn thread_override() -> Option<usize> {
    std::env::var("ERE_THREADS").ok()?.trim().parse().ok().filter(|n| *n > 0)
}

/// Run `f` inside a pool honoring `ERE_THREADS`, or on the global pool otherwise.
pub(crate) fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match thread_override().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
