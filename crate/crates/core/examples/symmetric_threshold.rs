//! Symmetric chain m1 = m3: sweep of the middle mass and the stability threshold in the
//! circular case.
//!
//! cargo run --release --example symmetric_threshold

use ere_stability::atlas::{find_threshold, linspace, symmetric_sweep};

fn main() -> ere_stability::Result<()> {
    let m2s = linspace(0.0, 0.999, 41);
    let sweep = symmetric_sweep(&m2s, 0.0);
    for r in sweep.iter().flatten().step_by(4) {
        println!("m2 = {:.4}  y = {:.8}  alpha = {:.8}  {:<8} {}", r.m2, r.y, r.alpha, r.form, r.verdict);
    }
    let threshold = find_threshold(&sweep, 0.0, 1e-10)?;
    println!(
        "stable for m2 above {:.8} (alpha = {:.10}, bracket [{:.10}, {:.10}])",
        threshold.m2, threshold.alpha, threshold.bracket.0, threshold.bracket.1
    );
    Ok(())
}
