//! Period map of the circular problem: numerical integration against the closed form.
//!
//! cargo run --example monodromy_circular

use ere_stability::monodromy::{monodromy_circular, period_map_alpha};

fn main() -> ere_stability::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>8}", "alpha", "residual", "vs closed", "steps");
    for alpha in [0.0, 1.0, 2.0, 8f64.sqrt(), 2.85, 33f64.sqrt() / 2.0, 2.95, 3.0] {
        let path = period_map_alpha(alpha, 0.0)?;
        let exact = monodromy_circular(alpha)?;
        let gap = (path.period_map - exact).abs().max();
        println!("{alpha:>8.5} {:>12.3e} {gap:>12.3e} {:>8}", path.sympl_residual, path.steps);
    }

    let path = period_map_alpha(2.9, 0.4)?;
    println!("alpha = 2.9, e = 0.4, period map:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:+.8e}", path.period_map[(i, j)])).collect();
        println!("  {}", row.join("  "));
    }
    Ok(())
}
