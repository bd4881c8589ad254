//! The elliptic relative equilibrium becomes the fixed point (0, sigma, sigma, 0) in
//! pulsating coordinates.
//!
//! cargo run --example reduction_fixed_point

use ere_stability::kepler_cc::{CentralConfiguration, MassTriple};
use ere_stability::reduction::{fixed_point_deviation, unit_massless_frame};

fn main() -> ere_stability::Result<()> {
    let cc = CentralConfiguration::solve(&MassTriple::new(0.25, 0.45, 0.3)?)?;
    let unit = unit_massless_frame(&cc);
    println!("massless body moved to ({:.3}, {:.3}), mu = {:.10}", unit.positions[3].x, unit.positions[3].y, unit.mu);
    for e in [0.0, 0.3, 0.6, 0.9] {
        for p in [0.5, 1.0, 2.0] {
            let dev = fixed_point_deviation(&cc, e, p, 200)?;
            println!("e = {e:.1}  p = {p:.1}  largest deviation {dev:.2e}");
        }
    }
    Ok(())
}
