//! Euler collinear configuration of three primaries and the off-line massless body.
//!
//! cargo run --example central_configuration

use ere_stability::kepler_cc::{CentralConfiguration, KeplerOrbit, MassTriple};
use ere_stability::reduction::ReducedParams;

fn main() -> ere_stability::Result<()> {
    for (m1, m2, m3) in [(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0), (0.5, 0.2, 0.3), (0.1, 0.8, 0.1)] {
        let cc = CentralConfiguration::solve(&MassTriple::new(m1, m2, m3)?)?;
        let params = ReducedParams::from_configuration(&cc, 0.0)?;
        println!("masses ({m1:.3}, {m2:.3}, {m3:.3})");
        println!("  spacing ratio x = {:.12}", cc.x);
        for (i, a) in cc.positions.iter().enumerate() {
            println!("  a{} = ({:+.12}, {:+.12})", i + 1, a.x, a.y);
        }
        println!("  mu = {:.12}, I = {:.12}", cc.mu, cc.moment_of_inertia);
        println!("  largest force residual {:.2e}", cc.residuals().iter().fold(0.0f64, |m, r| m.max(*r)));
        println!("  D eigenvalues {:.10}, {:.10}, alpha = {:.10}", params.lambda3, params.lambda4, params.alpha);
    }

    let orbit = KeplerOrbit::new(1.0, 0.5, 1.0)?;
    println!("Kepler orbit e = 0.5: period {:.10}, sigma {:.10}", orbit.period, orbit.sigma);
    for k in 0..5 {
        let t = orbit.period * k as f64 / 8.0;
        let theta = orbit.theta_of_time(t);
        println!("  t = {t:.6}  theta = {theta:.10}  r = {:.10}", orbit.radius(theta));
    }
    Ok(())
}
