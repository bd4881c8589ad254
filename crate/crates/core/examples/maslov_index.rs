//! omega-Morse indices from the Galerkin operator, checked against splitting numbers
//! and the Bott iteration formula.
//!
//! cargo run --release --example maslov_index

use num_complex::Complex64;

use ere_stability::maslov::{bott_check, index_via_splitting, morse_index, GalerkinOptions};
use ere_stability::monodromy::period_map_alpha;

fn main() -> ere_stability::Result<()> {
    let opts = GalerkinOptions::default();
    let one = Complex64::new(1.0, 0.0);
    println!("{:>6} {:>5} {:>6} {:>6} {:>8} {:>6} {:>9}", "alpha", "e", "omega", "i", "nu", "N", "splitting");
    for (alpha, e) in [(0.0, 0.3), (2.0, 0.3), (2.85, 0.0), (2.9, 0.0), (2.9, 0.5), (3.0, 0.2)] {
        let m = period_map_alpha(alpha, e)?.period_map;
        let i1 = morse_index(alpha, e, one, &opts)?.require_converged()?.i_omega;
        for phase in [1.0, 0.5, 0.0] {
            let omega = Complex64::from_polar(1.0, std::f64::consts::PI * phase);
            let rec = morse_index(alpha, e, omega, &opts)?;
            let split = index_via_splitting(i1, &m, omega).map_or("marginal".to_string(), |v| v.to_string());
            println!(
                "{alpha:>6.3} {e:>5.2} {:>6} {:>6} {:>8} {:>6} {split:>9}",
                format!("{phase}pi"),
                rec.i_omega,
                rec.nu_omega,
                rec.n_used
            );
        }
    }
    let bott = bott_check(2.9, 0.0, &opts)?;
    println!("Bott at (2.9, 0): i1 on two periods {} = {} + {}: {}", bott.doubled, bott.i1, bott.i_minus1, bott.holds);
    Ok(())
}
