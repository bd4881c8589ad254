//! Coarse stability map over the (m1, m3) mass plane as an ASCII picture.
//!
//! cargo run --release --example mass_plane

use ere_stability::atlas::{linspace, scan_mass_plane};
use ere_stability::spectral::Verdict;

fn main() {
    let n = 21;
    let grid = linspace(0.0, 1.0, n);
    let records = scan_mass_plane(&grid, &grid, 0.0);
    println!("rows m1 from 0 to 1, columns m3 from 0 to 1");
    println!("S strongly stable, s stable, u spectrally stable, e elliptic-hyperbolic, h hyperbolic");
    for (i, &m1) in grid.iter().enumerate() {
        let line: String = grid
            .iter()
            .map(|&m3| {
                records
                    .iter()
                    .find(|r| r.m1 == m1 && r.m3 == m3)
                    .map_or(' ', |r| match r.verdict {
                        Some(Verdict::StronglyLinearlyStable) => 'S',
                        Some(Verdict::LinearlyStableNotStrong) => 's',
                        Some(Verdict::SpectrallyStableLinearlyUnstable) => 'u',
                        Some(Verdict::EllipticHyperbolic) => 'e',
                        Some(Verdict::Hyperbolic) => 'h',
                        None => '?',
                    })
            })
            .collect();
        println!("{:>5.2} {line}", grid[i]);
    }
}
