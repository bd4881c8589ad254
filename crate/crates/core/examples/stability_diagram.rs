//! Small (alpha, e) stability diagram with Galerkin indices, written as CSV.
//!
//! cargo run --release --example stability_diagram > diagram.csv

use ere_stability::atlas::{linspace, scan_alpha_e, scan_table, ScanOptions};
use ere_stability::maslov::GalerkinOptions;

fn main() {
    let alphas = linspace(2.0, 3.0, 21);
    let es = linspace(0.0, 0.6, 7);
    let opts = ScanOptions { galerkin: GalerkinOptions { n0: 64, n_max: 512, ..Default::default() }, indices: true };
    let records = scan_alpha_e(&alphas, &es, &opts);
    let failed = records.iter().filter(|r| r.error.is_some()).count();
    eprintln!("{} points, {failed} failed", records.len());
    scan_table(&records).write_csv(std::io::stdout().lock()).expect("write to stdout");
}
