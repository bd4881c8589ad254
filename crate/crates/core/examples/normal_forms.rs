//! Normal forms, Krein signs and verdicts along the circular line and off it.
//!
//! cargo run --example normal_forms

use ere_stability::monodromy::period_map_alpha;
use ere_stability::spectral::{analyze, eigenstructure, Tolerances};

fn main() -> ere_stability::Result<()> {
    let points = [(1.0, 0.0), (8f64.sqrt(), 0.0), (2.85, 0.0), (33f64.sqrt() / 2.0, 0.0), (2.95, 0.0), (2.7, 0.5), (2.9, 0.5)];
    for (alpha, e) in points {
        let m = period_map_alpha(alpha, e)?.period_map;
        let es = eigenstructure(&m, &Tolerances::default())?;
        let verdict = analyze(&m)?;
        println!("alpha = {alpha:.6}, e = {e}");
        for (k, l) in es.eigenvalues.iter().enumerate() {
            let krein = es.krein[k].map_or("-".to_string(), |s| format!("{s:+}"));
            println!("  {:+.10} {:+.10}i  |l| = {:.10}  krein {krein}", l.re, l.im, l.norm());
        }
        println!("  form {}  verdict {}  region {:?}", verdict.normal_form, verdict.verdict, verdict.region);
    }
    Ok(())
}
