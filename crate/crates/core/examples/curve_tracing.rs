//! Traces the curves alpha_k(e), alpha_s(e) and alpha_m(e) and prints them as CSV.
//!
//! cargo run --release --example curve_tracing

use ere_stability::atlas::{curve_table, trace_curves, CurveOptions};

fn main() {
    let es = [0.0, 0.1, 0.2, 0.3, 0.5, 0.7];
    let samples = trace_curves(&es, &CurveOptions::default());
    for (e, s) in es.iter().zip(&samples) {
        match s {
            Ok(s) => {
                let note = if s.coincident { " (alpha_s = alpha_m)" } else { "" };
                eprintln!("e = {e:.2}: ordered {}{note}", s.is_ordered());
            }
            Err(err) => eprintln!("e = {e:.2}: {err}"),
        }
    }
    curve_table(&samples, &es).write_csv(std::io::stdout().lock()).expect("write to stdout");
}
