//! The escape-rate peak: sweep the level energy through the resonance at a
//! super-threshold step amplitude and write the exponent curve as CSV.
//! The exponent climbs linearly to zero at E_R, then drops abruptly to the
//! static WKB value — the signature sharp peak.
//!
//! Run with: `cargo run --example resonance_peak > peak.csv`

use euclidean_resonance::cli::{cmd_sweep, Output, OutputFormat, RunConfig};

fn main() {
    let mut cfg = RunConfig::default();
    cfg.set("units", "atomic");
    cfg.set("v", "1");
    cfg.set("field", "1");
    cfg.set("mass", "1");
    cfg.set("theta", "1");
    cfg.set("lambda", "0.6"); // above the threshold 1 - 1/sqrt(3)
    cfg.set("sweep", "E");
    cfg.set("from", "0.70");
    cfg.set("to", "0.95");
    cfg.set("points", "101");

    let out = cmd_sweep(&cfg, false).unwrap();
    print!("{}", out.render(OutputFormat::Csv));

    if let Output::Table(t) = &out {
        let col = |name: &str| t.columns.iter().position(|c| c == name).unwrap();
        let e_r = t.rows[0][col("e_r")];
        let peak = t
            .rows
            .iter()
            .max_by(|a, b| a[col("w_exponent")].total_cmp(&b[col("w_exponent")]))
            .unwrap();
        eprintln!(
            "# peak exponent {:.4} at E = {:.4} (E_R = {e_r:.4}); static exponent {:.4}",
            peak[col("w_exponent")],
            peak[col("E")],
            -peak[col("a0")]
        );
    }
}
