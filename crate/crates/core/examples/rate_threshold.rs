//! Outage and average end-to-end rate against the rate requirement, written
//! as a sweep CSV.
//!
//! `cargo run --release --example rate_threshold -- out/rate_threshold.csv`

use std::fs::File;
use std::io::BufWriter;

use vlcbc::montecarlo::{logspace, run_sweep, CampaignConfig, SweepAxis};
use vlcbc::output::write_sweep_csv;
use vlcbc::SimParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "out/rate_threshold.csv".into());
    let cfg = CampaignConfig {
        drops: 10_000,
        ..CampaignConfig::default()
    };
    // a decade past 100 kbit/s shows where the average rate turns over
    let thresholds = logspace(1e3, 1e6, 19);

    let mut all = Vec::new();
    for rc in [0.5, 0.75] {
        let mut p = SimParams::baseline();
        p.fbl.code_rate = rc;
        let rows = run_sweep(&p, &cfg, SweepAxis::RateThreshold, &thresholds)?;
        let best = rows
            .iter()
            .max_by(|a, b| a.stats.avg_rate.total_cmp(&b.stats.avg_rate))
            .expect("non-empty sweep");
        println!(
            "R_c {rc:.2}: peak average rate {:.1} kbit/s at R_th = {:.1} kbit/s",
            best.stats.avg_rate / 1e3,
            best.value / 1e3
        );
        for r in &rows {
            println!(
                "  {:>9.1} kbit/s  P_out {:.4}  avg {:>8.2} kbit/s",
                r.value / 1e3,
                r.stats.p_out_overall,
                r.stats.avg_rate / 1e3
            );
        }
        all.extend(rows);
    }
    if let Some(dir) = std::path::Path::new(&path).parent() {
        std::fs::create_dir_all(dir)?;
    }
    write_sweep_csv(BufWriter::new(File::create(&path)?), &all)?;
    println!("wrote {path}");
    Ok(())
}
