//! SINR and harvested-power maps at three BD heights, written as CSV.
//!
//! `cargo run --release --example heatmaps -- out/heatmaps`

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use vlcbc::montecarlo::{compute_heatmap, HeatmapMetric, HeatmapSpec};
use vlcbc::output::{write_heatmap_csv, HeatmapMeta};
use vlcbc::SimParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/heatmaps".into()));
    std::fs::create_dir_all(&dir)?;

    for metric in [HeatmapMetric::VlcSinrDb, HeatmapMetric::HarvestedPower] {
        for h in [1.3, 1.5, 1.7] {
            let mut p = SimParams::baseline();
            p.scenario.bd_height = h;
            let grid = compute_heatmap(&p, &HeatmapSpec::new(metric, 10.0))?;
            let stem = format!("heatmap_{metric}_h{h:.2}");
            write_heatmap_csv(BufWriter::new(File::create(dir.join(format!("{stem}.csv")))?), &grid)?;
            serde_json::to_writer_pretty(
                File::create(dir.join(format!("{stem}.meta.json")))?,
                &HeatmapMeta::new(&grid, &p),
            )?;

            // coarse preview, one character per half meter
            println!("{metric} at {h} m (coverage radius {:.2} m)", grid.coverage_radius);
            let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
            for iy in (0..20).rev() {
                let row: String = (0..20)
                    .map(|ix| {
                        let v = grid.sample(ix as f64 * 0.5 + 0.25, iy as f64 * 0.5 + 0.25);
                        shades[((v * 9.0).round() as usize).min(9)]
                    })
                    .collect();
                println!("  |{row}|");
            }
        }
    }
    println!("CSV written to {}", dir.display());
    Ok(())
}
