//! Overall outage against BD height for three receiver fields of view.

use vlcbc::montecarlo::{linspace, run_sweep, CampaignConfig, SweepAxis};
use vlcbc::SimParams;

fn main() -> Result<(), vlcbc::ModelError> {
    let drops = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let cfg = CampaignConfig {
        drops,
        ..CampaignConfig::default()
    };
    let heights = linspace(1.1, 1.9, 9);
    for fov in [40.0_f64, 50.0, 60.0] {
        let mut p = SimParams::baseline();
        p.scenario.fov = fov.to_radians();
        let rows = run_sweep(&p, &cfg, SweepAxis::BdHeight, &heights)?;
        let line: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.1}:{:.4}", r.value, r.stats.p_out_overall))
            .collect();
        println!("FoV {fov:>4} deg  {}", line.join("  "));
    }
    Ok(())
}
