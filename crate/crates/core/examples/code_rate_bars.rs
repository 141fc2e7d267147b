//! Separate VLC and backscatter outage for several code rates.

use vlcbc::montecarlo::{run_sweep, CampaignConfig, SweepAxis};
use vlcbc::rf::Environment;
use vlcbc::SimParams;

fn main() -> Result<(), vlcbc::ModelError> {
    let cfg = CampaignConfig {
        drops: 20_000,
        ..CampaignConfig::default()
    };
    let rates = [1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75];
    println!("{:>6} {:>8} {:>10} {:>10}", "R_c", "env", "P_vlc", "P_bc");
    for env in [Environment::Open, Environment::Mixed] {
        let mut p = SimParams::baseline();
        p.rf.environment = env;
        for r in run_sweep(&p, &cfg, SweepAxis::CodeRate, &rates)? {
            let bar = "#".repeat((r.stats.p_out_bc * 200.0).round() as usize);
            println!(
                "{:>6.3} {:>8} {:>10.4} {:>10.4} {bar}",
                r.value,
                format!("{env:?}"),
                r.stats.p_out_vlc,
                r.stats.p_out_bc
            );
        }
    }
    Ok(())
}
