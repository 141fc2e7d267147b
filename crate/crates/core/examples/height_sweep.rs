//! Overall outage against BD height for several code rates, open and mixed
//! indoor propagation.
//!
//! `cargo run --release --example height_sweep -- [drops]`

use vlcbc::montecarlo::{linspace, run_sweep, CampaignConfig, SweepAxis};
use vlcbc::rf::Environment;
use vlcbc::SimParams;

fn main() -> Result<(), vlcbc::ModelError> {
    let drops = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let cfg = CampaignConfig {
        drops,
        ..CampaignConfig::default()
    };
    let heights = linspace(1.1, 1.9, 9);

    print!("{:>16}", "h_BD [m]");
    for h in &heights {
        print!("{h:>8.1}");
    }
    println!();
    for env in [Environment::Open, Environment::Mixed] {
        for rc in [0.5, 2.0 / 3.0, 0.75] {
            let mut p = SimParams::baseline();
            p.rf.environment = env;
            p.fbl.code_rate = rc;
            let rows = run_sweep(&p, &cfg, SweepAxis::BdHeight, &heights)?;
            print!("{:>10} {rc:>5.3}", format!("{env:?}"));
            for r in rows {
                print!("{:>8.4}", r.stats.p_out_overall);
            }
            println!();
        }
    }
    Ok(())
}
