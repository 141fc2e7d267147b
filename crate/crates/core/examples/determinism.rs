//! The same seed gives bit-identical statistics for any worker count.

use vlcbc::montecarlo::{run_campaign, CampaignConfig};
use vlcbc::SimParams;

fn main() -> Result<(), vlcbc::ModelError> {
    let p = SimParams::baseline();
    let mut reference = None;
    for threads in [1, 2, 4, 8] {
        let cfg = CampaignConfig {
            drops: 50_000,
            seed: 42,
            threads: Some(threads),
        };
        let t = std::time::Instant::now();
        let stats = run_campaign(&p, &cfg)?;
        println!(
            "{threads} thread(s): P_out {:.6}, mean harvested {:.6e} W, {:?}",
            stats.p_out_overall,
            stats.mean_harvested_power,
            t.elapsed()
        );
        match &reference {
            None => reference = Some(stats),
            Some(r) => assert_eq!(r, &stats),
        }
    }
    println!("identical across thread counts");
    Ok(())
}
