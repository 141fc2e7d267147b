//! Overall outage against BD orientation.
//!
//! The fixed-azimuth frame tilts every BD the same way in the room; the
//! toward-dedicated frame leans each BD toward its own LED.

use vlcbc::montecarlo::{linspace, run_sweep, CampaignConfig, SweepAxis};
use vlcbc::{SimParams, TiltFrame};

fn main() -> Result<(), vlcbc::ModelError> {
    let drops = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let cfg = CampaignConfig {
        drops,
        ..CampaignConfig::default()
    };
    let angles = linspace(-40.0, 40.0, 9);

    for frame in [TiltFrame::FixedAzimuth, TiltFrame::TowardDedicated] {
        println!("{frame:?}");
        for rc in [0.5, 0.75] {
            let mut p = SimParams::baseline();
            p.scenario.tilt_frame = frame;
            p.fbl.code_rate = rc;
            for r in run_sweep(&p, &cfg, SweepAxis::BdOrientation, &angles)? {
                println!(
                    "  R_c {rc:.2}  alpha {:>5.0} deg  P_vlc {:.4}  P_bc {:.4}  P_out {:.4}",
                    r.value, r.stats.p_out_vlc, r.stats.p_out_bc, r.stats.p_out_overall
                );
            }
        }
    }
    Ok(())
}
