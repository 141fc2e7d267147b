//! Link budget for a BD at a few offsets from its dedicated LED.
//!
//! Run with `cargo run --example link_budget`.

use vlcbc::geometry::{DevicePose, Point3};
use vlcbc::montecarlo::Pipeline;
use vlcbc::rf::{linear_to_db, LinkDraws};
use vlcbc::SimParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = SimParams::baseline();
    let pipe = Pipeline::new(&params)?;
    let ue = Point3::new(5.0, 8.0, params.scenario.ue_height);

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>12} {:>12}",
        "r [m]", "SINR [dB]", "P_EH [mW]", "PL_f [dB]", "SNR [dB]", "R_vlc [kb/s]", "R_bc [kb/s]"
    );
    for r in [0.0, 0.5, 1.0, 1.5, 1.7] {
        let bd = DevicePose::upward(Point3::new(5.0 + r, 5.0, params.scenario.bd_height));
        let rec = pipe.evaluate(bd, ue, &LinkDraws::default(), &LinkDraws::default());
        println!(
            "{:>6.2} {:>10.2} {:>10.3} {:>10.2} {:>10.2} {:>12.1} {:>12.1}",
            r,
            linear_to_db(rec.vlc.sinr),
            rec.harvested_power * 1e3,
            rec.bc.pl_forward_db,
            linear_to_db(rec.bc.snr),
            rec.assessment.rate_vlc / 1e3,
            rec.assessment.rate_bc / 1e3,
        );
    }
    Ok(())
}
