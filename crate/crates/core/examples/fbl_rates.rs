//! Finite-blocklength rates of both hops against Shannon capacity.

use vlcbc::fbl::{dispersion_awgn, dispersion_vlc, effective_vlc_sinr, fbl_rate, FblParams};
use vlcbc::rf::db_to_linear;
use vlcbc::SimParams;

fn main() -> Result<(), vlcbc::ModelError> {
    let base = SimParams::baseline().fbl;
    let b = base.bandwidth;

    println!("rate [kbit/s] at u = {}, eps = {}", base.blocklength, base.target_error);
    println!("{:>8} {:>10} {:>10} {:>10}", "SNR dB", "Shannon", "BC", "VLC");
    for snr_db in [-5.0, 0.0, 5.0, 10.0, 20.0, 30.0] {
        let g = db_to_linear(snr_db);
        let bc = fbl_rate(g, dispersion_awgn(g), &base)?;
        let gp = effective_vlc_sinr(g);
        let vlc = fbl_rate(gp, dispersion_vlc(gp), &base)?;
        println!(
            "{snr_db:>8.1} {:>10.2} {:>10.2} {:>10.2}",
            b * (1.0 + g).log2() / 1e3,
            bc / 1e3,
            vlc / 1e3
        );
    }

    println!("\nBC rate at 10 dB against blocklength");
    let g = db_to_linear(10.0);
    for u in [16, 32, 64, 128, 256, 1024, 1 << 20] {
        let p = FblParams {
            blocklength: u,
            ..base.clone()
        };
        println!("{u:>8} {:>10.3} kbit/s", fbl_rate(g, dispersion_awgn(g), &p)? / 1e3);
    }
    Ok(())
}
