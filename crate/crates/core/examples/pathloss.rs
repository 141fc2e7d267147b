//! InH path loss and LoS probability of the backscatter hops.

use vlcbc::rf::{los_probability, pathloss_los_db, pathloss_nlos_db, Environment};

fn main() {
    let fc = 2.45;
    println!(
        "{:>6} {:>9} {:>9} {:>8} {:>8}",
        "d [m]", "LoS dB", "NLoS dB", "Pr open", "Pr mix"
    );
    for d in [1.0, 2.0, 3.0, 5.0, 6.5, 8.0, 10.0, 14.0] {
        println!(
            "{d:>6.1} {:>9.2} {:>9.2} {:>8.3} {:>8.3}",
            pathloss_los_db(d, fc, 0.0),
            pathloss_nlos_db(d, fc, 0.0, 0.0),
            los_probability(d, Environment::Open),
            los_probability(d, Environment::Mixed),
        );
    }
}
