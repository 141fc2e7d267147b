//! Loading a TOML configuration and running one campaign from it.

use vlcbc::config::ConfigFile;
use vlcbc::montecarlo::run_campaign;

const CONFIG: &str = r#"
[scenario]
bd_height_m = 1.6
fov_deg = 50

[rf]
environment = "mixed"
pathloss = "bernoulli"

[fbl]
rate_threshold_bps = 20000

[campaign]
drops = 20000
seed = 7
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file = ConfigFile::from_toml(CONFIG)?;
    let params = file.to_params()?;
    let stats = run_campaign(&params, &file.campaign())?;
    println!("{}", serde_json::to_string_pretty(&stats)?);

    // a bad value is reported with its field path
    let bad = ConfigFile::from_toml("[fbl]\ntarget_error = 2.0\n")?;
    if let Err(e) = bad.to_params() {
        println!("rejected: {e}");
    }
    Ok(())
}
