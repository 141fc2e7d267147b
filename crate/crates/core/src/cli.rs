//! Command-line front end.
//!
//! ```text
//! vlcbc [--config PATH] [--seed N] [--drops N] [--out DIR]
//!       [--env open|mixed] [--pathloss expected|bernoulli] <COMMAND>
//!
//!   heatmap     per-cell maps at one or more BD heights
//!   sweep       outage and average rate along one parameter axis
//!   drop        every intermediate of one random drop
//!   linkbudget  every intermediate at fixed BD and UE positions
//! ```
//!
//! Each command writes CSV files plus `manifest.json` and a `config.toml`
//! snapshot to `--out`. Passing that snapshot back with `--config` reproduces
//! the outputs bit for bit.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{load_config, ConfigFile};
use crate::error::CliError;
use crate::geometry::Point3;
use crate::montecarlo::{
    compute_heatmap, drop_rng, linspace, oriented_pose, run_sweep, HeatmapMetric, HeatmapSpec, Normalization, Pipeline,
    SweepAxis,
};
use crate::output::{
    drop_quantities, write_heatmap_csv, write_quantities_csv, write_sweep_csv, HeatmapMeta, OutputDir, Quantity,
    RunManifest,
};
use crate::rf::{linear_to_db, Environment, LinkDraws, PathlossMode};

#[derive(Debug, Parser)]
#[command(name = "vlcbc", version, about = "VLC-to-backscatter relay link simulator")]
pub struct Cli {
    /// TOML configuration; missing fields take the baseline defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo drops per campaign.
    #[arg(long, global = true)]
    pub drops: Option<u64>,
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
    /// Radio environment of the backscatter hops.
    #[arg(long, global = true, value_enum)]
    pub env: Option<EnvArg>,
    #[arg(long, global = true, value_enum)]
    pub pathloss: Option<PathlossArg>,
    /// Repeat for more log output on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EnvArg {
    Open,
    Mixed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PathlossArg {
    Expected,
    Bernoulli,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Heatmap(HeatmapArgs),
    Sweep(SweepArgs),
    Drop(DropArgs),
    Linkbudget(LinkBudgetArgs),
}

#[derive(Debug, Args)]
pub struct HeatmapArgs {
    /// BD heights [m].
    #[arg(long, value_delimiter = ',', default_value = "1.3,1.5,1.7")]
    pub heights: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "vlc_sinr_db,harvested_power")]
    pub metric: Vec<HeatmapMetric>,
    /// Cells per meter.
    #[arg(long, default_value_t = 10.0)]
    pub resolution: f64,
    #[arg(long, value_enum, default_value = "max")]
    pub normalization: NormArg,
    /// UE position `x,y` for the radio metrics.
    #[arg(long, value_parser = parse_xy)]
    pub ue: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormArg {
    None,
    Max,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub axis: SweepAxis,
    /// Comma list `1.1,1.5` or inclusive range `start:step:stop`. Angles in degrees.
    #[arg(long)]
    pub values: ValueList,
}

/// Axis values given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueList(pub Vec<f64>);

impl std::str::FromStr for ValueList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_values(s).map(ValueList)
    }
}

#[derive(Debug, Args)]
pub struct DropArgs {
    /// Which drop of the seeded campaign to replay.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
}

#[derive(Debug, Args)]
pub struct LinkBudgetArgs {
    /// BD position `x,y`; defaults to below the dedicated LED.
    #[arg(long, value_parser = parse_xy)]
    pub bd: Option<(f64, f64)>,
    /// UE position `x,y`; defaults to the middle of the far half of the room.
    #[arg(long, value_parser = parse_xy)]
    pub ue: Option<(f64, f64)>,
}

fn parse_xy(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<_> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => Ok((
            x.parse().map_err(|e| format!("bad x `{x}`: {e}"))?,
            y.parse().map_err(|e| format!("bad y `{y}`: {e}"))?,
        )),
        _ => Err(format!("expected `x,y`, got `{s}`")),
    }
}

/// Parses `a,b,c` or `start:step:stop`.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}"));
    if s.contains(':') {
        let parts: Vec<_> = s.split(':').collect();
        let [start, step, stop] = parts.as_slice() else {
            return Err(format!("expected `start:step:stop`, got `{s}`"));
        };
        let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
        if !(step > 0.0) || stop < start {
            return Err(format!("empty range `{s}`"));
        }
        // count from the span so 1.1:0.1:1.9 gives 9 points despite rounding
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok(linspace(start, start + step * (n - 1) as f64, n))
    } else {
        s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect()
    }
}

/// Applies the command-line overrides to the loaded file.
pub fn resolve_config(cli: &Cli) -> Result<ConfigFile, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.campaign.seed = seed;
    }
    if let Some(drops) = cli.drops {
        cfg.campaign.drops = drops;
    }
    if let Some(env) = cli.env {
        cfg.rf.environment = match env {
            EnvArg::Open => Environment::Open,
            EnvArg::Mixed => Environment::Mixed,
        };
    }
    if let Some(pl) = cli.pathloss {
        cfg.rf.pathloss = match pl {
            PathlossArg::Expected => PathlossMode::Expected,
            PathlossArg::Bernoulli => PathlossMode::Bernoulli,
        };
    }
    cfg.to_params()?;
    Ok(cfg)
}

/// Runs `cli`, writing outputs and the manifest. Returns the manifest.
pub fn run(cli: &Cli) -> Result<RunManifest, CliError> {
    let cfg = resolve_config(cli)?;
    let params = cfg.to_params()?;
    let campaign = cfg.campaign();
    let mut out = OutputDir::new(&cli.out);
    let stdout = std::io::stdout();

    let name = match &cli.command {
        Command::Heatmap(a) => {
            if a.heights.is_empty() || a.metric.is_empty() {
                return Err(CliError::Usage("heatmap needs at least one height and metric".into()));
            }
            for &h in &a.heights {
                let mut p = params.clone();
                p.scenario.bd_height = h;
                for &metric in &a.metric {
                    let spec = HeatmapSpec {
                        metric,
                        resolution: a.resolution,
                        normalization: match a.normalization {
                            NormArg::None => Normalization::None,
                            NormArg::Max => Normalization::Max,
                        },
                        ue_xy: a.ue,
                    };
                    let grid = compute_heatmap(&p, &spec)?;
                    let stem = format!("heatmap_{metric}_h{h:.2}");
                    write_heatmap_csv(out.file(&format!("{stem}.csv"))?, &grid)?;
                    out.json(&format!("{stem}.meta.json"), &HeatmapMeta::new(&grid, &p))?;
                }
            }
            "heatmap"
        }
        Command::Sweep(a) => {
            if a.values.0.is_empty() {
                return Err(CliError::Usage("--values is empty".into()));
            }
            let rows = run_sweep(&params, &campaign, a.axis, &a.values.0)?;
            write_sweep_csv(out.file(&format!("sweep_{}.csv", a.axis))?, &rows)?;
            write_sweep_csv(stdout.lock(), &rows)?;
            "sweep"
        }
        Command::Drop(a) => {
            let pipe = Pipeline::new(&params)?;
            let rec = pipe.run_drop(&mut drop_rng(campaign.seed, a.index));
            let qs = drop_quantities(&rec, &params);
            write_quantities_csv(out.file(&format!("drop_{}.csv", a.index))?, &qs)?;
            write_quantities_csv(stdout.lock(), &qs)?;
            "drop"
        }
        Command::Linkbudget(a) => {
            let s = &params.scenario;
            let led = s.dedicated().position;
            let (bx, by) = a.bd.unwrap_or((led.x, led.y));
            let (ux, uy) = a.ue.unwrap_or((s.room_w / 2.0, 0.8 * s.room_l));
            let bd = Point3::new(bx, by, s.bd_height);
            let ue = Point3::new(ux, uy, s.ue_height);
            if !s.contains_xy(&bd) || !s.contains_xy(&ue) {
                return Err(CliError::Usage("BD and UE must lie inside the room".into()));
            }
            let pipe = Pipeline::new(&params)?;
            let rec = pipe.evaluate(
                oriented_pose(&params, bd),
                ue,
                &LinkDraws::default(),
                &LinkDraws::default(),
            );
            let mut qs = vec![
                Quantity {
                    name: "carrier_power".into(),
                    unit: "dBm",
                    value: linear_to_db(params.rf.carrier_power * 1e3),
                },
                Quantity {
                    name: "noise_power".into(),
                    unit: "dBm",
                    value: linear_to_db(params.rf.noise_psd * params.rf.bandwidth * 1e3),
                },
            ];
            qs.extend(drop_quantities(&rec, &params));
            write_quantities_csv(out.file("linkbudget.csv")?, &qs)?;
            write_quantities_csv(stdout.lock(), &qs)?;
            "linkbudget"
        }
    };

    let mut manifest = RunManifest::new(name, &cfg, campaign.threads);
    manifest.outputs = out.written().to_vec();
    let path = manifest.write(out.root())?;
    writeln!(
        std::io::stderr(),
        "wrote {} file(s) and {}",
        manifest.outputs.len(),
        path.display()
    )?;
    Ok(manifest)
}

/// Entry point used by the binary.
pub fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();
    match run(&cli) {
        Ok(_) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("1,2.5").unwrap(), vec![1.0, 2.5]);
        let r = parse_values("1.1:0.1:1.9").unwrap();
        assert_eq!(r.len(), 9);
        assert_eq!(r[0], 1.1);
        assert!((r[8] - 1.9).abs() < 1e-12);
        assert_eq!(parse_values("-40:10:40").unwrap().len(), 9);
        assert!(parse_values("1:0:2").is_err());
        assert!(parse_values("1:2").is_err());
        assert!(parse_values("a").is_err());
        let cli = Cli::parse_from(["vlcbc", "sweep", "--axis", "fov", "--values", "40,50,60"]);
        let Command::Sweep(a) = cli.command else { panic!() };
        assert_eq!(a.values.0, vec![40.0, 50.0, 60.0]);
    }

    #[test]
    fn xy() {
        assert_eq!(parse_xy("5, 6.5").unwrap(), (5.0, 6.5));
        assert!(parse_xy("5").is_err());
    }

    #[test]
    fn overrides_reach_params() {
        let cli = Cli::parse_from([
            "vlcbc",
            "--seed",
            "9",
            "--env",
            "mixed",
            "drop",
            "--pathloss",
            "bernoulli",
        ]);
        let cfg = resolve_config(&cli).unwrap();
        assert_eq!(cfg.campaign.seed, 9);
        assert_eq!(cfg.rf.environment, Environment::Mixed);
        assert_eq!(cfg.rf.pathloss, PathlossMode::Bernoulli);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
