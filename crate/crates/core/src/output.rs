//! CSV, metadata and manifest writers.
//!
//! Numbers are written with 9 significant digits in scientific notation, which
//! parses back to the same value in any CSV reader.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::ConfigFile;
use crate::energy::open_circuit_voltage;
use crate::montecarlo::{DropRecord, HeatmapGrid, SweepRow, RNG_ALGORITHM};
use crate::params::SimParams;
use crate::rf::{backscatter_efficiency, linear_to_db};

pub const SWEEP_HEADER: &str = "axis,value,p_out_vlc,p_out_bc,p_out_overall,avg_rate_bps,ci95_lo,ci95_hi,n_drops";
pub const HEATMAP_HEADER: &str = "x_m,y_m,value";
pub const QUANTITY_HEADER: &str = "name,unit,value";

/// Formats `x` with 9 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else {
        // `inf`, `-inf` and `NaN` are what Rust and pandas both parse
        format!("{x}")
    }
}

/// Parses what [`fmt_num`] writes.
pub fn parse_num(s: &str) -> Option<f64> {
    s.trim().parse().ok()
}

fn create(path: &Path) -> io::Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        let s = &r.stats;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.axis,
            fmt_num(r.value),
            fmt_num(s.p_out_vlc),
            fmt_num(s.p_out_bc),
            fmt_num(s.p_out_overall),
            fmt_num(s.avg_rate),
            fmt_num(s.ci95.lo),
            fmt_num(s.ci95.hi),
            s.n_drops
        )?;
    }
    w.flush()
}

pub fn write_heatmap_csv<W: Write>(mut w: W, grid: &HeatmapGrid) -> io::Result<()> {
    writeln!(w, "{HEATMAP_HEADER}")?;
    for (x, y, v) in grid.cells() {
        writeln!(w, "{},{},{}", fmt_num(x), fmt_num(y), fmt_num(v))?;
    }
    w.flush()
}

/// Sidecar describing a heatmap CSV, enough to redraw the coverage circles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapMeta {
    pub metric: String,
    pub unit: String,
    pub normalization: String,
    pub bd_height_m: f64,
    pub resolution_per_m: f64,
    pub nx: usize,
    pub ny: usize,
    pub room_m: [f64; 2],
    pub led_positions_m: Vec<[f64; 2]>,
    pub coverage_radius_m: f64,
    pub dedicated_led: usize,
}

impl HeatmapMeta {
    pub fn new(grid: &HeatmapGrid, params: &SimParams) -> Self {
        let s = &params.scenario;
        HeatmapMeta {
            metric: grid.metric.name().to_string(),
            unit: grid.metric.unit().to_string(),
            normalization: format!("{:?}", grid.normalization).to_lowercase(),
            bd_height_m: grid.bd_height,
            resolution_per_m: grid.resolution,
            nx: grid.nx,
            ny: grid.ny,
            room_m: [s.room_w, s.room_l],
            led_positions_m: s.leds.iter().map(|l| [l.position.x, l.position.y]).collect(),
            coverage_radius_m: grid.coverage_radius,
            dedicated_led: s.dedicated_led,
        }
    }
}

/// One named intermediate quantity of a drop or link budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub unit: &'static str,
    pub value: f64,
}

fn q(name: impl Into<String>, unit: &'static str, value: f64) -> Quantity {
    Quantity {
        name: name.into(),
        unit,
        value,
    }
}

/// Every intermediate of `rec`, in pipeline order.
pub fn drop_quantities(rec: &DropRecord, params: &SimParams) -> Vec<Quantity> {
    let s = &params.scenario;
    let led = s.dedicated().position;
    let n = rec.bd.normal();
    let mut out = vec![
        q("bd_x", "m", rec.bd.position.x),
        q("bd_y", "m", rec.bd.position.y),
        q("bd_z", "m", rec.bd.position.z),
        q("bd_tilt", "deg", rec.bd.tilt().to_degrees()),
        q("bd_normal_x", "1", n[0]),
        q("bd_normal_y", "1", n[1]),
        q("bd_normal_z", "1", n[2]),
        q("ue_x", "m", rec.ue.x),
        q("ue_y", "m", rec.ue.y),
        q("ue_z", "m", rec.ue.z),
        q("bd_led_distance", "m", rec.bd.position.distance(&led)),
        q("rfs_bd_distance", "m", s.rfs_position.distance(&rec.bd.position)),
        q("bd_ue_distance", "m", rec.bd.position.distance(&rec.ue)),
    ];
    for (i, g) in rec.vlc.gains.iter().enumerate() {
        out.push(q(format!("gain_led{i}"), "1", *g));
    }
    out.extend([
        q("gain_dedicated", "1", rec.vlc.dedicated_gain(s.dedicated_led)),
        q("vlc_sinr", "1", rec.vlc.sinr),
        q("vlc_sinr_db", "dB", linear_to_db(rec.vlc.sinr)),
        q("i_dc", "A", rec.vlc.i_dc),
        q("i_ac_amplitude", "A", rec.vlc.i_ac_amp),
        q("v_oc", "V", open_circuit_voltage(rec.vlc.i_dc, &params.energy)),
        q("harvested_power", "W", rec.harvested_power),
        q("backscatter_efficiency", "1", backscatter_efficiency(&params.rf)),
        q("pathloss_forward", "dB", rec.bc.pl_forward_db),
        q("pathloss_back", "dB", rec.bc.pl_back_db),
        q("los_forward", "1", rec.bc.los_forward),
        q("los_back", "1", rec.bc.los_back),
        q("bc_snr", "1", rec.bc.snr),
        q("bc_snr_db", "dB", linear_to_db(rec.bc.snr)),
        q("rate_vlc", "bit/s", rec.assessment.rate_vlc),
        q("rate_bc", "bit/s", rec.assessment.rate_bc),
        q("rate_threshold", "bit/s", params.fbl.rate_threshold),
        q("outage_vlc", "1", rec.assessment.outage_vlc as u8 as f64),
        q("outage_bc", "1", rec.assessment.outage_bc as u8 as f64),
        q("outage_overall", "1", rec.assessment.outage_overall as u8 as f64),
    ]);
    out
}

pub fn write_quantities_csv<W: Write>(mut w: W, quantities: &[Quantity]) -> io::Result<()> {
    writeln!(w, "{QUANTITY_HEADER}")?;
    for x in quantities {
        writeln!(w, "{},{},{}", x.name, x.unit, fmt_num(x.value))?;
    }
    w.flush()
}

/// Record of one CLI run, written next to its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub command: String,
    pub seed: u64,
    pub drops: u64,
    pub rng: String,
    pub threads: Option<usize>,
    pub config: ConfigFile,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub const FILE_NAME: &'static str = "manifest.json";
    pub const CONFIG_NAME: &'static str = "config.toml";

    pub fn new(command: &str, config: &ConfigFile, threads: Option<usize>) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: command.to_string(),
            seed: config.campaign.seed,
            drops: config.campaign.drops,
            rng: RNG_ALGORITHM.to_string(),
            threads,
            config: config.clone(),
            outputs: Vec::new(),
        }
    }

    /// Writes `manifest.json` and a `config.toml` snapshot that reproduces
    /// the run when passed back with `--config`.
    pub fn write(&self, dir: &Path) -> io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(Self::CONFIG_NAME), self.config.to_toml())?;
        let path = dir.join(Self::FILE_NAME);
        let mut w = create(&path)?;
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        w.flush()?;
        Ok(path)
    }

    pub fn read(path: &Path) -> io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(io::Error::from)
    }
}

/// Collects output files below one directory and records them for the manifest.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        OutputDir {
            root: root.into(),
            written: Vec::new(),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }

    /// Opens `name` for writing and records it.
    pub fn file(&mut self, name: &str) -> io::Result<BufWriter<File>> {
        let w = create(&self.root.join(name))?;
        log::info!("writing {}", self.root.join(name).display());
        self.written.push(name.to_string());
        Ok(w)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> io::Result<()> {
        let mut w = self.file(name)?;
        serde_json::to_writer_pretty(&mut w, value)?;
        writeln!(w)?;
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{
        compute_heatmap, drop_rng, run_sweep, CampaignConfig, HeatmapMetric, HeatmapSpec, Pipeline, SweepAxis,
    };

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_num(0.123456789123), "1.23456789e-1");
        assert_eq!(fmt_num(10000.0), "1.00000000e4");
        assert_eq!(fmt_num(0.0), "0.00000000e0");
        assert_eq!(parse_num(&fmt_num(0.2033)), Some(0.2033));
        assert_eq!(parse_num(&fmt_num(f64::INFINITY)), Some(f64::INFINITY));
    }

    #[test]
    fn sweep_csv_shape() {
        let cfg = CampaignConfig {
            drops: 50,
            seed: 1,
            threads: Some(1),
        };
        let rows = run_sweep(&SimParams::baseline(), &cfg, SweepAxis::BdHeight, &[1.3, 1.5]).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("bd_height,1.30000000e0,"));
        assert!(lines[1].ends_with(",50"));
    }

    #[test]
    fn heatmap_csv_rows() {
        let g = compute_heatmap(
            &SimParams::baseline(),
            &HeatmapSpec::new(HeatmapMetric::HarvestedPower, 1.0),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_heatmap_csv(&mut buf, &g).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 101);
        let meta = HeatmapMeta::new(&g, &SimParams::baseline());
        assert_eq!(meta.led_positions_m.len(), 9);
        assert_eq!(meta.normalization, "max");
    }

    #[test]
    fn drop_quantities_are_named_once() {
        let p = SimParams::baseline();
        let rec = Pipeline::new(&p).unwrap().run_drop(&mut drop_rng(3, 0));
        let qs = drop_quantities(&rec, &p);
        let mut names: Vec<_> = qs.iter().map(|q| q.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), qs.len());
        assert!(qs.iter().all(|q| !q.name.contains(',')));
    }
}
