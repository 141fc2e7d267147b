use std::fs;
use std::path::Path;

use clap::Parser;
use vlcbc::cli::{run, Cli};
use vlcbc::montecarlo::{wilson_interval, Z95};
use vlcbc::output::{fmt_num, parse_num, RunManifest, HEATMAP_HEADER, QUANTITY_HEADER, SWEEP_HEADER};

fn cli(out: &Path, args: &[&str]) -> Cli {
    let mut full = vec!["vlcbc", "--out", out.to_str().unwrap()];
    full.extend_from_slice(args);
    Cli::parse_from(full)
}

fn read(path: impl AsRef<Path>) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn height_sweep_has_nine_rows() {
    let dir = tempfile::tempdir().unwrap();
    let m = run(&cli(
        dir.path(),
        &[
            "--drops",
            "300",
            "sweep",
            "--axis",
            "bd_height",
            "--values",
            "1.1:0.1:1.9",
        ],
    ))
    .unwrap();
    assert_eq!(m.outputs, vec!["sweep_bd_height.csv"]);
    let text = read(dir.path().join("sweep_bd_height.csv"));
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], SWEEP_HEADER);
    assert_eq!(lines.len(), 10);
    assert!(lines[1..]
        .iter()
        .all(|l| l.split(',').count() == 9 && l.starts_with("bd_height,")));
}

#[test]
fn heatmap_three_heights() {
    let dir = tempfile::tempdir().unwrap();
    let m = run(&cli(
        dir.path(),
        &["heatmap", "--metric", "vlc_sinr_db", "--resolution", "2"],
    ))
    .unwrap();
    let csvs: Vec<_> = m.outputs.iter().filter(|o| o.ends_with(".csv")).collect();
    assert_eq!(csvs.len(), 3);
    for h in ["1.30", "1.50", "1.70"] {
        let text = read(dir.path().join(format!("heatmap_vlc_sinr_db_h{h}.csv")));
        assert!(text.starts_with(HEATMAP_HEADER));
        assert_eq!(text.lines().count(), 1 + 20 * 20);
        let meta: serde_json::Value =
            serde_json::from_str(&read(dir.path().join(format!("heatmap_vlc_sinr_db_h{h}.meta.json")))).unwrap();
        assert_eq!(meta["nx"], 20);
        assert_eq!(meta["led_positions_m"].as_array().unwrap().len(), 9);
    }
}

#[test]
fn drop_output_is_repeatable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(&cli(a.path(), &["--seed", "5", "drop", "--index", "17"])).unwrap();
    run(&cli(b.path(), &["--seed", "5", "drop", "--index", "17"])).unwrap();
    let (x, y) = (read(a.path().join("drop_17.csv")), read(b.path().join("drop_17.csv")));
    assert_eq!(x, y);
    assert!(x.starts_with(QUANTITY_HEADER));
    run(&cli(b.path(), &["--seed", "6", "drop", "--index", "17"])).unwrap();
    assert_ne!(x, read(b.path().join("drop_17.csv")));
}

#[test]
fn linkbudget_at_coaxial_point() {
    let dir = tempfile::tempdir().unwrap();
    run(&cli(dir.path(), &["linkbudget", "--bd", "5,5", "--ue", "5,8"])).unwrap();
    let text = read(dir.path().join("linkbudget.csv"));
    let get = |name: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{name},")))
            .and_then(|rest| parse_num(rest.split(',').nth(1)?))
            .unwrap()
    };
    assert!((get("gain_dedicated") - 0.0159154943).abs() < 1e-10);
    assert!((get("i_dc") - 0.119366207).abs() < 1e-9);
    assert_eq!(get("outage_overall"), 0.0);
}

#[test]
fn manifest_reproduces_outputs() {
    let first = tempfile::tempdir().unwrap();
    let args = [
        "--drops", "400", "--seed", "3", "--env", "mixed", "sweep", "--axis", "fov", "--values", "40,50,60",
    ];
    let m = run(&cli(first.path(), &args)).unwrap();
    let manifest = RunManifest::read(&first.path().join(RunManifest::FILE_NAME)).unwrap();
    assert_eq!(manifest, m);
    assert_eq!(manifest.seed, 3);
    assert_eq!(manifest.config.campaign.drops, 400);

    let second = tempfile::tempdir().unwrap();
    let snapshot = first.path().join(RunManifest::CONFIG_NAME);
    run(&cli(
        second.path(),
        &[
            "--config",
            snapshot.to_str().unwrap(),
            "sweep",
            "--axis",
            "fov",
            "--values",
            "40,50,60",
        ],
    ))
    .unwrap();
    assert_eq!(
        read(first.path().join("sweep_fov.csv")),
        read(second.path().join("sweep_fov.csv"))
    );
}

#[test]
fn sweep_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    run(&cli(
        dir.path(),
        &[
            "--drops",
            "700",
            "sweep",
            "--axis",
            "rate_threshold",
            "--values",
            "5000,20000,80000",
        ],
    ))
    .unwrap();
    let text = read(dir.path().join("sweep_rate_threshold.csv"));
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: u64 = f[8].parse().unwrap();
        let r_th = parse_num(f[1]).unwrap();
        let p = parse_num(f[4]).unwrap();
        let k = (p * n as f64).round() as u64;
        let p_exact = k as f64 / n as f64;
        assert_eq!(fmt_num(p_exact), f[4]);
        assert_eq!(fmt_num((1.0 - p_exact) * r_th), f[5]);
        let ci = wilson_interval(k, n, Z95);
        assert_eq!(fmt_num(ci.lo), f[6]);
        assert_eq!(fmt_num(ci.hi), f[7]);
    }
}

#[test]
fn bad_arguments_fail() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&cli(dir.path(), &["sweep", "--axis", "code_rate", "--values", "1.5"])).is_err());
    assert!(run(&cli(dir.path(), &["--config", "/nonexistent.toml", "drop"])).is_err());
    assert!(run(&cli(dir.path(), &["linkbudget", "--bd", "50,5"])).is_err());
    assert!(Cli::try_parse_from(["vlcbc", "sweep", "--axis", "height", "--values", "1"]).is_err());
    assert!(Cli::try_parse_from(["vlcbc", "--env", "outdoor", "drop"]).is_err());
}
