use vlcbc::montecarlo::{run_campaign, run_sweep, wilson_interval, CampaignConfig, SweepAxis, Z95};
use vlcbc::rf::{Environment, PathlossMode};
use vlcbc::SimParams;

fn campaign(drops: u64, seed: u64, threads: usize) -> CampaignConfig {
    CampaignConfig {
        drops,
        seed,
        threads: Some(threads),
    }
}

#[test]
fn bernoulli_pathloss_is_thread_independent() {
    let mut p = SimParams::baseline();
    p.rf.pathloss_mode = PathlossMode::Bernoulli;
    p.rf.environment = Environment::Mixed;
    let a = run_campaign(&p, &campaign(5_000, 8, 1)).unwrap();
    let b = run_campaign(&p, &campaign(5_000, 8, 6)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn average_rate_identity_is_exact() {
    let rows = run_sweep(
        &SimParams::baseline(),
        &campaign(2_000, 4, 2),
        SweepAxis::RateThreshold,
        &[2e3, 1e4, 5e4],
    )
    .unwrap();
    for r in rows {
        assert_eq!(r.stats.avg_rate, (1.0 - r.stats.p_out_overall) * r.value);
        assert!(r.stats.avg_rate <= r.value);
    }
}

#[test]
fn overall_outage_is_the_union() {
    let s = run_campaign(&SimParams::baseline(), &campaign(50_000, 12, 4)).unwrap();
    assert!(s.p_out_overall >= s.p_out_vlc.max(s.p_out_bc));
    assert!(s.p_out_overall <= s.p_out_vlc + s.p_out_bc);
    let n = s.n_drops as f64;
    let count = |p: f64| (p * n).round() as u64;
    assert_eq!(
        count(s.p_out_overall),
        count(s.p_out_vlc) + count(s.p_out_bc) - count(s.p_out_both)
    );
}

#[test]
fn wilson_width_shrinks_with_drops() {
    let p = SimParams::baseline();
    let small = run_campaign(&p, &campaign(2_000, 21, 4)).unwrap();
    let large = run_campaign(&p, &campaign(20_000, 21, 4)).unwrap();
    let ratio = small.ci95.width() / large.ci95.width();
    assert!((ratio / 10f64.sqrt() - 1.0).abs() < 0.2, "ratio {ratio}");
    let k = (large.p_out_overall * 20_000.0).round() as u64;
    assert_eq!(wilson_interval(k, 20_000, Z95), large.ci95);
}

#[test]
fn common_random_numbers_across_sweep_points() {
    // higher code rate can only lower outage drop by drop
    let rows = run_sweep(
        &SimParams::baseline(),
        &campaign(5_000, 2, 3),
        SweepAxis::CodeRate,
        &[0.25, 0.5, 0.75, 1.0],
    )
    .unwrap();
    for w in rows.windows(2) {
        assert!(w[1].stats.p_out_overall <= w[0].stats.p_out_overall);
    }
}
