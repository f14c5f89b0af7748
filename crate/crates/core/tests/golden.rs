use rrt_rewire::{run_experiment, ExperimentConfig, Variant};
use serde::Deserialize;

#[derive(Deserialize)]
struct Golden {
    map: Vec<GoldenMap>,
}

#[derive(Deserialize)]
struct GoldenMap {
    id: u32,
    successes: u32,
    total_iterations: u64,
    mean_raw_px: f64,
    mean_rewired_px: f64,
    ratio_pct: u32,
    reference_ratio_pct: u32,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * b.abs()
}

#[test]
fn seed_one_benchmark_matches_golden_values() {
    let golden: Golden = toml::from_str(include_str!("golden/seed1.toml")).unwrap();
    let exp = run_experiment(&ExperimentConfig {
        base_seed: 1,
        ..ExperimentConfig::default()
    })
    .unwrap();

    for g in &golden.map {
        let raw = exp.summary.row(g.id, Variant::RrtRaw).unwrap();
        let rewired = exp.summary.row(g.id, Variant::RrtPlusRewire).unwrap();
        let iterations: u64 = exp
            .trials
            .iter()
            .filter(|t| t.map_id == g.id && t.variant == Variant::RrtRaw)
            .map(|t| t.iterations)
            .sum();

        assert_eq!(raw.success_count, g.successes, "map {}", g.id);
        assert_eq!(iterations, g.total_iterations, "map {}", g.id);
        assert!(close(raw.mean_path_length_px.unwrap(), g.mean_raw_px), "map {}", g.id);
        assert!(close(rewired.mean_path_length_px.unwrap(), g.mean_rewired_px), "map {}", g.id);
        assert_eq!(rewired.path_length_ratio_pct, Some(g.ratio_pct), "map {}", g.id);
        assert!(g.ratio_pct < 100 && g.reference_ratio_pct < 100);
    }
}

#[test]
fn map_two_mean_length_in_expected_range() {
    let exp = run_experiment(&ExperimentConfig {
        map_ids: vec![2],
        base_seed: 1,
        ..ExperimentConfig::default()
    })
    .unwrap();
    let raw = exp.summary.row(2, Variant::RrtRaw).unwrap();
    assert_eq!(raw.success_count, 100);
    let mean = raw.mean_path_length_px.unwrap();
    assert!((850.0..=1100.0).contains(&mean), "{mean}");
}
