//! Repeated seeded trials over the built-in maps, comparing the raw first
//! complete RRT path against the same path after rewiring.
//!
//! Trials are paired: the rewired variant post-processes the exact raw path
//! of the same trial, and its planning time is the raw planning time plus the
//! rewiring time.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::BenchError;
use crate::rewire::{post_triangular_rewire, Path};
use crate::rrt::{plan, PlannerConfig};
use crate::workspace::{builtin_map, WorldMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    RrtRaw,
    RrtPlusRewire,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::RrtRaw, Variant::RrtPlusRewire];

    pub fn label(self) -> &'static str {
        match self {
            Variant::RrtRaw => "RRT",
            Variant::RrtPlusRewire => "RRT + rewiring",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    Csv,
    #[default]
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// One thread end to end; the only mode whose timings are meaningful.
    #[default]
    Sequential,
    /// Trials spread over worker threads. Results match sequential mode
    /// except for the timing fields.
    Parallel { threads: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub map_ids: Vec<u32>,
    pub trials: u32,
    /// `seed` is ignored; trial `i` uses `base_seed + i`.
    pub planner: PlannerConfig,
    pub variants: Vec<Variant>,
    pub base_seed: u64,
    pub execution: Execution,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            map_ids: vec![1, 2, 3, 4],
            trials: 100,
            planner: PlannerConfig::default(),
            variants: Variant::ALL.to_vec(),
            base_seed: 0,
            execution: Execution::Sequential,
        }
    }
}

/// One trial of one variant. Serialized as a single JSON line in trial logs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub map_id: u32,
    pub trial_index: u32,
    pub seed: u64,
    pub variant: Variant,
    pub success: bool,
    pub path_length_px: Option<f64>,
    pub planning_time_ms: f64,
    pub rewire_time_ms: f64,
    pub iterations: u64,
}

impl TrialResult {
    /// Copy with the wall-clock fields zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            planning_time_ms: 0.0,
            rewire_time_ms: 0.0,
            ..self.clone()
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("trial result serializes")
    }
}

/// Both variants of one trial, with the paths they measured.
#[derive(Debug, Clone)]
pub struct TrialPair {
    pub raw: TrialResult,
    pub rewired: TrialResult,
    pub raw_path: Option<Path>,
    pub rewired_path: Option<Path>,
}

/// Plans once with `seed` and rewires the resulting path.
pub fn run_trial(
    map: &WorldMap,
    map_id: u32,
    trial_index: u32,
    cfg: &PlannerConfig,
    seed: u64,
) -> Result<TrialPair, BenchError> {
    let cfg = PlannerConfig { seed, ..cfg.clone() };
    let outcome = plan(map, &cfg)?;
    let raw = TrialResult {
        map_id,
        trial_index,
        seed,
        variant: Variant::RrtRaw,
        success: outcome.success(),
        path_length_px: outcome.path.as_ref().map(Path::length),
        planning_time_ms: outcome.planning_time_ms,
        rewire_time_ms: 0.0,
        iterations: outcome.iterations,
    };
    let rewired_path = outcome
        .path
        .as_ref()
        .map(|p| post_triangular_rewire(p, map).expect("planner paths are collision-free"));
    let rewire_time_ms = rewired_path.as_ref().map_or(0.0, |(_, r)| r.rewire_time_ms);
    let rewired = TrialResult {
        variant: Variant::RrtPlusRewire,
        path_length_px: rewired_path.as_ref().map(|(p, _)| p.length()),
        planning_time_ms: raw.planning_time_ms + rewire_time_ms,
        rewire_time_ms,
        ..raw.clone()
    };
    Ok(TrialPair {
        raw,
        rewired,
        raw_path: outcome.path,
        rewired_path: rewired_path.map(|(p, _)| p),
    })
}

/// Aggregates for one (map, variant) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantSummary {
    pub map_id: u32,
    pub variant: Variant,
    pub trials: u32,
    pub success_count: u32,
    /// Means over successful trials; `None` when no trial succeeded.
    pub mean_path_length_px: Option<f64>,
    pub mean_planning_time_ms: Option<f64>,
    pub mean_rewire_time_ms: Option<f64>,
    /// Whole percent of the raw RRT mean, see [`relative_percent`].
    pub path_length_ratio_pct: Option<u32>,
    pub planning_time_ratio_pct: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentSummary {
    pub rows: Vec<VariantSummary>,
}

impl ExperimentSummary {
    pub fn row(&self, map_id: u32, variant: Variant) -> Option<&VariantSummary> {
        self.rows.iter().find(|r| r.map_id == map_id && r.variant == variant)
    }

    pub fn map_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.rows.iter().map(|r| r.map_id).collect();
        ids.dedup();
        ids
    }
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub trials: Vec<TrialResult>,
    pub summary: ExperimentSummary,
}

/// Ratio of `value` to `baseline` in whole percent, as printed in the result
/// tables: truncated toward zero, except that anything within one percentage
/// point of parity prints as 100.
pub fn relative_percent(value: f64, baseline: f64) -> Option<u32> {
    if baseline.is_nan() || baseline <= 0.0 || !value.is_finite() || value < 0.0 {
        return None;
    }
    let pct = 100.0 * value / baseline;
    if (pct - 100.0).abs() < 1.0 {
        Some(100)
    } else {
        Some(pct.trunc() as u32)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Per-(map, variant) means and ratios. Rows follow the order maps first
/// appear in `trials`, then [`Variant`] order.
pub fn summarize(trials: &[TrialResult]) -> ExperimentSummary {
    let mut map_ids: Vec<u32> = Vec::new();
    for t in trials {
        if !map_ids.contains(&t.map_id) {
            map_ids.push(t.map_id);
        }
    }
    let mut rows = Vec::new();
    for &map_id in &map_ids {
        let cell = |variant: Variant| trials.iter().filter(move |t| t.map_id == map_id && t.variant == variant);
        let mut map_rows: Vec<VariantSummary> = Vec::new();
        for variant in Variant::ALL {
            let all: Vec<&TrialResult> = cell(variant).collect();
            if all.is_empty() {
                continue;
            }
            let ok: Vec<&TrialResult> = all.iter().copied().filter(|t| t.success).collect();
            map_rows.push(VariantSummary {
                map_id,
                variant,
                trials: all.len() as u32,
                success_count: ok.len() as u32,
                mean_path_length_px: mean(ok.iter().filter_map(|t| t.path_length_px)),
                mean_planning_time_ms: mean(ok.iter().map(|t| t.planning_time_ms)),
                mean_rewire_time_ms: mean(ok.iter().map(|t| t.rewire_time_ms)),
                path_length_ratio_pct: None,
                planning_time_ratio_pct: None,
            });
        }
        let baseline = map_rows
            .iter()
            .find(|r| r.variant == Variant::RrtRaw)
            .map(|r| (r.mean_path_length_px, r.mean_planning_time_ms));
        if let Some((base_len, base_time)) = baseline {
            for r in &mut map_rows {
                r.path_length_ratio_pct = base_len.zip(r.mean_path_length_px).and_then(|(b, v)| relative_percent(v, b));
                r.planning_time_ratio_pct = base_time.zip(r.mean_planning_time_ms).and_then(|(b, v)| relative_percent(v, b));
            }
        }
        rows.extend(map_rows);
    }
    ExperimentSummary { rows }
}

fn run_map_trials(
    map: &WorldMap,
    map_id: u32,
    cfg: &ExperimentConfig,
    indices: std::ops::Range<u32>,
) -> Result<Vec<TrialPair>, BenchError> {
    indices
        .map(|i| run_trial(map, map_id, i, &cfg.planner, cfg.base_seed.wrapping_add(u64::from(i))))
        .collect()
}

/// Runs every configured trial and summarizes the results.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment, BenchError> {
    if cfg.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    if cfg.variants.is_empty() {
        return Err(BenchError::NoVariants);
    }
    cfg.planner.validate()?;

    let mut trials = Vec::new();
    for &map_id in &cfg.map_ids {
        let map = builtin_map(map_id)?;
        let pairs = match cfg.execution {
            Execution::Sequential => {
                // Warm-up trial, not counted.
                run_trial(&map, map_id, 0, &cfg.planner, cfg.base_seed)?;
                run_map_trials(&map, map_id, cfg, 0..cfg.trials)?
            }
            Execution::Parallel { threads } => {
                let threads = threads.clamp(1, cfg.trials as usize) as u32;
                let chunk = cfg.trials.div_ceil(threads);
                std::thread::scope(|scope| {
                    let handles: Vec<_> = (0..threads)
                        .map(|k| {
                            let lo = (k * chunk).min(cfg.trials);
                            let hi = ((k + 1) * chunk).min(cfg.trials);
                            let map = &map;
                            scope.spawn(move || run_map_trials(map, map_id, cfg, lo..hi))
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("trial worker panicked"))
                        .collect::<Result<Vec<_>, _>>()
                })?
                .into_iter()
                .flatten()
                .collect()
            }
        };
        for pair in pairs {
            for variant in Variant::ALL {
                if cfg.variants.contains(&variant) {
                    trials.push(match variant {
                        Variant::RrtRaw => pair.raw.clone(),
                        Variant::RrtPlusRewire => pair.rewired.clone(),
                    });
                }
            }
        }
    }
    let summary = summarize(&trials);
    Ok(Experiment { trials, summary })
}

/// One row of the summary CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryCsvRow {
    pub map: u32,
    pub variant: Variant,
    pub mean_path_length_px: Option<f64>,
    pub path_length_ratio_pct: Option<u32>,
    pub mean_planning_time_ms: Option<f64>,
    pub planning_time_ratio_pct: Option<u32>,
    pub success_count: u32,
}

impl From<&VariantSummary> for SummaryCsvRow {
    fn from(r: &VariantSummary) -> Self {
        Self {
            map: r.map_id,
            variant: r.variant,
            mean_path_length_px: r.mean_path_length_px,
            path_length_ratio_pct: r.path_length_ratio_pct,
            mean_planning_time_ms: r.mean_planning_time_ms,
            planning_time_ratio_pct: r.planning_time_ratio_pct,
            success_count: r.success_count,
        }
    }
}

fn cell(value: Option<f64>, ratio: Option<u32>, decimals: usize) -> String {
    let decimals = match value {
        Some(v) if v >= 10.0 => 0,
        _ => decimals,
    };
    match (value, ratio) {
        (Some(v), Some(r)) => format!("{v:.decimals$} ({r}%)"),
        (Some(v), None) => format!("{v:.decimals$}"),
        _ => "-".to_string(),
    }
}

/// Renders the summary as CSV (one row per map and variant) or as a
/// Markdown table (one row per map, one column group per variant, cells in
/// the `mean (ratio%)` style).
pub fn emit_table(summary: &ExperimentSummary, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &summary.rows {
                w.serialize(SummaryCsvRow::from(r)).expect("csv row serializes");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
        TableFormat::Markdown => {
            let variants: Vec<Variant> = Variant::ALL
                .into_iter()
                .filter(|v| summary.rows.iter().any(|r| r.variant == *v))
                .collect();
            let mut out = String::from("| Map |");
            for v in &variants {
                let _ = write!(out, " {} path length (px) |", v.label());
            }
            for v in &variants {
                let _ = write!(out, " {} planning time (ms) |", v.label());
            }
            out.push_str(" Successes |\n|---|");
            for _ in 0..2 * variants.len() + 1 {
                out.push_str("---:|");
            }
            out.push('\n');
            for map_id in summary.map_ids() {
                let rows: Vec<Option<&VariantSummary>> = variants.iter().map(|v| summary.row(map_id, *v)).collect();
                let _ = write!(out, "| {map_id} |");
                for r in &rows {
                    let _ = write!(out, " {} |", cell(r.and_then(|r| r.mean_path_length_px), r.and_then(|r| r.path_length_ratio_pct), 0));
                }
                for r in &rows {
                    let _ = write!(out, " {} |", cell(r.and_then(|r| r.mean_planning_time_ms), r.and_then(|r| r.planning_time_ratio_pct), 3));
                }
                let first = rows.iter().flatten().next();
                let _ = writeln!(
                    out,
                    " {} |",
                    first.map_or("-".to_string(), |r| format!("{}/{}", r.success_count, r.trials))
                );
            }
            out
        }
    }
}

/// Parses summary CSV produced by [`emit_table`].
pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryCsvRow>, BenchError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    Ok(reader.deserialize().collect::<Result<Vec<_>, _>>()?)
}

/// Writes one JSON object per line.
pub fn write_trial_records<W: Write>(trials: &[TrialResult], mut out: W) -> Result<(), BenchError> {
    for t in trials {
        writeln!(out, "{}", t.to_json_line())?;
    }
    Ok(())
}
