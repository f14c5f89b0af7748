//! WebAssembly bindings for the single-page demo in `www/`.
//!
//! Each export is a thin wrapper over a plain function of the same name
//! with a `_native` suffix, so the logic is testable off the browser.

use rrt_rewire::{
    builtin_map, emit_table, plan, post_triangular_rewire, render_map, render_scene, run_experiment,
    ExperimentConfig, PlannerConfig, RenderStyle, TableFormat,
};
use wasm_bindgen::prelude::*;

/// Largest trial count the demo benchmark accepts.
pub const MAX_DEMO_TRIALS: u32 = 200;

/// One planning run as shown on the page.
#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct PlanView {
    pub svg: String,
    pub success: bool,
    pub iterations: u32,
    pub tree_nodes: u32,
    pub raw_length: f64,
    pub rewired_length: f64,
    pub planning_time_ms: f64,
    pub rewire_time_ms: f64,
    pub waypoints_removed: u32,
}

pub fn render_builtin_map_native(map_id: u32) -> Result<String, String> {
    let map = builtin_map(map_id).map_err(|e| e.to_string())?;
    Ok(render_map(&map, &RenderStyle::default()))
}

pub fn plan_and_rewire_native(map_id: u32, seed: u32, step_length: f64, epsilon: f64) -> Result<PlanView, String> {
    let map = builtin_map(map_id)
        .and_then(|m| m.with_epsilon(epsilon))
        .map_err(|e| e.to_string())?;
    let cfg = PlannerConfig::with_step(step_length).seeded(u64::from(seed));
    let outcome = plan(&map, &cfg).map_err(|e| e.to_string())?;
    let style = RenderStyle::default();
    let mut view = PlanView {
        svg: String::new(),
        success: outcome.success(),
        iterations: outcome.iterations as u32,
        tree_nodes: outcome.tree.len() as u32,
        raw_length: f64::NAN,
        rewired_length: f64::NAN,
        planning_time_ms: outcome.planning_time_ms,
        rewire_time_ms: 0.0,
        waypoints_removed: 0,
    };
    match &outcome.path {
        Some(raw) => {
            let (short, report) = post_triangular_rewire(raw, &map).map_err(|e| e.to_string())?;
            view.raw_length = raw.length();
            view.rewired_length = short.length();
            view.rewire_time_ms = report.rewire_time_ms;
            view.waypoints_removed = report.waypoints_removed as u32;
            view.svg = render_scene(&map, Some(&outcome.tree), &[(raw, "RRT"), (&short, "RRT + rewiring")], &style);
        }
        None => view.svg = render_scene(&map, Some(&outcome.tree), &[], &style),
    }
    Ok(view)
}

pub fn quick_benchmark_native(map_id: u32, trials: u32, seed: u32) -> Result<String, String> {
    if trials == 0 || trials > MAX_DEMO_TRIALS {
        return Err(format!("trials must be between 1 and {MAX_DEMO_TRIALS}"));
    }
    let cfg = ExperimentConfig {
        map_ids: vec![map_id],
        trials,
        base_seed: u64::from(seed),
        ..ExperimentConfig::default()
    };
    let exp = run_experiment(&cfg).map_err(|e| e.to_string())?;
    Ok(emit_table(&exp.summary, TableFormat::Markdown))
}

/// SVG of a built-in map (1 to 4) with no paths.
#[wasm_bindgen]
pub fn render_builtin_map(map_id: u32) -> Result<String, JsError> {
    render_builtin_map_native(map_id).map_err(|e| JsError::new(&e))
}

/// Plans once on a built-in map, rewires the result and renders both paths.
#[wasm_bindgen]
pub fn plan_and_rewire(map_id: u32, seed: u32, step_length: f64, epsilon: f64) -> Result<PlanView, JsError> {
    plan_and_rewire_native(map_id, seed, step_length, epsilon).map_err(|e| JsError::new(&e))
}

/// Markdown summary of `trials` seeded runs on one built-in map.
#[wasm_bindgen]
pub fn quick_benchmark(map_id: u32, trials: u32, seed: u32) -> Result<String, JsError> {
    quick_benchmark_native(map_id, trials, seed).map_err(|e| JsError::new(&e))
}
