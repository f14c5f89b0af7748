//! Sampling-based path planning in a 2D polygonal workspace: a plain RRT
//! planner, post triangular rewiring of its first complete path, and a
//! seeded benchmark harness over four built-in maps.
//!
//! ```
//! use rrt_rewire::{builtin_map, plan, post_triangular_rewire, PlannerConfig};
//!
//! let map = builtin_map(2).unwrap();
//! let outcome = plan(&map, &PlannerConfig::default().seeded(1)).unwrap();
//! let raw = outcome.path.expect("map 2 is solvable");
//! let (short, report) = post_triangular_rewire(&raw, &map).unwrap();
//! assert!(short.length() <= raw.length());
//! assert_eq!(report.waypoints_removed, raw.len() - short.len());
//! ```

pub mod bench;
pub mod error;
pub mod geometry;
pub mod render;
pub mod rewire;
pub mod rrt;
pub mod workspace;

pub use bench::{
    emit_table, run_experiment, run_trial, Execution, Experiment, ExperimentConfig,
    ExperimentSummary, TableFormat, TrialPair, TrialResult, Variant,
};
pub use error::{BenchError, GeometryError, MapError, PlanError, RewireError};
pub use geometry::{Point2, Polygon, Segment};
pub use render::{render_map, render_scene, RenderStyle};
pub use rewire::{path_length, post_triangular_rewire, rewire_step, Path, RewireReport};
pub use rrt::{plan, PlanOutcome, PlannerConfig, SampleStream, Tree};
pub use workspace::{builtin_map, is_trapped, load_map, save_map, ObstacleSet, WorldMap};
