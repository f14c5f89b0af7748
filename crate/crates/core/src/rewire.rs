//! Post triangular rewiring.
//!
//! Given a piecewise-linear path, look at each consecutive triple
//! `child, parent, ancestor`. If the straight chord `child -> ancestor` is
//! collision-free, the two edges through `parent` are replaced by that chord
//! and `parent` is dropped. By the triangle inequality the path never gets
//! longer. Passes repeat until one full pass makes no change.

use web_time::Instant;

use crate::error::RewireError;
use crate::geometry::{distance, Point2};
use crate::workspace::WorldMap;

/// Ordered waypoints from start to goal; always at least two.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    waypoints: Vec<Point2>,
}

impl Path {
    pub fn new(waypoints: Vec<Point2>) -> Result<Self, RewireError> {
        if waypoints.len() < 2 {
            return Err(RewireError::TooShort(waypoints.len()));
        }
        Ok(Self { waypoints })
    }

    /// Branches always hold the root and the goal.
    pub(crate) fn from_tree_branch(waypoints: Vec<Point2>) -> Self {
        debug_assert!(waypoints.len() >= 2);
        Self { waypoints }
    }

    pub fn waypoints(&self) -> &[Point2] {
        &self.waypoints
    }

    pub fn into_waypoints(self) -> Vec<Point2> {
        self.waypoints
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> Point2 {
        self.waypoints[0]
    }

    pub fn goal(&self) -> Point2 {
        self.waypoints[self.waypoints.len() - 1]
    }

    /// Sum of edge lengths, px.
    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| distance(w[0], w[1])).sum()
    }

    /// Index of the first edge `(i, i + 1)` that is trapped on `map`.
    pub fn first_colliding_edge(&self, map: &WorldMap) -> Option<usize> {
        self.waypoints.windows(2).position(|w| map.is_trapped(w[0], w[1]))
    }
}

/// Total length of a path, px.
pub fn path_length(p: &Path) -> f64 {
    p.length()
}

/// Drops waypoint `t + 1`, joining waypoint `t` directly to waypoint `t + 2`.
pub fn rewire_step(p: &Path, t: usize) -> Result<Path, RewireError> {
    if t + 2 >= p.len() {
        return Err(RewireError::IndexOutOfRange { index: t, len: p.len() });
    }
    let mut waypoints = p.waypoints.clone();
    waypoints.remove(t + 1);
    Ok(Path { waypoints })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewireReport {
    pub input_length: f64,
    pub output_length: f64,
    pub waypoints_removed: usize,
    /// Full passes over the path, including the final pass that changed nothing.
    pub passes: usize,
    pub rewire_time_ms: f64,
}

/// Shortens `p` to a rewiring fixpoint on `map`.
///
/// The focus index `t` walks from the start. When the chord from waypoint `t`
/// to waypoint `t + 2` is free, waypoint `t + 1` is removed and the focus
/// steps back by one, since the triple ending at the new `t + 1` has changed.
/// Otherwise `t` advances. A pass ends when the focused parent is the goal.
///
/// Stepping back keeps every triple before `t` unshortenable, so the result
/// is the front-first greedy fixpoint: the same path obtained by always
/// removing the earliest removable waypoint.
pub fn post_triangular_rewire(
    p: &Path,
    map: &WorldMap,
) -> Result<(Path, RewireReport), RewireError> {
    let started = Instant::now();
    if let Some(index) = p.first_colliding_edge(map) {
        return Err(RewireError::CollidingEdge { index });
    }

    let mut route = p.waypoints.clone();
    let mut passes = 0;
    let mut modified = true;
    while modified {
        modified = false;
        passes += 1;
        let mut t = 0;
        while t + 2 < route.len() {
            if map.is_trapped(route[t], route[t + 2]) {
                t += 1;
            } else {
                route.remove(t + 1);
                modified = true;
                t = t.saturating_sub(1);
            }
        }
    }

    let rewire_time_ms = started.elapsed().as_secs_f64() * 1e3;
    let out = Path { waypoints: route };
    let report = RewireReport {
        input_length: p.length(),
        output_length: out.length(),
        waypoints_removed: p.len() - out.len(),
        passes,
        rewire_time_ms,
    };
    Ok((out, report))
}
