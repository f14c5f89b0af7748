//! Planning workspace: bounds, start and goal, polygonal obstacles and the
//! minimum-clearance threshold, plus the TOML map format and the four
//! built-in maps.
//!
//! Coordinates follow the screen convention: origin top-left, x to the right,
//! y downward, all in pixels.

use serde::{Deserialize, Serialize};

use crate::error::MapError;
use crate::geometry::{
    point_in_polygon, segment_hits_polygon, segment_polygon_distance, Aabb, Point2, Polygon, Segment,
};

/// Obstacle region of the workspace. Polygons may overlap.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObstacleSet {
    polygons: Vec<Polygon>,
}

impl ObstacleSet {
    pub fn new(polygons: Vec<Polygon>) -> Self {
        Self { polygons }
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }
}

/// Uniform grid over the workspace listing, per cell, the obstacles whose
/// clearance-inflated bounding box reaches that cell.
#[derive(Debug, Clone, PartialEq)]
struct ObstacleGrid {
    cell: f64,
    cols: usize,
    rows: usize,
    cells: Vec<Vec<usize>>,
    /// Inclusive cell range `[x0, x1, y0, y1]` of each obstacle.
    ranges: Vec<[usize; 4]>,
}

impl ObstacleGrid {
    const DIVISIONS: f64 = 16.0;

    fn build(width: f64, height: f64, obstacles: &ObstacleSet, epsilon: f64) -> Self {
        let cell = width.max(height) / Self::DIVISIONS;
        let cols = ((width / cell).ceil() as usize).max(1);
        let rows = ((height / cell).ceil() as usize).max(1);
        let mut grid = Self {
            cell,
            cols,
            rows,
            cells: vec![Vec::new(); cols * rows],
            ranges: Vec::with_capacity(obstacles.len()),
        };
        for (i, poly) in obstacles.polygons().iter().enumerate() {
            let r = grid.range(&poly.bounds().inflate(epsilon));
            for cy in r[2]..=r[3] {
                for cx in r[0]..=r[1] {
                    grid.cells[cy * cols + cx].push(i);
                }
            }
            grid.ranges.push(r);
        }
        grid
    }

    fn index(&self, v: f64, n: usize) -> usize {
        ((v / self.cell) as usize).min(n - 1)
    }

    fn range(&self, b: &Aabb) -> [usize; 4] {
        [
            self.index(b.min.x, self.cols),
            self.index(b.max.x, self.cols),
            self.index(b.min.y, self.rows),
            self.index(b.max.y, self.rows),
        ]
    }

    /// True when `hit` holds for some obstacle whose cell range meets the
    /// cell range of `b`. Each such obstacle is offered at most once.
    fn any(&self, b: &Aabb, total: usize, mut hit: impl FnMut(usize) -> bool) -> bool {
        let q = self.range(b);
        if (q[1] - q[0] + 1) * (q[3] - q[2] + 1) >= total {
            return (0..total).any(hit);
        }
        for cy in q[2]..=q[3] {
            for cx in q[0]..=q[1] {
                for &i in &self.cells[cy * self.cols + cx] {
                    let r = self.ranges[i];
                    if r[0].max(q[0]) == cx && r[2].max(q[2]) == cy && hit(i) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// A validated planning problem. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldMap {
    name: String,
    width: f64,
    height: f64,
    start: Point2,
    goal: Point2,
    obstacles: ObstacleSet,
    epsilon: f64,
    grid: ObstacleGrid,
}

impl WorldMap {
    pub fn new(
        name: impl Into<String>,
        width: f64,
        height: f64,
        start: Point2,
        goal: Point2,
        obstacles: ObstacleSet,
        epsilon: f64,
    ) -> Result<Self, MapError> {
        for (field, value) in [("width", width), ("height", height)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(MapError::InvalidDimension { field, value });
            }
        }
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(MapError::InvalidDimension {
                field: "epsilon",
                value: epsilon,
            });
        }
        let grid = ObstacleGrid::build(width, height, &obstacles, epsilon);
        let map = Self {
            name: name.into(),
            width,
            height,
            start,
            goal,
            obstacles,
            epsilon,
            grid,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<(), MapError> {
        let out = |element: String| MapError::OutOfBounds {
            element,
            width: self.width,
            height: self.height,
        };
        for (label, p) in [("start", self.start), ("goal", self.goal)] {
            if !self.contains(p) {
                return Err(out(label.to_string()));
            }
        }
        for (i, poly) in self.obstacles.polygons().iter().enumerate() {
            if let Some(j) = poly.vertices().iter().position(|v| !self.contains(*v)) {
                return Err(out(format!("obstacle {i} vertex {j}")));
            }
        }
        for (element, p) in [("start", self.start), ("goal", self.goal)] {
            if let Some(obstacle) = self.blocking_obstacle(p) {
                return Err(MapError::Blocked { element, obstacle });
            }
        }
        Ok(())
    }

    fn blocking_obstacle(&self, p: Point2) -> Option<usize> {
        let probe = Segment::new(p, p);
        self.obstacles.polygons().iter().position(|poly| {
            point_in_polygon(p, poly)
                || (self.epsilon > 0.0 && segment_polygon_distance(&probe, poly) < self.epsilon)
        })
    }

    /// Same map with a different clearance threshold, re-validated.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self, MapError> {
        Self::new(
            self.name.clone(),
            self.width,
            self.height,
            self.start,
            self.goal,
            self.obstacles.clone(),
            epsilon,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn start(&self) -> Point2 {
        self.start
    }

    pub fn goal(&self) -> Point2 {
        self.goal
    }

    pub fn obstacles(&self) -> &ObstacleSet {
        &self.obstacles
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.is_finite() && (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    /// Collision predicate for the straight segment `q1`-`q2`.
    ///
    /// With `epsilon == 0` this is plain contact with any obstacle (boundary
    /// included). With a positive clearance the segment is trapped when it
    /// passes closer than `epsilon` to any obstacle.
    pub fn is_trapped(&self, q1: Point2, q2: Point2) -> bool {
        let s = Segment::new(q1, q2);
        let eps = self.epsilon;
        let polys = self.obstacles.polygons();
        if eps == 0.0 {
            return self.grid.any(&s.bounds(), polys.len(), |i| segment_hits_polygon(&s, &polys[i]));
        }
        self.grid.any(&s.bounds(), polys.len(), |i| {
            polys[i].bounds().inflate(eps).may_touch(&s) && segment_polygon_distance(&s, &polys[i]) < eps
        })
    }
}

/// Free-function form of [`WorldMap::is_trapped`].
pub fn is_trapped(q1: Point2, q2: Point2, map: &WorldMap) -> bool {
    map.is_trapped(q1, q2)
}

/// On-disk layout of a map document.
#[derive(Debug, Serialize, Deserialize)]
struct MapDocument {
    name: String,
    width: f64,
    height: f64,
    #[serde(default)]
    epsilon: f64,
    start: Point2,
    goal: Point2,
    #[serde(default)]
    obstacles: Vec<Vec<Point2>>,
}

/// Parses and validates a TOML map document.
pub fn load_map(source: &str) -> Result<WorldMap, MapError> {
    let doc: MapDocument = toml::from_str(source)?;
    let polygons = doc
        .obstacles
        .into_iter()
        .enumerate()
        .map(|(index, ring)| Polygon::new(ring).map_err(|source| MapError::InvalidPolygon { index, source }))
        .collect::<Result<Vec<_>, _>>()?;
    WorldMap::new(
        doc.name,
        doc.width,
        doc.height,
        doc.start,
        doc.goal,
        ObstacleSet::new(polygons),
        doc.epsilon,
    )
}

/// Serializes a map as TOML. Floats are written in shortest round-trip form,
/// so `load_map(&save_map(m))` reproduces `m` exactly.
pub fn save_map(map: &WorldMap) -> String {
    let doc = MapDocument {
        name: map.name.clone(),
        width: map.width,
        height: map.height,
        epsilon: map.epsilon,
        start: map.start,
        goal: map.goal,
        obstacles: map
            .obstacles
            .polygons()
            .iter()
            .map(|p| p.vertices().to_vec())
            .collect(),
    };
    toml::to_string(&doc).expect("map document always serializes")
}

const BUILTIN_SOURCES: [&str; 4] = [
    include_str!("../maps/map1.toml"),
    include_str!("../maps/map2.toml"),
    include_str!("../maps/map3.toml"),
    include_str!("../maps/map4.toml"),
];

/// Number of maps shipped with the crate.
pub const BUILTIN_MAP_COUNT: u32 = 4;

/// Source text of a shipped map file.
pub fn builtin_source(id: u32) -> Result<&'static str, MapError> {
    match id {
        1..=4 => Ok(BUILTIN_SOURCES[id as usize - 1]),
        _ => Err(MapError::UnknownBuiltin(id)),
    }
}

/// One of the four 600x600 benchmark maps:
///
/// 1. two staggered walls with narrow gaps, start and goal in opposite corners;
/// 2. a moderate field of mixed convex and concave obstacles;
/// 3. fifty squares laid out along curved arcs;
/// 4. the goal enclosed in a pocket whose only narrow entrance faces away from the start.
pub fn builtin_map(id: u32) -> Result<WorldMap, MapError> {
    load_map(builtin_source(id)?)
}
