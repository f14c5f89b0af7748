//! Planar primitives in pixel units: points, segments, simple polygons and
//! the predicates the collision checker is built from.
//!
//! Obstacles are closed sets, so touching a polygon boundary counts as contact.
//! Orientation tests treat cross products within [`COLLINEAR_EPS`] of zero as
//! collinear.

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// Absolute tolerance (px²) on cross products used for collinearity.
pub const COLLINEAR_EPS: f64 = 1e-9;

/// A position in the workspace. Serialized as an `[x, y]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: Point2) -> f64 {
        distance(*self, other)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Closed line segment between two points. `a == b` is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        distance(self.a, self.b)
    }

    pub fn bounds(&self) -> Aabb {
        Aabb {
            min: Point2::new(self.a.x.min(self.b.x), self.a.y.min(self.b.y)),
            max: Point2::new(self.a.x.max(self.b.x), self.a.y.max(self.b.y)),
        }
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point2,
    pub max: Point2,
}

impl Aabb {
    pub fn of_points(points: &[Point2]) -> Self {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Self { min, max }
    }

    pub fn inflate(&self, margin: f64) -> Self {
        Self {
            min: Point2::new(self.min.x - margin, self.min.y - margin),
            max: Point2::new(self.max.x + margin, self.max.y + margin),
        }
    }

    /// Closed-box overlap test.
    pub fn overlaps(&self, other: &Aabb) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    /// Conservative segment test: `false` only when the segment certainly
    /// misses the box (disjoint extents, or all four corners strictly on one
    /// side of the segment's supporting line).
    pub fn may_touch(&self, s: &Segment) -> bool {
        if !self.overlaps(&s.bounds()) {
            return false;
        }
        let corners = [
            self.min,
            Point2::new(self.max.x, self.min.y),
            self.max,
            Point2::new(self.min.x, self.max.y),
        ];
        let sides = corners.map(|c| orientation(s.a, s.b, c));
        !(sides.iter().all(|&o| o > 0) || sides.iter().all(|&o| o < 0))
    }
}

/// A simple polygon with vertices stored counter-clockwise (positive shoelace
/// area). The closing edge from the last vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
    bounds: Aabb,
}

impl Polygon {
    /// Validates and normalizes a vertex ring. Clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFiniteVertex(i));
        }
        let area = signed_area(&vertices);
        if area.abs() <= COLLINEAR_EPS {
            return Err(GeometryError::ZeroArea);
        }
        if !is_simple_ring(&vertices) {
            return Err(GeometryError::SelfIntersecting);
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let bounds = Aabb::of_points(&vertices);
        Ok(Self { vertices, bounds })
    }

    /// Axis-aligned square with its top-left corner at `origin`.
    pub fn square(origin: Point2, side: f64) -> Result<Self, GeometryError> {
        Self::new(vec![
            origin,
            Point2::new(origin.x + side, origin.y),
            Point2::new(origin.x + side, origin.y + side),
            Point2::new(origin.x, origin.y + side),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn bounds(&self) -> &Aabb {
        &self.bounds
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }
}

/// Euclidean distance.
pub fn distance(p: Point2, q: Point2) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Twice the signed area of triangle (a, b, c); positive when counter-clockwise.
fn cross(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn orientation(a: Point2, b: Point2, c: Point2) -> i8 {
    let v = cross(a, b, c);
    if v > COLLINEAR_EPS {
        1
    } else if v < -COLLINEAR_EPS {
        -1
    } else {
        0
    }
}

/// `p` lies within the bounding box of `s` (used once collinearity is known).
fn within_box(s: &Segment, p: Point2) -> bool {
    p.x >= s.a.x.min(s.b.x) - COLLINEAR_EPS
        && p.x <= s.a.x.max(s.b.x) + COLLINEAR_EPS
        && p.y >= s.a.y.min(s.b.y) - COLLINEAR_EPS
        && p.y <= s.a.y.max(s.b.y) + COLLINEAR_EPS
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    if o1 == o2 && o1 != 0 {
        return false;
    }
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);
    if o3 == o4 && o3 != 0 {
        return false;
    }

    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && within_box(s1, s2.a))
        || (o2 == 0 && within_box(s1, s2.b))
        || (o3 == 0 && within_box(s2, s1.a))
        || (o4 == 0 && within_box(s2, s1.b))
}

/// Distance from a point to a closed segment.
pub fn point_segment_distance(p: Point2, s: &Segment) -> f64 {
    let dx = s.b.x - s.a.x;
    let dy = s.b.y - s.a.y;
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return distance(p, s.a);
    }
    let t = (((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2).clamp(0.0, 1.0);
    distance(p, Point2::new(s.a.x + t * dx, s.a.y + t * dy))
}

/// Inside-or-on-boundary test. Uses the winding number, with an explicit
/// boundary check first so edge and vertex contact always report `true`.
pub fn point_in_polygon(p: Point2, poly: &Polygon) -> bool {
    let b = poly.bounds();
    if p.x < b.min.x || p.x > b.max.x || p.y < b.min.y || p.y > b.max.y {
        return false;
    }
    let mut winding = 0i32;
    for e in poly.edges() {
        if orientation(e.a, e.b, p) == 0 && within_box(&e, p) {
            return true;
        }
        if e.a.y <= p.y {
            if e.b.y > p.y && cross(e.a, e.b, p) > 0.0 {
                winding += 1;
            }
        } else if e.b.y <= p.y && cross(e.a, e.b, p) < 0.0 {
            winding -= 1;
        }
    }
    winding != 0
}

/// True iff the segment touches the polygon's boundary or lies (partly) inside it.
pub fn segment_hits_polygon(s: &Segment, poly: &Polygon) -> bool {
    if !poly.bounds().may_touch(s) {
        return false;
    }
    poly.edges().any(|e| segments_intersect(s, &e)) || point_in_polygon(s.a, poly)
}

/// Minimum distance between any point of `s` and any point of the closed
/// polygon region. Zero when they touch or overlap.
pub fn segment_polygon_distance(s: &Segment, poly: &Polygon) -> f64 {
    if segment_hits_polygon(s, poly) {
        return 0.0;
    }
    // Disjoint: the closest pair always involves an endpoint of one of the
    // two segments being compared.
    let mut best = f64::INFINITY;
    for e in poly.edges() {
        best = best
            .min(point_segment_distance(s.a, &e))
            .min(point_segment_distance(s.b, &e))
            .min(point_segment_distance(e.a, s));
    }
    best
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (p, q) = (vertices[i], vertices[(i + 1) % n]);
            p.x * q.y - q.x * p.y
        })
        .sum();
    twice / 2.0
}

/// No two non-adjacent edges meet, and adjacent edges share only their common vertex.
fn is_simple_ring(vertices: &[Point2]) -> bool {
    let n = vertices.len();
    let edge = |i: usize| Segment::new(vertices[i], vertices[(i + 1) % n]);
    for i in 0..n {
        if vertices[i] == vertices[(i + 1) % n] {
            return false;
        }
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (ei, ej) = (edge(i), edge(j));
            if adjacent {
                // Adjacent edges fold back onto each other when collinear and
                // pointing in opposite directions.
                let shared = if j == i + 1 { ei.b } else { ei.a };
                let (p, q) = if j == i + 1 { (ei.a, ej.b) } else { (ej.a, ei.b) };
                if orientation(p, shared, q) == 0 {
                    let d1 = (shared.x - p.x, shared.y - p.y);
                    let d2 = (q.x - shared.x, q.y - shared.y);
                    if d1.0 * d2.0 + d1.1 * d2.1 < 0.0 {
                        return false;
                    }
                }
            } else if segments_intersect(&ei, &ej) {
                return false;
            }
        }
    }
    true
}
