//! Independent reference implementations used to cross-check the library.
//! None of these call into the predicates they are compared against.

#![allow(dead_code)]

use rrt_rewire::{ObstacleSet, Path, Point2, Polygon, WorldMap};

/// SplitMix64, used only to generate test instances.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn point(&mut self, lo: f64, hi: f64) -> Point2 {
        Point2::new(self.range(lo, hi), self.range(lo, hi))
    }
}

fn seg_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / l2).clamp(0.0, 1.0)
    };
    ((a.x + t * dx - p.x).powi(2) + (a.y + t * dy - p.y).powi(2)).sqrt()
}

/// Distance from `p` to the polygon boundary.
pub fn boundary_distance(p: Point2, ring: &[Point2]) -> f64 {
    (0..ring.len())
        .map(|i| seg_dist(p, ring[i], ring[(i + 1) % ring.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Crossing-number test (PNPOLY); boundary points count as inside.
pub fn ray_cast_inside(p: Point2, ring: &[Point2]) -> bool {
    if boundary_distance(p, ring) <= 1e-9 {
        return true;
    }
    let mut inside = false;
    let n = ring.len();
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Angle-summation winding number; boundary points count as inside.
pub fn angle_sum_inside(p: Point2, ring: &[Point2]) -> bool {
    if boundary_distance(p, ring) <= 1e-9 {
        return true;
    }
    let mut total = 0.0f64;
    for i in 0..ring.len() {
        let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
        let a1 = (a.y - p.y).atan2(a.x - p.x);
        let a2 = (b.y - p.y).atan2(b.x - p.x);
        let mut d = a2 - a1;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        total += d;
    }
    total.abs() > std::f64::consts::PI
}

/// Star-shaped (hence simple) polygon around `center` with `k` vertices.
pub fn star_polygon(rng: &mut TestRng, center: Point2, k: usize, r_min: f64, r_max: f64) -> Polygon {
    let mut angles: Vec<f64> = (0..k)
        .map(|i| (i as f64 + rng.range(0.1, 0.9)) * std::f64::consts::TAU / k as f64)
        .collect();
    angles.sort_by(f64::total_cmp);
    let ring = angles
        .iter()
        .map(|a| {
            let r = rng.range(r_min, r_max);
            Point2::new(center.x + r * a.cos(), center.y + r * a.sin())
        })
        .collect();
    Polygon::new(ring).expect("star polygons are simple")
}

/// Dense-sampling segment check: `samples` evenly spaced points (endpoints
/// included), each tested with the crossing-number oracle.
pub fn dense_segment_hits(a: Point2, b: Point2, polys: &[Polygon], samples: usize) -> bool {
    (0..samples).any(|i| {
        let t = i as f64 / (samples - 1) as f64;
        let p = Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        polys.iter().any(|poly| ray_cast_inside(p, poly.vertices()))
    })
}

/// Smallest distance from any dense sample on `a`-`b` to any polygon boundary.
pub fn dense_min_clearance(a: Point2, b: Point2, polys: &[Polygon], samples: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let p = Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        for poly in polys {
            best = best.min(boundary_distance(p, poly.vertices()));
        }
    }
    best
}

/// Front-first greedy fixpoint: repeatedly scan from the start and drop the
/// first interior waypoint whose neighbours see each other, until none can go.
pub fn front_first_fixpoint(waypoints: &[Point2], map: &WorldMap) -> Vec<Point2> {
    let mut r = waypoints.to_vec();
    loop {
        let removable = (1..r.len().saturating_sub(1)).find(|&i| !map.is_trapped(r[i - 1], r[i + 1]));
        match removable {
            Some(i) => {
                r.remove(i);
            }
            None => return r,
        }
    }
}

/// A random obstacle field and a collision-free random-walk path through it
/// with at most `max_waypoints` waypoints. The map's start and goal are the
/// path's endpoints.
pub fn random_instance(rng: &mut TestRng, max_waypoints: usize) -> (WorldMap, Path) {
    loop {
        let n_obs = rng.below(9);
        let polys: Vec<Polygon> = (0..n_obs)
            .map(|_| {
                let c = rng.point(80.0, 520.0);
                let k = 3 + rng.below(6);
                star_polygon(rng, c, k, 10.0, 70.0)
            })
            .collect();
        let obstacles = ObstacleSet::new(polys);
        let start = rng.point(5.0, 595.0);
        let probe = match WorldMap::new("probe", 600.0, 600.0, start, start, obstacles.clone(), 0.0) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let target = 2 + rng.below(max_waypoints - 1);
        let mut pts = vec![start];
        let mut attempts = 0;
        while pts.len() < target && attempts < 500 {
            attempts += 1;
            let last = *pts.last().unwrap();
            let step = rng.range(20.0, 160.0);
            let ang = rng.range(0.0, std::f64::consts::TAU);
            let next = Point2::new(last.x + step * ang.cos(), last.y + step * ang.sin());
            if probe.contains(next) && !probe.is_trapped(last, next) {
                pts.push(next);
            }
        }
        if pts.len() < 2 {
            continue;
        }
        let goal = *pts.last().unwrap();
        let map = WorldMap::new("random", 600.0, 600.0, start, goal, obstacles, 0.0).unwrap();
        return (map, Path::new(pts).unwrap());
    }
}
