//! Baseline RRT: grow a tree from the start by uniform sampling, nearest-node
//! lookup and fixed-length steering until the goal can be connected.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::error::PlanError;
use crate::geometry::{distance, Point2};
use crate::rewire::Path;
use crate::workspace::WorldMap;

/// Reproducible sample source.
///
/// The generator is ChaCha8 (`rand_chacha`) keyed with `SeedableRng::seed_from_u64`.
/// Each uniform draw takes the top 53 bits of one `next_u64` and scales by
/// 2⁻⁵³, so the mapping from seed to samples does not depend on any
/// distribution code outside this crate.
#[derive(Debug, Clone)]
pub struct SampleStream {
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Uniform sample over the workspace rectangle.
pub fn sample_uniform(rng: &mut SampleStream, map: &WorldMap) -> Point2 {
    let x = rng.next_unit() * map.width();
    let y = rng.next_unit() * map.height();
    Point2::new(x, y)
}

/// Rooted tree stored as parallel position/parent arrays. Node 0 is the root
/// and every parent index is smaller than its child's.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    positions: Vec<Point2>,
    parents: Vec<Option<usize>>,
}

impl Tree {
    pub fn new(root: Point2) -> Self {
        Self {
            positions: vec![root],
            parents: vec![None],
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    pub fn position(&self, index: usize) -> Point2 {
        self.positions[index]
    }

    /// Appends a node and returns its index.
    ///
    /// # Panics
    /// If `parent` is not an existing node.
    pub fn insert(&mut self, position: Point2, parent: usize) -> usize {
        assert!(parent < self.positions.len(), "parent {parent} does not exist");
        self.positions.push(position);
        self.parents.push(Some(parent));
        self.positions.len() - 1
    }

    /// Index of the node closest to `q`; ties go to the lowest index.
    pub fn nearest(&self, q: Point2) -> usize {
        let mut best = 0;
        let mut best_d2 = f64::INFINITY;
        for (i, p) in self.positions.iter().enumerate() {
            let (dx, dy) = (p.x - q.x, p.y - q.y);
            let d2 = dx * dx + dy * dy;
            if d2 < best_d2 {
                best_d2 = d2;
                best = i;
            }
        }
        best
    }

    /// `(parent, child)` position pairs for every non-root node.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (self.positions[p], self.positions[i])))
    }

    /// Root-to-node waypoint sequence.
    pub fn branch(&self, index: usize) -> Vec<Point2> {
        let mut out = vec![self.positions[index]];
        let mut cur = index;
        while let Some(p) = self.parents[cur] {
            out.push(self.positions[p]);
            cur = p;
        }
        out.reverse();
        out
    }
}

/// Nearest-node lookup on a non-empty tree.
pub fn nearest(tree: &Tree, q_rand: Point2) -> usize {
    tree.nearest(q_rand)
}

/// Moves from `q_near` toward `q_rand` by at most `step` pixels. Samples
/// closer than one step are returned unchanged.
pub fn steer(q_near: Point2, q_rand: Point2, step: f64) -> Point2 {
    let d = distance(q_near, q_rand);
    if d <= step {
        return q_rand;
    }
    let s = step / d;
    Point2::new(q_near.x + s * (q_rand.x - q_near.x), q_near.y + s * (q_rand.y - q_near.y))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerConfig {
    /// Maximum extension per iteration, px.
    pub step_length: f64,
    pub max_iterations: u64,
    /// A node within this distance of the goal tries a direct connection.
    pub goal_connect_radius: f64,
    /// Probability of sampling the goal instead of a uniform point.
    pub goal_bias: f64,
    pub seed: u64,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            step_length: 30.0,
            max_iterations: 200_000,
            goal_connect_radius: 30.0,
            goal_bias: 0.0,
            seed: 0,
        }
    }
}

impl PlannerConfig {
    /// Default configuration with the goal radius tied to the step length.
    pub fn with_step(step_length: f64) -> Self {
        Self {
            step_length,
            goal_connect_radius: step_length,
            ..Self::default()
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        let positive = |field, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(PlanError::InvalidConfig { field, value })
            }
        };
        positive("step_length", self.step_length)?;
        positive("goal_connect_radius", self.goal_connect_radius)?;
        positive("max_iterations", self.max_iterations as f64)?;
        if !(0.0..=1.0).contains(&self.goal_bias) {
            return Err(PlanError::InvalidConfig {
                field: "goal_bias",
                value: self.goal_bias,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PlanOutcome {
    /// First complete start-to-goal path, if one was found within budget.
    pub path: Option<Path>,
    pub tree: Tree,
    /// Samples drawn.
    pub iterations: u64,
    pub planning_time_ms: f64,
}

impl PlanOutcome {
    pub fn success(&self) -> bool {
        self.path.is_some()
    }
}

/// Runs RRT until the first complete path is found or the iteration budget
/// runs out. The goal is attached as a child of the first node (the root
/// included) that lies within `goal_connect_radius` of it with a free
/// straight connection.
pub fn plan(map: &WorldMap, cfg: &PlannerConfig) -> Result<PlanOutcome, PlanError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = SampleStream::new(cfg.seed);
    let goal = map.goal();
    let mut tree = Tree::new(map.start());

    let try_goal = |tree: &mut Tree, node: usize| -> Option<Path> {
        let q = tree.position(node);
        if distance(q, goal) <= cfg.goal_connect_radius && !map.is_trapped(q, goal) {
            let g = tree.insert(goal, node);
            Some(Path::from_tree_branch(tree.branch(g)))
        } else {
            None
        }
    };

    let mut path = try_goal(&mut tree, 0);
    let mut iterations = 0;
    while path.is_none() && iterations < cfg.max_iterations {
        iterations += 1;
        let q_rand = if cfg.goal_bias > 0.0 && rng.next_unit() < cfg.goal_bias {
            goal
        } else {
            sample_uniform(&mut rng, map)
        };
        let near = tree.nearest(q_rand);
        let q_near = tree.position(near);
        let q_new = steer(q_near, q_rand, cfg.step_length);
        if map.is_trapped(q_near, q_new) {
            continue;
        }
        let new = tree.insert(q_new, near);
        path = try_goal(&mut tree, new);
    }

    Ok(PlanOutcome {
        path,
        tree,
        iterations,
        planning_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}
