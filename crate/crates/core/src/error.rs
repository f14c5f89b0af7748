use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} is not finite")]
    NonFiniteVertex(usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon is not simple (edges cross or fold back)")]
    SelfIntersecting,
}

#[derive(Debug, Error)]
pub enum MapError {
    #[error("malformed map document: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("obstacle {index}: {source}")]
    InvalidPolygon {
        index: usize,
        #[source]
        source: GeometryError,
    },
    #[error("{field} must be a finite positive number, got {value}")]
    InvalidDimension { field: &'static str, value: f64 },
    #[error("{element} lies outside the {width}x{height} workspace")]
    OutOfBounds {
        element: String,
        width: f64,
        height: f64,
    },
    #[error("{element} is inside or too close to obstacle {obstacle}")]
    Blocked { element: &'static str, obstacle: usize },
    #[error("unknown built-in map id {0} (expected 1..=4)")]
    UnknownBuiltin(u32),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("{field} must be positive, got {value}")]
    InvalidConfig { field: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RewireError {
    #[error("a path needs at least 2 waypoints, got {0}")]
    TooShort(usize),
    #[error("rewire index {index} out of range for a path of {len} waypoints")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("input edge {index} collides with an obstacle")]
    CollidingEdge { index: usize },
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no variants selected")]
    NoVariants,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
