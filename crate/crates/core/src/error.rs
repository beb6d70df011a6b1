use thiserror::Error;

/// Errors produced by graph construction, measurement, and estimation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },

    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },

    #[error("points {a} and {b} lie in different components")]
    Disconnected { a: u32, b: u32 },

    #[error("graph has {components} components; extract one component first")]
    NotConnected { components: usize },

    #[error("graph with {vertices} vertices exceeds the distance-matrix cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },

    #[error("{what}: {count} exceeds capacity {cap}")]
    Capacity {
        what: String,
        count: String,
        cap: String,
    },

    #[error("degenerate triangle: corners are not pairwise distinct")]
    DegenerateTriangle,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rejection budget of {attempts} attempts exhausted: {reason}")]
    BudgetExhausted { attempts: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
