use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Malformed(String),

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("duplicate arc ({origin}, {terminus})")]
    DuplicateArc { origin: usize, terminus: usize },

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("{what} must be positive and finite, got {value}")]
    NonPositiveRate { what: String, value: f64 },

    #[error("underlying graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("pole: |{factor}| = {magnitude:e} at u = {u}")]
    Pole { factor: String, magnitude: f64, u: String },

    #[error("QR iteration did not converge for the {dim}x{dim} matrix {name}")]
    NonConvergence { name: String, dim: usize },

    #[error("graph structure does not match {kind}: {reason}")]
    StructureMismatch { kind: String, reason: String },

    #[error("u = {u} is outside the convergence region (|u| * rho = {product})")]
    OutsideConvergence { u: f64, product: f64 },

    #[error("singular pencil: det(I - uX) = 0 at u = {u}")]
    Singular { u: String },

    #[error("|u| = {u_abs} too large for a branch-consistent logarithm")]
    BranchAmbiguity { u_abs: f64 },

    #[error("log argument vanishes at theta = {theta:?}")]
    Domain { theta: Vec<f64> },

    #[error("{what}: size {size} exceeds limit {limit}")]
    TooLarge { what: String, size: usize, limit: usize },
}
