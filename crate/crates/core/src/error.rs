use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("fields live on different grids")]
    GridMismatch,

    #[error("stencil at node ({i}, {j}) reaches an exterior node")]
    Stencil { i: usize, j: usize },

    #[error("grid has no interior nodes")]
    EmptyInterior,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate immersion at {point}: rank of (X_u, X_v) below 2")]
    Singular { point: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "{what} did not converge after {iterations} iterations (last residual {residual:.3e})"
    )]
    Convergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    #[error("iterate left the domain of the conformal factor at |w| = {modulus:.6}")]
    OutOfDomain { modulus: f64, history: Vec<f64> },

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
