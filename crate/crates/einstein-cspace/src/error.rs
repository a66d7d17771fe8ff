use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameters must be positive integers, got ({l}, {m}, {n})")]
    InvalidParams { l: u32, m: u32, n: u32 },

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("newton did not converge within {iters} iterations (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },

    #[error("iterate left the positive orthant")]
    LeftPositiveOrthant,

    #[error("continuation path from ({x1:.6}, {x2:.6}) lost at t = {t:.6}: {reason}")]
    PathLost {
        x1: f64,
        x2: f64,
        t: f64,
        reason: String,
    },

    #[error("normalized map hit the stereographic pole; inputs cannot have positive Ricci")]
    ProjectionPole,

    #[error("singular root at ({x1:.6}, {x2:.6}): |jacobian| = {jacobian:.3e}")]
    SingularRoot { x1: f64, x2: f64, jacobian: f64 },

    #[error("boundary root suspected: min |f| on the box boundary is {0:.3e}")]
    BoundaryRootSuspected(f64),

    #[error("catalog integrity failure: {0}")]
    CatalogIntegrity(String),

    #[error("inconsistent parameter multisets: {0}")]
    InconsistentParams(String),

    #[error("unknown reproduction target `{0}`")]
    UnknownTarget(String),

    #[error("reproduction mismatch: {0}")]
    ReproduceMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
