use thiserror::Error;

/// Errors raised by the model, the Riemann solvers, the boundary analysis and the schemes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("density {rho} exceeds the singularity guard 1 - {delta}")]
    Singularity { rho: f64, delta: f64 },

    #[error("state (rho = {rho}, q = {q}) is outside the triangle 0 <= q <= rho <= 1")]
    OutsideTriangle { rho: f64, q: f64 },

    #[error("invalid fundamental diagram: {0}")]
    InvalidDiagram(String),

    #[error("flux is not concave (F'' = {curvature} at rho = {rho})")]
    NonConcave { rho: f64, curvature: f64 },

    #[error("root not bracketed on [{lo}, {hi}] (g(lo) = {g_lo}, g(hi) = {g_hi})")]
    NoBracket { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },

    #[error("degenerate wave: {0}")]
    Degenerate(String),

    #[error("time step {dt} violates the CFL bound {limit}")]
    Cfl { dt: f64, limit: f64 },

    #[error("layer integration left [0, 1 - delta] at x = {x} (rho = {rho})")]
    LayerBlowUp { x: f64, rho: f64 },

    #[error("explicit closed form unavailable for H = {0}")]
    UnsupportedH(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("front detection failed: {0}")]
    Front(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
