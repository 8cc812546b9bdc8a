use thiserror::Error;

/// Errors shared across the solver crates.
#[derive(Debug, Error)]
pub enum Error {
    /// A shell displacement violates the tube constraint `|eta| < kappa`,
    /// or a derived quantity (gamma, Jacobian) degenerated because of it.
    #[error("invalid displacement: {0}")]
    InvalidDisplacement(String),

    /// A point handed to a geometric map lies outside the domain closure.
    #[error("point outside domain: {0}")]
    OutOfDomain(String),

    /// Boundary data fed to a divergence-free construction carries net flux.
    #[error("flux compatibility violated: integral = {integral:.3e} (tolerance {tol:.1e})")]
    FluxCompatibility { integral: f64, tol: f64 },

    /// The mollified initial displacement dropped below the raw one somewhere,
    /// i.e. the regularization parameter is too large for this data.
    #[error("mollifier ordering failed: {0}")]
    MollifierOrdering(String),

    /// Galerkin mass matrix lost positive definiteness (basis degeneracy).
    #[error("matrix not SPD: {0}")]
    NotSpd(String),

    /// An iterative solve ran out of iterations.
    #[error("solver did not converge: {context} (residuals: {history:?})")]
    NonConvergence { context: String, history: Vec<f64> },

    /// Invalid physical or numerical parameters.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Configuration file problems (parse errors, unknown keys, bad values).
    #[error("config error: {0}")]
    Config(String),

    /// Unknown check-suite or sweep key names.
    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;
