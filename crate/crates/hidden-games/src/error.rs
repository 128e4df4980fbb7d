//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Vector or matrix dimensions do not match.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Input contains non-finite values or lies outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value lies outside the attainable range of a player function, or
    /// within the guard band of an open range endpoint.
    #[error("range error: {0}")]
    Range(String),

    /// The 2x2 game has v = u00 - u01 - u10 + u11 = 0, so no interior
    /// mixed equilibrium exists.
    #[error("no interior equilibrium: v = u00 - u01 - u10 + u11 is zero")]
    NoInteriorEquilibrium,

    /// The computed equilibrium has a component on or outside [0, 1].
    #[error("equilibrium is not fully mixed: {0}")]
    NotFullyMixed(String),

    /// A linear system was singular or inconsistent beyond tolerance.
    #[error("singular or inconsistent linear system: residual {residual:.3e}")]
    SingularSystem { residual: f64 },

    /// The supplied (p, q) do not satisfy the equilibrium indifference
    /// conditions to tolerance.
    #[error("not an equilibrium of the game: max deviation {deviation:.3e}")]
    NotAnEquilibrium { deviation: f64 },

    /// Trajectory produced a non-finite state.
    #[error("integration blow-up: last good time t = {t_last}")]
    Blowup { t_last: f64 },

    /// Adaptive step size fell below the minimum.
    #[error("stiffness: adaptive step underflow at t = {t}")]
    StepUnderflow { t: f64 },

    /// A state handed to fixed-point analysis is not an approximate zero
    /// of the vector field.
    #[error("not a fixed point: field residual {residual:.3e} exceeds tolerance")]
    NotAFixedPoint { residual: f64 },

    /// A constructor's preconditions cannot be met.
    #[error("construction error: {0}")]
    Construction(String),

    /// Experiment configuration is invalid.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
