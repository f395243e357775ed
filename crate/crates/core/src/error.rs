use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// The result would overflow an `f64`.
    #[error("overflow in {func}: {detail}")]
    Overflow { func: &'static str, detail: String },

    /// An iterative method did not reach its tolerance within its budget.
    #[error("{method} did not converge after {iterations} iterations")]
    NonConvergence { method: &'static str, iterations: usize },

    /// `pi * r` is outside the open window where the closed form holds.
    #[error("pi*r = {z} is outside the window ({lower}, {upper})")]
    Window { z: f64, lower: f64, upper: f64 },

    /// The test function does not decay fast enough for the weighted integral.
    #[error("G_{n}^2 |x|^(2nu+1) is not integrable for nu = {nu}; need n >= {min_n}")]
    Integrability { nu: f64, n: u32, min_n: u32 },

    /// A configuration value violates its invariants.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
