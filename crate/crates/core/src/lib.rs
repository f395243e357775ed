//! Band-limited minorants of the indicator of the Euclidean ball.

pub mod debranges;
pub mod error;
pub mod extremal;
pub mod lp;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
