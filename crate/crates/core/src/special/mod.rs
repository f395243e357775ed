//! Real-argument Bessel functions of the first kind, their zeros, and the
//! Gamma function.

mod bessel;
mod gamma;
mod zeros;

pub use bessel::{bessel_j, bessel_j_derivative, normalized_bessel};
pub use gamma::{gamma, ln_gamma};
pub use zeros::{bessel_zero, bessel_zeros};

use crate::error::{domain, Result};

/// Order of a Bessel function. Always strictly greater than `-1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    /// Orders closer than this to `-1` are rejected rather than clamped.
    pub const LOWER_MARGIN: f64 = 1e-12;

    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= -1.0 + Self::LOWER_MARGIN {
            return Err(domain("Order::new", format!("order must be > -1, got {nu}")));
        }
        Ok(Order(nu))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// The order one above this one (`nu + 1`), which is always valid.
    #[inline]
    pub fn succ(self) -> Order {
        Order(self.0 + 1.0)
    }
}

impl TryFrom<f64> for Order {
    type Error = crate::Error;

    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

/// 1-based index of a positive zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZeroIndex(usize);

impl ZeroIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("ZeroIndex::new", "zero index is 1-based"));
        }
        Ok(ZeroIndex(n))
    }

    pub const FIRST: ZeroIndex = ZeroIndex(1);

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_rejects_minus_one_and_below() {
        assert!(Order::new(-1.0).is_err());
        assert!(Order::new(-1.0 + 1e-13).is_err());
        assert!(Order::new(-1.5).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert!(Order::new(-0.999).is_ok());
    }

    #[test]
    fn zero_index_is_one_based() {
        assert!(ZeroIndex::new(0).is_err());
        assert_eq!(ZeroIndex::new(3).unwrap().get(), 3);
    }
}
