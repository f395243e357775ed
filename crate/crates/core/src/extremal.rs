//! Closed-form extremal values for band-limited minorants of the unit ball.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::special::{bessel_j, bessel_zero, ln_gamma, Order, ZeroIndex};

/// Leading constant of the first-zero expansion `j_(nu,1) ~ nu + c nu^(1/3)`.
pub const FIRST_ZERO_CONSTANT: f64 = 1.855757;

/// Euclidean dimension `d >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(domain("Dimension::new", "dimension must be >= 1"));
        }
        Ok(Dimension(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// `d/2 - 1`, the order attached to radial functions in dimension `d`.
    pub fn order(self) -> Order {
        Order::new(self.as_f64() / 2.0 - 1.0).expect("d/2 - 1 >= -1/2")
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `|S^(d-1)| = 2 pi^(d/2) / Gamma(d/2)`.
pub fn surface_area(d: Dimension) -> f64 {
    let h = d.as_f64() / 2.0;
    (std::f64::consts::LN_2 + h * PI.ln() - ln_gamma(h).expect("d/2 > 0")).exp()
}

/// Volume of the unit ball, `pi^(d/2) / Gamma(d/2 + 1)`.
pub fn ball_volume(d: Dimension) -> f64 {
    surface_area(d) / d.as_f64()
}

/// `r_d = j_(d/2-1, 1) / pi`.
pub fn critical_radius(d: Dimension) -> Result<f64> {
    Ok(bessel_zero(d.order(), ZeroIndex::FIRST)? / PI)
}

/// Two-term large-`d` approximation of [`critical_radius`].
pub fn critical_radius_asymptotic(d: Dimension) -> f64 {
    let x = d.as_f64();
    x / (2.0 * PI) + FIRST_ZERO_CONSTANT * x.cbrt() / (2f64.cbrt() * PI)
}

/// The open interval `(j_(d/2-1,1), j_(d/2,1))` in which `pi r` must lie.
pub fn window(d: Dimension) -> Result<(f64, f64)> {
    let nu = d.order();
    Ok((
        bessel_zero(nu, ZeroIndex::FIRST)?,
        bessel_zero(nu.succ(), ZeroIndex::FIRST)?,
    ))
}

fn check_radius(func: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(domain(func, format!("radius must be finite and > 0, got {r}")))
    }
}

/// `gamma_(pi r) = -pi r J_(d/2-1)(pi r) / J_(d/2)(pi r)`.
pub fn gamma_factor(d: Dimension, r: f64) -> Result<f64> {
    check_radius("gamma_factor", r)?;
    let z = PI * r;
    let (lo, hi) = window(d)?;
    if !(z > lo && z < hi) {
        return Err(Error::Window { z, lower: lo, upper: hi });
    }
    let nu = d.order();
    Ok(-z * bessel_j(nu, z)? / bessel_j(nu.succ(), z)?)
}

/// `Lambda^- = pi gamma / (1 + gamma / d)`.
pub fn lambda_minus(d: Dimension, r: f64) -> Result<f64> {
    let g = gamma_factor(d, r)?;
    Ok(PI * g / (1.0 + g / d.as_f64()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaRegime {
    ExactZero,
    ClosedForm,
    OutOfWindow,
}

impl BetaRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            BetaRegime::ExactZero => "exact_zero",
            BetaRegime::ClosedForm => "closed_form",
            BetaRegime::OutOfWindow => "out_of_window",
        }
    }
}

impl fmt::Display for BetaRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaValue {
    /// `None` exactly when the regime is [`BetaRegime::OutOfWindow`].
    pub value: Option<f64>,
    pub regime: BetaRegime,
}

/// `beta(d, r)`, the largest integral of a minorant of the unit ball's
/// indicator whose Fourier transform lives in the ball of radius `r`.
pub fn beta_closed_form(d: Dimension, r: f64) -> Result<BetaValue> {
    check_radius("beta_closed_form", r)?;
    let (lo, hi) = window(d)?;
    let z = PI * r;
    if r <= lo / PI || z <= lo {
        return Ok(BetaValue {
            value: Some(0.0),
            regime: BetaRegime::ExactZero,
        });
    }
    if z >= hi {
        return Ok(BetaValue {
            value: None,
            regime: BetaRegime::OutOfWindow,
        });
    }
    let nu = d.order();
    let g = -z * bessel_j(nu, z)? / bessel_j(nu.succ(), z)?;
    let df = d.as_f64();
    let value = (2.0 / r).powf(df) / surface_area(d) * g / (1.0 + g / df);
    Ok(BetaValue {
        value: Some(value),
        regime: BetaRegime::ClosedForm,
    })
}

/// Slope of the first-order expansion of `beta` around `r`,
/// `pi^2 2^d / (r^(d-1) |S^(d-1)|)`.
pub fn slope_at(d: Dimension, r: f64) -> f64 {
    let df = d.as_f64();
    PI * PI * 2f64.powf(df) / (r.powf(df - 1.0) * surface_area(d))
}

/// [`slope_at`] evaluated at the critical radius.
pub fn linear_slope(d: Dimension) -> Result<f64> {
    Ok(slope_at(d, critical_radius(d)?))
}

/// `slope(r) (r - r_d)`, meaningful only near `r_d`.
pub fn beta_linear_approx(d: Dimension, r: f64) -> Result<f64> {
    let rd = critical_radius(d)?;
    Ok(slope_at(d, r) * (r - rd))
}

/// Rounds `x > 0` up to `digits` significant digits.
pub fn round_up_significant(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let e = x.abs().log10().floor() as i32 - digits as i32 + 1;
    let scale = 10f64.powi(e);
    let q = x / scale;
    // tolerate representation noise just above an integer
    let snapped = q.round();
    let k = if (q - snapped).abs() < 1e-9 { snapped } else { q.ceil() };
    if e < 0 {
        k / 10f64.powi(-e)
    } else {
        k * scale
    }
}
