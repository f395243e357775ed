//! The homogeneous de Branges space generated by `E_nu = A_nu - i B_nu`,
//! and numerical checks of its weighted isometry against `|x|^(2 nu + 1) dx`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::quadrature::integrate_pair;
use crate::special::{gamma, normalized_bessel, Order};

/// `A_nu(x) = Gamma(nu+1) (x/2)^(-nu) J_nu(x)`, even in `x`.
pub fn a_fn(nu: Order, x: f64) -> Result<f64> {
    check_finite("a_fn", x)?;
    normalized_bessel(nu, x.abs())
}

/// `B_nu(x) = Gamma(nu+1) (x/2)^(-nu) J_(nu+1)(x)`, odd in `x`.
pub fn b_fn(nu: Order, x: f64) -> Result<f64> {
    check_finite("b_fn", x)?;
    let t = x.abs();
    let two_mu = 2.0 * (nu.value() + 1.0);
    let v = t * normalized_bessel(nu.succ(), t)? / two_mu;
    Ok(if x < 0.0 { -v } else { v })
}

/// `|E_nu(x)|^(-2) = 1 / (A_nu(x)^2 + B_nu(x)^2)`.
pub fn weight(nu: Order, x: f64) -> Result<f64> {
    let (a, b) = a_and_b(nu, x)?;
    Ok(1.0 / (a * a + b * b))
}

fn a_and_b(nu: Order, x: f64) -> Result<(f64, f64)> {
    Ok((a_fn(nu, x)?, b_fn(nu, x)?))
}

/// `a_nu = 2^(2 nu + 1) Gamma(nu + 1)^2 / pi`.
pub fn a_constant(nu: Order) -> f64 {
    let n = nu.value();
    let g = gamma(n + 1.0).expect("Gamma(nu + 1) is finite for admissible orders below 169");
    (2.0 * n + 1.0).exp2() * g * g / PI
}

/// `G_n(x) = (sin(x/n) / (x/n))^n`.
pub fn test_function_gn(n: u32, x: f64) -> f64 {
    assert!(n >= 1, "G_n needs n >= 1");
    let u = x / n as f64;
    let s = if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    };
    s.powi(n as i32)
}

/// Smallest `n` for which `G_n^2 |x|^(2 nu + 1)` is integrable.
pub fn minimal_n(nu: Order) -> u32 {
    (nu.value().ceil() as i64 + 2).max(1) as u32
}

/// Both sides of the weighted identity on `[-T, T]`, plus a bound on what
/// lies beyond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedIntegralReport {
    /// `a_nu * integral F(x) |E_nu(x)|^-2 dx`
    pub lhs: f64,
    /// `integral F(x) |x|^(2 nu + 1) dx`
    pub rhs: f64,
    pub relative_error: f64,
    pub truncation_t: f64,
    pub tail_bound: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl WeightedIntegralReport {
    pub fn relative_tail(&self) -> f64 {
        self.tail_bound / self.lhs.abs().max(self.rhs.abs()).max(1e-300)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub truncation_t: f64,
    pub refinement_tolerance: f64,
    pub max_subdivisions: usize,
}

pub const MAX_SUBDIVISIONS: usize = 1 << 20;

impl QuadratureConfig {
    pub fn new(truncation_t: f64, refinement_tolerance: f64, max_subdivisions: usize) -> Result<Self> {
        if !(truncation_t > 0.0) || !truncation_t.is_finite() {
            return Err(Error::Config(format!("truncation T must be positive, got {truncation_t}")));
        }
        if !(refinement_tolerance > 0.0 && refinement_tolerance < 1.0) {
            return Err(Error::Config(format!(
                "tolerance must lie in (0, 1), got {refinement_tolerance}"
            )));
        }
        if max_subdivisions == 0 || max_subdivisions > MAX_SUBDIVISIONS {
            return Err(Error::Config(format!(
                "max_subdivisions must lie in 1..={MAX_SUBDIVISIONS}, got {max_subdivisions}"
            )));
        }
        Ok(QuadratureConfig {
            truncation_t,
            refinement_tolerance,
            max_subdivisions,
        })
    }

    /// Picks `T` so the tail estimate for `G_n^2` stays under a quarter of
    /// `tol` relative to a lower bound on the integral. Never below 200.
    pub fn for_test_function(nu: Order, n: u32, tol: f64) -> Result<Self> {
        let p = decay_excess(nu, n)?;
        let nf = n as f64;
        let two_mu = 2.0 * nu.value() + 2.0;
        // G_n^2 >= sin(1)^(2n) on [-n, n]
        let ln_lower = (2.0f64).ln() + 2.0 * nf * 1f64.sin().ln() + two_mu * nf.ln() - two_mu.ln();
        // 2.5 n^(2n) T^(-p) / p <= 0.25 tol L
        let ln_t = ((2.5f64).ln() + 2.0 * nf * nf.ln() - p.ln() - (0.25 * tol).ln() - ln_lower) / p;
        let t = ln_t.exp().max(200.0).ceil();
        QuadratureConfig::new(t, tol, MAX_SUBDIVISIONS)
    }
}

fn decay_excess(nu: Order, n: u32) -> Result<f64> {
    let min_n = minimal_n(nu);
    if n < min_n {
        return Err(Error::Integrability {
            nu: nu.value(),
            n,
            min_n,
        });
    }
    Ok(2.0 * n as f64 - 2.0 * nu.value() - 2.0)
}

/// Checks `a_nu ∫ G_n^2 |E_nu|^-2 = ∫ G_n^2 |x|^(2 nu + 1)` over the real line.
pub fn verify_isometry(nu: Order, n: u32, cfg: QuadratureConfig) -> Result<WeightedIntegralReport> {
    weighted_identity(nu, n, 1.0, cfg)
}

/// The non-squared form of the identity for `F = c G_n^2`, `0 < c <= 1`.
pub fn verify_integral_identity(
    nu: Order,
    n: u32,
    c: f64,
    cfg: QuadratureConfig,
) -> Result<WeightedIntegralReport> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(domain("verify_integral_identity", format!("c must lie in (0, 1], got {c}")));
    }
    weighted_identity(nu, n, c, cfg)
}

pub const DEFAULT_SCALE_C: f64 = 0.5;

fn weighted_identity(nu: Order, n: u32, c: f64, cfg: QuadratureConfig) -> Result<WeightedIntegralReport> {
    let p = decay_excess(nu, n)?;
    let a_nu = a_constant(nu);
    let power = 2.0 * nu.value() + 1.0;
    let t = cfg.truncation_t;

    // NaN from a failed evaluation propagates into the totals and is caught below
    let integrand = |x: f64| -> [f64; 2] {
        let g = test_function_gn(n, x);
        let f = c * g * g;
        let w = weight(nu, x).unwrap_or(f64::NAN);
        [a_nu * f * w, f * x.powf(power)]
    };
    let panel_len = 0.5 * n as f64;
    let initial = ((t / panel_len).ceil() as usize).clamp(1, cfg.max_subdivisions);
    let half = integrate_pair(
        integrand,
        0.0,
        t,
        initial,
        0.01 * cfg.refinement_tolerance,
        0.0,
        cfg.max_subdivisions,
    )?;
    let lhs = 2.0 * half.values[0];
    let rhs = 2.0 * half.values[1];
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(Error::NonConvergence {
            method: "weighted identity quadrature",
            iterations: half.panels,
        });
    }

    // envelope of a_nu w / x^(2 nu + 1) over the last stretch before T
    let mut ratio_max: f64 = 1.0;
    for k in 0..=64 {
        let x = t * (0.75 + 0.25 * k as f64 / 64.0);
        let r = a_nu * weight(nu, x)? / x.powf(power);
        ratio_max = ratio_max.max(r);
    }
    let nf = n as f64;
    let k_env = c * (2.0 * nf * nf.ln()).exp() * ratio_max;
    let tail_bound = 2.0 * 1.25 * k_env * t.powf(-p) / p;

    let scale = lhs.abs().max(rhs.abs());
    let relative_error = (lhs - rhs).abs() / scale.max(1e-300);
    let relative_tail = tail_bound / scale.max(1e-300);
    Ok(WeightedIntegralReport {
        lhs,
        rhs,
        relative_error,
        truncation_t: t,
        tail_bound,
        tolerance: cfg.refinement_tolerance,
        passed: relative_error + relative_tail <= cfg.refinement_tolerance,
    })
}

fn check_finite(func: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(func, format!("argument must be finite, got {x}")))
    }
}
