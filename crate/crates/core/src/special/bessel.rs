//! Bessel function of the first kind for real order `nu > -1` and real
//! argument `x >= 0`.
//!
//! Three evaluation routes, chosen by argument size:
//! - the ascending power series where it cannot cancel badly
//!   (`x <= 2` or `x^2 <= 2(nu + 1)`);
//! - Hankel's large-argument expansion for `x >= 30`, used only when its
//!   terms shrink below round-off before they start to grow;
//! - Steed's continued-fraction method (CF1 + CF2, as in Barnett's
//!   formulation) everywhere else, with the reflection
//!   `J_{-mu} = cos(mu pi) J_mu - sin(mu pi) Y_mu` for negative orders.

use std::f64::consts::PI;

use super::gamma::ln_gamma;
use super::Order;
use crate::error::{domain, Error, Result};

const SERIES_MAX_TERMS: usize = 600;
const HANKEL_MIN_ARG: f64 = 30.0;
const STEED_MAX_ITER: usize = 200_000;
const STEED_EPS: f64 = 1e-16;
const STEED_FPMIN: f64 = f64::MIN_POSITIVE / STEED_EPS;

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

#[inline]
fn in_series_region(nu: f64, x: f64) -> bool {
    x <= 2.0 || x * x <= 2.0 * (nu + 1.0)
}

/// `sum_k (-x^2/4)^k / (k! (nu+1)_k)`, the entire part of `J_nu`.
fn entire_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut acc = CompensatedSum::default();
    acc.add(1.0);
    let mut term = 1.0_f64;
    for k in 1..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= -q / (kf * (nu + kf));
        acc.add(term);
        if kf > q && term.abs() <= 1e-17 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Hankel's asymptotic expansion, or `None` if it does not converge to
/// round-off at this `(nu, x)`.
fn hankel(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0_f64;
    let mut q = 0.0_f64;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        // terms alternate in sign pairwise: + (q), - (p), - (q), + (p), ...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if mag < 1e-17 {
            converged = true;
            break;
        }
        if mag > prev {
            return None;
        }
        prev = mag;
    }
    if !converged {
        return None;
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    Some((2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

/// Steed's method for `nu >= 0`, `x >= 2`; returns `(J_nu(x), Y_nu(x))`.
fn steed(nu: f64, x: f64) -> Result<(f64, f64)> {
    debug_assert!(nu >= 0.0 && x >= 2.0);
    let nl = (nu - x + 1.5).max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_nu / J_nu by modified Lentz
    let mut isign = 1.0_f64;
    let mut h = (nu * xi).max(STEED_FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0_f64;
    let mut c = h;
    let mut converged = false;
    for _ in 0..STEED_MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < STEED_FPMIN {
            d = STEED_FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < STEED_FPMIN {
            c = STEED_FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= STEED_EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            method: "bessel CF1",
            iterations: STEED_MAX_ITER,
        });
    }

    // downward recurrence to the reduced order xmu in [-1/2, 1/2)
    let mut rjl = isign * STEED_FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = STEED_EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq by Steed's algorithm
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0_f64;
    let br = 2.0 * x;
    let mut bi = 2.0_f64;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut converged = false;
    for i in 1..STEED_MAX_ITER {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < STEED_FPMIN {
            dr = STEED_FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < STEED_FPMIN {
            cr = STEED_FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() <= STEED_EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            method: "bessel CF2",
            iterations: STEED_MAX_ITER,
        });
    }

    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;
    let rj = rjl1 * (rjmu / rjl);
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok((rj, rymu))
}

/// `J_nu(x)` for `nu > -1`, `x > 0`, without argument checks.
pub(crate) fn j_unchecked(nu: f64, x: f64) -> Result<f64> {
    if in_series_region(nu, x) {
        let lead = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)?).exp();
        return Ok(lead * entire_series(nu, x));
    }
    if x >= HANKEL_MIN_ARG {
        if let Some(v) = hankel(nu, x) {
            return Ok(v);
        }
    }
    if nu >= 0.0 {
        Ok(steed(nu, x)?.0)
    } else {
        let mu = -nu;
        let (j, y) = steed(mu, x)?;
        Ok((mu * PI).cos() * j - (mu * PI).sin() * y)
    }
}

/// Bessel function of the first kind `J_nu(x)` for `x >= 0`.
///
/// At `x = 0` the value is `1` for `nu = 0` and `0` for `nu > 0`; negative
/// orders diverge there and give a domain error.
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    let n = nu.value();
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain("bessel_j", format!("argument must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return match n {
            n if n == 0.0 => Ok(1.0),
            n if n > 0.0 => Ok(0.0),
            _ => Err(domain("bessel_j", format!("J_{n}(0) diverges for negative order"))),
        };
    }
    j_unchecked(n, x)
}

/// Derivative `J'_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x)` for `x > 0`.
pub fn bessel_j_derivative(nu: Order, x: f64) -> Result<f64> {
    let n = nu.value();
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "bessel_j_derivative",
            format!("argument must be finite and > 0, got {x}"),
        ));
    }
    Ok(n / x * j_unchecked(n, x)? - j_unchecked(n + 1.0, x)?)
}

/// `Gamma(nu+1) (t/2)^(-nu) J_nu(t)`, the entire normalization of `J_nu`
/// with value `1` at the origin.
pub fn normalized_bessel(nu: Order, t: f64) -> Result<f64> {
    let n = nu.value();
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain(
            "normalized_bessel",
            format!("argument must be finite and >= 0, got {t}"),
        ));
    }
    if in_series_region(n, t) {
        return Ok(entire_series(n, t));
    }
    let scale = (ln_gamma(n + 1.0)? - n * (0.5 * t).ln()).exp();
    let v = scale * j_unchecked(n, t)?;
    if !v.is_finite() {
        return Err(Error::Overflow {
            func: "normalized_bessel",
            detail: format!("nu = {n}, t = {t}"),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // 40-digit reference values (nu, x, J_nu(x)), none within 1e-3 of a zero
    const REFERENCE: [(f64, f64, f64); 40] = [
        (0.0, 0.5, 0.938_469_807_240_812_9),
        (0.0, 1.7, 0.397_984_859_446_109_5),
        (0.0, 7.3, 0.288_216_947_635_014_4),
        (0.0, 15.0, -0.014_224_472_826_780_772),
        (0.0, 42.0, -0.114_739_496_713_582_81),
        (0.0, 250.0, -0.026_053_373_425_204_234),
        (0.0, 999.5, 0.024_019_300_140_883_57),
        (0.5, 3.0, 0.065_008_182_877_375_78),
        (1.0, 2.5, 0.497_094_102_464_274_05),
        (1.0, 18.2, -0.184_847_936_685_639_7),
        (1.0, 120.0, -0.011_805_211_433_001_89),
        (1.5, 5.5, -0.284_746_335_719_309),
        (2.5, 33.3, -0.127_342_519_811_606_33),
        (-0.5, 0.3, 1.391_668_509_175_370_2),
        (-0.5, 12.0, 0.194_364_403_833_534_54),
        (-0.3, 1.1, 0.557_545_504_225_898),
        (-0.3, 9.7, -0.255_793_656_805_145_1),
        (-0.3, 75.0, 0.069_661_154_241_727_56),
        (-0.9, 0.05, 2.889_290_674_101_202),
        (-0.9, 3.3, -0.287_050_238_267_972_66),
        (-0.9, 40.0, -0.123_515_857_224_462_9),
        (3.7, 0.8, 0.002_110_509_778_281_057_7),
        (3.7, 11.0, 0.074_165_704_289_896_45),
        (3.7, 64.0, 0.057_328_796_231_545_5),
        (10.0, 5.0, 0.001_467_802_647_310_474_1),
        (10.0, 12.0, 0.300_476_035_271_269_3),
        (10.0, 30.0, -0.129_876_893_998_588_76),
        (10.0, 300.0, 0.027_563_483_890_691_243),
        (25.5, 20.0, 0.006_699_419_168_668_342),
        (25.5, 31.0, 0.034_122_934_442_517_856),
        (25.5, 60.0, 0.096_449_899_535_408_8),
        (40.0, 38.0, 0.066_862_255_678_219_31),
        (40.0, 45.0, 0.126_600_621_268_202),
        (60.0, 10.0, 6.909_433_249_439_962e-41),
        (60.0, 58.0, 0.064_560_074_327_908_95),
        (60.0, 61.0, 0.139_765_236_193_618_94),
        (60.0, 70.0, -0.124_230_136_973_084_74),
        (60.0, 140.0, 0.006_251_228_017_776_37),
        (60.0, 900.0, -0.024_291_164_564_116_632),
        (0.25, 1000.0, 0.024_704_776_333_357_204),
    ];

    #[test]
    fn matches_high_precision_table() {
        for &(nu, x, want) in &REFERENCE {
            let got = bessel_j(ord(nu), x).unwrap();
            // absolute slack scaled by the local amplitude sqrt(2/(pi x))
            let amp = (2.0 / (PI * x)).sqrt().min(1.0);
            assert!(
                rel(got, want) < 1e-10 || (got - want).abs() < 1e-13 * amp,
                "J_{nu}({x}) = {got:e}, want {want:e}, rel {:e}",
                rel(got, want)
            );
        }
    }

    #[test]
    fn value_at_origin() {
        assert_eq!(bessel_j(ord(0.0), 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(ord(2.5), 0.0).unwrap(), 0.0);
        assert!(matches!(bessel_j(ord(-0.5), 0.0), Err(Error::Domain { .. })));
        assert!(bessel_j(ord(1.0), -1.0).is_err());
    }

    #[test]
    fn half_order_zero_at_pi() {
        assert!(bessel_j(ord(0.5), PI).unwrap().abs() < 1e-15);
    }

    #[test]
    fn first_zero_of_j0() {
        assert!(bessel_j(ord(0.0), 2.404_825_557_695_773).unwrap().abs() < 1e-10);
    }

    #[test]
    fn half_order_closed_forms() {
        for i in 1..=1000 {
            let x = 0.1 * i as f64;
            let amp = (2.0 / (PI * x)).sqrt();
            let jm = bessel_j(ord(-0.5), x).unwrap();
            let jp = bessel_j(ord(0.5), x).unwrap();
            let (wm, wp) = (amp * x.cos(), amp * x.sin());
            // relative, except where the closed form itself is near a zero
            assert!((jm - wm).abs() <= 1e-10 * wm.abs().max(1e-3 * amp), "x = {x}");
            assert!((jp - wp).abs() <= 1e-10 * wp.abs().max(1e-3 * amp), "x = {x}");
        }
    }

    #[test]
    fn hankel_and_steed_agree_on_overlap() {
        for &nu in &[0.0, 0.3, 1.0, 1.5, 2.25] {
            for i in 0..40 {
                let x = 30.0 + 2.3 * i as f64;
                let h = hankel(nu, x).expect("hankel should converge here");
                let s = steed(nu, x).unwrap().0;
                assert!((h - s).abs() < 1e-12 * (2.0 / (PI * x)).sqrt(), "nu = {nu}, x = {x}: {h} vs {s}");
            }
        }
    }

    #[test]
    fn series_and_steed_agree_on_overlap() {
        for &nu in &[0.0, 0.7, 2.0, 5.5] {
            for i in 0..20 {
                let x = 2.0 + 0.2 * i as f64;
                let lead = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0).unwrap()).exp();
                let s = lead * entire_series(nu, x);
                let c = steed(nu, x).unwrap().0;
                assert!(rel(s, c) < 1e-12, "nu = {nu}, x = {x}: {s} vs {c}");
            }
        }
    }

    #[test]
    fn derivative_of_j0_near_origin() {
        let t = 1e-3;
        let d = bessel_j_derivative(ord(0.0), t).unwrap();
        assert!((d + t / 2.0).abs() < 1e-10);
        assert!(bessel_j_derivative(ord(0.0), 0.0).is_err());
    }

    #[test]
    fn derivative_of_half_order_closed_form() {
        // d/dx sqrt(2/(pi x)) sin x = sqrt(2/pi) (x^(-1/2) cos x - x^(-3/2) sin x / 2)
        let x = PI / 2.0;
        let want = (2.0 / PI).sqrt() * (x.powf(-0.5) * x.cos() - 0.5 * x.powf(-1.5) * x.sin());
        let got = bessel_j_derivative(ord(0.5), x).unwrap();
        assert!(rel(got, want) < 1e-12);
    }

    #[test]
    fn derivative_at_first_zero_of_j0() {
        // -J_1(j_{0,1})
        let got = bessel_j_derivative(ord(0.0), 2.404_825_557_695_773).unwrap();
        assert!((got + 0.519_147).abs() < 1e-6);
    }

    #[test]
    fn normalized_bessel_closed_forms() {
        assert_eq!(normalized_bessel(ord(3.0), 0.0).unwrap(), 1.0);
        for i in 0..400 {
            let x = 0.05 * i as f64 + 1e-3;
            let c = normalized_bessel(ord(-0.5), x).unwrap();
            let s = normalized_bessel(ord(0.5), x).unwrap();
            assert!((c - x.cos()).abs() < 1e-13, "x = {x}");
            assert!((s - x.sin() / x).abs() < 1e-13, "x = {x}");
        }
        assert!(normalized_bessel(ord(0.0), -1.0).is_err());
    }
}
