//! Positive zeros `j_{nu,n}` of `J_nu`.
//!
//! The zeros are located by a sign-change scan that starts inside an
//! interval where `J_nu` is provably positive, with a step shorter than the
//! smallest gap between consecutive zeros; each bracket is then polished by
//! Newton's method, falling back to bisection whenever a step leaves the
//! bracket.

use std::f64::consts::PI;

use super::bessel::j_unchecked;
use super::{Order, ZeroIndex};
use crate::error::{Error, Result};

/// Consecutive zeros of `J_nu` are more than 2.9 apart for every `nu > -1`.
const SCAN_STEP: f64 = 1.0;
const MAX_REFINE_ITER: usize = 200;

/// Left end of the scan. `J_nu > 0` on `(0, start]`: the ascending series is
/// alternating with ratio at most 1/2 while `x^2 <= 2(nu+1)`, and for
/// `nu > 0` the first zero exceeds `sqrt(nu (nu + 2))`.
fn scan_start(nu: f64) -> f64 {
    let series_bound = (2.0 * (nu + 1.0)).sqrt();
    let order_bound = if nu > 0.0 { (nu * (nu + 2.0)).sqrt() } else { 0.0 };
    series_bound.max(order_bound) * (1.0 - 1e-9)
}

/// McMahon's expansion, or the two-term large-order form for the first zero.
fn initial_guess(nu: f64, n: usize) -> f64 {
    if n == 1 && nu > 5.0 {
        return nu + 1.855_757 * nu.cbrt();
    }
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8)
}

fn refine(nu: f64, lo: f64, hi: f64, sign_lo: f64, guess: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..MAX_REFINE_ITER {
        let f = j_unchecked(nu, x)?;
        if f == 0.0 {
            return Ok(x);
        }
        if f.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let fp = nu / x * f - j_unchecked(nu + 1.0, x)?;
        let mut next = x - f / fp;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return polish(nu, next);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        method: "bessel zero refinement",
        iterations: MAX_REFINE_ITER,
    })
}

/// Walks `x` one ulp at a time (at most 8) while `|J_nu|` decreases.
fn polish(nu: f64, x: f64) -> Result<f64> {
    let mut best = (j_unchecked(nu, x)?.abs(), x);
    for _ in 0..8 {
        let x = best.1;
        let mut moved = false;
        for y in [f64::from_bits(x.to_bits() - 1), f64::from_bits(x.to_bits() + 1)] {
            let fy = j_unchecked(nu, y)?.abs();
            if fy < best.0 {
                best = (fy, y);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(best.1)
}

/// The first `count` positive zeros of `J_nu`, in increasing order.
pub fn bessel_zeros(nu: Order, count: usize) -> Result<Vec<f64>> {
    let nu = nu.value();
    let mut zeros = Vec::with_capacity(count);
    if count == 0 {
        return Ok(zeros);
    }
    let mut a = scan_start(nu);
    let fa = j_unchecked(nu, a)?;
    debug_assert!(fa > 0.0, "J_{nu} must be positive at the scan start {a}");
    let mut sign_a = fa.signum();
    let mut steps = 0usize;
    // generous cap: the n-th zero lies below (n + nu/2 + 1) pi + start
    let max_steps = ((count as f64 + 0.5 * nu.abs() + 2.0) * PI / SCAN_STEP) as usize + 16;
    while zeros.len() < count {
        if steps > max_steps {
            return Err(Error::NonConvergence {
                method: "bessel zero scan",
                iterations: steps,
            });
        }
        steps += 1;
        let b = a + SCAN_STEP;
        let fb = j_unchecked(nu, b)?;
        if fb == 0.0 {
            zeros.push(b);
            sign_a = -sign_a;
        } else if fb.signum() != sign_a {
            let guess = initial_guess(nu, zeros.len() + 1);
            zeros.push(refine(nu, a, b, sign_a, guess)?);
            sign_a = fb.signum();
        }
        a = b;
    }
    Ok(zeros)
}

/// The `n`-th positive zero `j_{nu,n}` of `J_nu`.
pub fn bessel_zero(nu: Order, n: ZeroIndex) -> Result<f64> {
    let zeros = bessel_zeros(nu, n.get())?;
    Ok(zeros[n.get() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero(nu: f64, n: usize) -> f64 {
        bessel_zero(Order::new(nu).unwrap(), ZeroIndex::new(n).unwrap()).unwrap()
    }

    // 40-digit reference zeros (nu, n, j_{nu,n})
    const REFERENCE: [(f64, usize, f64); 30] = [
        (0.0, 1, 2.404_825_557_695_773),
        (0.5, 1, 3.141_592_653_589_793),
        (1.0, 1, 3.831_705_970_207_512_5),
        (1.5, 1, 4.493_409_457_909_064),
        (2.0, 1, 5.135_622_301_840_683),
        (2.5, 1, 5.763_459_196_894_55),
        (3.0, 1, 6.380_161_895_923_983),
        (5.0, 1, 8.771_483_815_959_954),
        (7.5, 1, 11.657_032_192_516_372),
        (20.0, 1, 25.417_140_814_072_525),
        (60.0, 1, 67.528_785_765_029_44),
        (255.0, 1, 266.930_859_146_694_3),
        (0.0, 2, 5.520_078_110_286_311),
        (0.0, 10, 30.634_606_468_431_976),
        (1.0, 3, 10.173_468_135_062_722),
        (2.5, 7, 25.012_803_202_289_61),
        (20.0, 4, 37.772_857_844_399_056),
        (0.5, 100, 314.159_265_358_979_3),
        (-0.9, 1, 0.647_830_880_750_377_2),
        (-0.9, 2, 4.016_086_589_182_029),
        (-0.9, 5, 13.488_140_484_812_602),
        (-0.7, 1, 1.171_454_672_983_769_8),
        (-0.7, 2, 4.371_391_586_085_331),
        (-0.7, 5, 13.814_342_593_935_482),
        (-0.3, 1, 1.922_854_015_065_937_4),
        (-0.3, 2, 5.042_125_633_579_608),
        (-0.3, 5, 14.456_846_522_464_264),
        (-0.1, 1, 2.248_677_139_044_745_3),
        (-0.1, 2, 5.362_716_191_502_208),
        (-0.1, 5, 14.773_588_998_040_763),
    ];

    #[test]
    fn matches_high_precision_table() {
        for &(nu, n, want) in &REFERENCE {
            let got = zero(nu, n);
            assert!((got - want).abs() < 1e-10, "j_({nu},{n}) = {got}, want {want}");
        }
    }

    #[test]
    fn half_order_zeros_are_exact() {
        assert!((zero(-0.5, 1) - PI / 2.0).abs() < 1e-12);
        assert!((zero(0.5, 1) - PI).abs() < 1e-12);
        for n in 1..=20 {
            assert!((zero(0.5, n) - n as f64 * PI).abs() < 1e-11);
            assert!((zero(-0.5, n) - (n as f64 - 0.5) * PI).abs() < 1e-11);
        }
    }

    #[test]
    fn interlacing() {
        for &nu in &[-0.5, 0.0, 0.5, 1.0, 1.5, 5.0, 20.0] {
            let a = zero(nu, 1);
            let b = zero(nu + 1.0, 1);
            let c = zero(nu, 2);
            assert!(a < b && b < c, "nu = {nu}: {a} {b} {c}");
        }
    }

    #[test]
    fn first_zero_increases_with_order() {
        let mut prev = 0.0;
        for i in 0..120 {
            let nu = -0.99 + 0.05 * i as f64;
            let z = zero(nu, 1);
            assert!(z > prev, "nu = {nu}");
            prev = z;
        }
    }

    #[test]
    fn zero_list_is_strictly_increasing() {
        let zs = bessel_zeros(Order::new(1.5).unwrap(), 300).unwrap();
        assert_eq!(zs.len(), 300);
        assert!(zs.windows(2).all(|w| w[1] - w[0] > 2.9));
        for z in zs {
            assert!(j_unchecked(1.5, z).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn scan_start_is_left_of_first_zero() {
        for i in 0..200 {
            let nu = -0.999 + 0.5 * i as f64;
            assert!(j_unchecked(nu, scan_start(nu)).unwrap() > 0.0, "nu = {nu}");
        }
    }
}
