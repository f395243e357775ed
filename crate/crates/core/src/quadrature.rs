//! Adaptive composite Gauss-Legendre quadrature.
//!
//! Panels carry 15-point rules; a panel's error is estimated by comparing
//! its single-panel value with the sum over its two halves, and the panel
//! with the largest estimate is bisected until the summed estimate meets
//! the relative tolerance. Integrands are pairs so that two integrals can be
//! refined on one shared mesh.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(c + h * t))
            .sum();
        h * s
    }

    fn integrate_pair<F: Fn(f64) -> [f64; 2]>(&self, f: &F, a: f64, b: f64) -> [f64; 2] {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = [0.0; 2];
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(c + h * t);
            acc[0] += w * v[0];
            acc[1] += w * v[1];
        }
        [h * acc[0], h * acc[1]]
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub(crate) fn gauss_legendre_15() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(15))
}

/// Result of [`integrate_pair`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairIntegral {
    pub values: [f64; 2],
    pub error_estimates: [f64; 2],
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: [f64; 2],
    error: [f64; 2],
}

impl Panel {
    fn new<F: Fn(f64) -> [f64; 2]>(rule: &GaussLegendre, f: &F, a: f64, b: f64) -> Self {
        let whole = rule.integrate_pair(f, a, b);
        let m = 0.5 * (a + b);
        let l = rule.integrate_pair(f, a, m);
        let r = rule.integrate_pair(f, m, b);
        let value = [l[0] + r[0], l[1] + r[1]];
        let error = [(whole[0] - value[0]).abs(), (whole[1] - value[1]).abs()];
        Panel { a, b, value, error }
    }

    fn key(&self) -> f64 {
        self.error[0].max(self.error[1])
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .total_cmp(&other.key())
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrates both components of `f` over `[a, b]` on a shared adaptive
/// mesh, starting from `initial_panels` equal panels and bisecting until
/// each component's summed error estimate is at most `rel_tol` times the
/// magnitude of its integral (or `abs_floor`, whichever is larger).
pub fn integrate_pair<F: Fn(f64) -> [f64; 2]>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> Result<PairIntegral> {
    if !(b > a) {
        return Err(Error::Config(format!("empty interval [{a}, {b}]")));
    }
    let rule = gauss_legendre_15();
    let n0 = initial_panels.max(1);
    if n0 > max_panels {
        return Err(Error::Config(format!(
            "{n0} initial panels exceed the limit of {max_panels}"
        )));
    }
    let h = (b - a) / n0 as f64;
    let mut heap: BinaryHeap<Panel> = (0..n0)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == n0 { b } else { a + h * (i + 1) as f64 };
            Panel::new(rule, &f, lo, hi)
        })
        .collect();

    let totals = |heap: &BinaryHeap<Panel>| {
        let mut v = [0.0; 2];
        let mut e = [0.0; 2];
        for p in heap.iter() {
            for c in 0..2 {
                v[c] += p.value[c];
                e[c] += p.error[c];
            }
        }
        (v, e)
    };

    let (mut values, mut errors) = totals(&heap);
    loop {
        let done = (0..2).all(|c| errors[c] <= (rel_tol * values[c].abs()).max(abs_floor));
        if done {
            break;
        }
        if heap.len() >= max_panels {
            return Err(Error::NonConvergence {
                method: "adaptive Gauss-Legendre quadrature",
                iterations: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        let left = Panel::new(rule, &f, worst.a, m);
        let right = Panel::new(rule, &f, m, worst.b);
        for c in 0..2 {
            values[c] += left.value[c] + right.value[c] - worst.value[c];
            errors[c] += left.error[c] + right.error[c] - worst.error[c];
        }
        heap.push(left);
        heap.push(right);
    }
    // fresh sums, free of the incremental updates' drift
    let (values, error_estimates) = totals(&heap);
    Ok(PairIntegral {
        values,
        error_estimates,
        panels: heap.len(),
    })
}

/// Scalar convenience wrapper around [`integrate_pair`].
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    rel_tol: f64,
    max_panels: usize,
) -> Result<(f64, f64)> {
    let r = integrate_pair(|x| [f(x), 0.0], a, b, initial_panels, rel_tol, 0.0, max_panels)?;
    Ok((r.values[0], r.error_estimates[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_degree_29() {
        let rule = gauss_legendre_15();
        for k in 0..=29 {
            let got = rule.integrate(|x| x.powi(k), 0.0, 1.0);
            let want = 1.0 / (k as f64 + 1.0);
            assert!((got - want).abs() < 1e-15, "k = {k}");
        }
        let wsum: f64 = rule.weights().iter().sum();
        assert!((wsum - 2.0).abs() < 1e-15);
    }

    #[test]
    fn known_node() {
        let rule = GaussLegendre::new(15);
        assert!((rule.nodes()[14] - 0.987_992_518_020_485_4).abs() < 1e-15);
        assert!((rule.weights()[14] - 0.030_753_241_996_117_27).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_oscillation_and_peaks() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let r = integrate_pair(|x| [x.sin(), x.cos().powi(2)], 0.0, 100.0 * two_pi, 4, 1e-12, 1e-10, 1 << 16)
            .unwrap();
        assert!(r.values[0].abs() < 1e-9);
        assert!((r.values[1] - 50.0 * two_pi).abs() < 1e-9);
        let (v, _) = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1, 1e-10, 1 << 16).unwrap();
        let want = 2.0 * (1.0 / 1e-2_f64) * (1.0 / 1e-2_f64).atan();
        assert!(((v - want) / want).abs() < 1e-9);
    }

    #[test]
    fn panel_budget_is_enforced() {
        let r = integrate(|x| (1.0 / x).sin(), 1e-9, 1.0, 1, 1e-14, 8);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
