//! Discretized extremal problem: a radial Fourier profile sampled at
//! Fourier-Bessel frequencies, pointwise minorant constraints on a uniform
//! spatial grid, and the integral `F^(0) = g_0` as objective.
//!
//! With `R = j_(d/2, m) / (2 pi r)` and `s_j = j_(d/2, j) / (2 pi R)`, the
//! functions `A_(d/2-1)(2 pi s_j |x|)` are orthogonal on the ball of radius
//! `R`, only the `j = 0` term has nonzero mean, and the profile reaches
//! exactly `s_m = r`. The model is faithful on `|x| <= R`, which is where
//! constraints are imposed and checked.

use rayon::prelude::*;

use super::matrix::DenseMatrix;
use super::simplex::{BoundedLp, SimplexStatus};
use crate::error::{domain, Error, Result};
use crate::extremal::{surface_area, Dimension};
use crate::special::{bessel_zeros, normalized_bessel, Order};

use std::f64::consts::PI;

/// Discretized radial profile of `F^`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    nodes: Vec<f64>,
    quad_weights: Vec<f64>,
    coefficients: Vec<f64>,
}

impl RadialProfile {
    pub fn new(nodes: Vec<f64>, quad_weights: Vec<f64>, coefficients: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != quad_weights.len() || nodes.len() != coefficients.len() {
            return Err(Error::Config("profile sequences must be non-empty and of equal length".into()));
        }
        if nodes[0] != 0.0 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("profile nodes must start at 0 and increase".into()));
        }
        if quad_weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::Config("quadrature weights must be positive".into()));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::Config("coefficients must be finite".into()));
        }
        Ok(RadialProfile {
            nodes,
            quad_weights,
            coefficients,
        })
    }

    /// Fourier-Bessel nodes and weights for support radius `r` with `m`
    /// nonzero frequencies; coefficients start at zero.
    pub fn fourier_bessel(d: Dimension, r: f64, m: usize) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(domain("RadialProfile::fourier_bessel", format!("r must be > 0, got {r}")));
        }
        if m == 0 {
            return Err(Error::Config("at least one nonzero frequency is needed".into()));
        }
        let nu = d.order();
        let zeros = bessel_zeros(nu.succ(), m)?;
        let big_r = zeros[m - 1] / (2.0 * PI * r);
        let norm = surface_area(d) * big_r.powf(d.as_f64());
        let mut nodes = Vec::with_capacity(m + 1);
        let mut weights = Vec::with_capacity(m + 1);
        nodes.push(0.0);
        weights.push(d.as_f64() / norm);
        for (j, &z) in zeros.iter().enumerate() {
            nodes.push(if j + 1 == m { r } else { z / (2.0 * PI * big_r) });
            let a = normalized_bessel(nu, z)?;
            weights.push(2.0 / (norm * a * a));
        }
        RadialProfile::new(nodes, weights, vec![0.0; m + 1])
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn quad_weights(&self) -> &[f64] {
        &self.quad_weights
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn with_coefficients(&self, coefficients: Vec<f64>) -> Result<Self> {
        RadialProfile::new(self.nodes.clone(), self.quad_weights.clone(), coefficients)
    }

    /// Largest frequency, the support radius of `F^`.
    pub fn support_radius(&self) -> f64 {
        *self.nodes.last().expect("non-empty")
    }

    /// Radius `R` of the ball on which the frequencies are orthogonal,
    /// recovered from `w_0 = d / (|S| R^d)`.
    pub fn extent(&self, d: Dimension) -> f64 {
        (d.as_f64() / (surface_area(d) * self.quad_weights[0])).powf(1.0 / d.as_f64())
    }
}

/// `K[i][j] = w_j A_(d/2-1)(2 pi s_j x_i)`, so that `F(x_i) = (K g)_i`.
pub fn kernel_matrix(d: Dimension, nodes: &[f64], weights: &[f64], x_nodes: &[f64]) -> Result<DenseMatrix> {
    if nodes.len() != weights.len() {
        return Err(Error::Config("nodes and weights differ in length".into()));
    }
    let nu = d.order();
    let cols = nodes.len();
    let mut data = vec![0.0; x_nodes.len() * cols];
    if cols > 0 {
        data.par_chunks_mut(cols)
            .zip(x_nodes.par_iter())
            .try_for_each(|(row, &x)| fill_row(nu, nodes, weights, x, row))?;
    }
    Ok(DenseMatrix::from_row_major(x_nodes.len(), cols, data))
}

fn fill_row(nu: Order, nodes: &[f64], weights: &[f64], x: f64, row: &mut [f64]) -> Result<()> {
    let x = x.abs();
    for ((out, &s), &w) in row.iter_mut().zip(nodes).zip(weights) {
        *out = w * normalized_bessel(nu, 2.0 * PI * s * x)?;
    }
    Ok(())
}

/// `F(x) = sum_j w_j g_j A_(d/2-1)(2 pi s_j |x|)`.
pub fn evaluate_minorant(profile: &RadialProfile, d: Dimension, x: f64) -> Result<f64> {
    let nu = d.order();
    let x = x.abs();
    let mut acc = 0.0;
    for ((&s, &w), &g) in profile.nodes.iter().zip(&profile.quad_weights).zip(&profile.coefficients) {
        if g != 0.0 {
            acc += w * g * normalized_bessel(nu, 2.0 * PI * s * x)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpConfig {
    /// Number of nonzero frequencies.
    pub m: usize,
    /// Spatial constraint points per unit length.
    pub samples_per_unit: usize,
    /// Box bound `|g_j| <= M`.
    pub coeff_bound: f64,
    /// Refinement factor of the post-hoc feasibility grid.
    pub check_refinement: usize,
    pub max_iterations: usize,
}

impl Default for LpConfig {
    fn default() -> Self {
        LpConfig {
            m: 128,
            samples_per_unit: 16,
            coeff_bound: 100.0,
            check_refinement: 8,
            max_iterations: 200_000,
        }
    }
}

impl LpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 16 {
            return Err(Error::Config(format!("m must be >= 16, got {}", self.m)));
        }
        if self.samples_per_unit < 8 {
            return Err(Error::Config(format!(
                "samples_per_unit must be >= 8, got {}",
                self.samples_per_unit
            )));
        }
        if !(self.coeff_bound > 0.0 && self.coeff_bound.is_finite()) {
            return Err(Error::Config(format!("coeff_bound must be > 0, got {}", self.coeff_bound)));
        }
        if self.check_refinement < 2 {
            return Err(Error::Config(format!(
                "check_refinement must be >= 2, got {}",
                self.check_refinement
            )));
        }
        Ok(())
    }

    /// `rungs` configs, doubling `m` at each step.
    pub fn ladder(self, rungs: usize) -> Vec<LpConfig> {
        (0..rungs)
            .map(|i| LpConfig {
                m: self.m << i,
                ..self
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    IterationLimit,
    UnboundedRelaxation,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::IterationLimit => "iteration_limit",
            LpStatus::UnboundedRelaxation => "unbounded_relaxation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// Estimate of `beta(d, r)`.
    pub objective: f64,
    pub profile: RadialProfile,
    pub status: LpStatus,
    /// `max(F - 1_B)` over the refined grid on `[0, R]`, floored at 0.
    pub max_violation: f64,
    /// The same quantity on the constraint grid itself.
    pub training_violation: f64,
    pub extent: f64,
    pub constraints: usize,
    pub iterations: usize,
}

fn indicator(x: f64) -> f64 {
    // the sphere itself is constrained from the outside
    if x < 1.0 {
        1.0
    } else {
        0.0
    }
}

fn grid(extent: f64, per_unit: usize) -> Vec<f64> {
    let n = (extent * per_unit as f64).floor() as usize;
    (0..=n).map(|i| i as f64 / per_unit as f64).collect()
}

fn violation(k: &DenseMatrix, g: &[f64], xs: &[f64]) -> f64 {
    k.mul_vec(g)
        .iter()
        .zip(xs)
        .map(|(f, &x)| f - indicator(x))
        .fold(0.0, f64::max)
}

/// Maximizes `g_0` subject to `F(x_i) <= 1_B(x_i)` on the grid and
/// `|g_j| <= M`.
pub fn solve_lp(d: Dimension, r: f64, cfg: LpConfig) -> Result<LpSolution> {
    cfg.validate()?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain("solve_lp", format!("r must be finite and > 0, got {r}")));
    }
    let min_k = (4.0 * r).ceil() as usize;
    if cfg.samples_per_unit < min_k {
        return Err(Error::Config(format!(
            "samples_per_unit must be >= 4r = {min_k} to resolve the highest frequency"
        )));
    }
    let base = RadialProfile::fourier_bessel(d, r, cfg.m)?;
    let extent = base.extent(d);
    let xs = grid(extent, cfg.samples_per_unit);
    let kmat = kernel_matrix(d, &base.nodes, &base.quad_weights, &xs)?;
    let n = base.nodes.len();
    // solve for h_j = w_j g_j so that the tableau entries are O(1)
    let w = &base.quad_weights;
    let unit = vec![1.0; n];
    let scaled = kernel_matrix(d, &base.nodes, &unit, &xs)?;
    let mut c = vec![0.0; n];
    c[0] = 1.0;
    let lp = BoundedLp {
        a: scaled,
        b: xs.iter().map(|&x| indicator(x)).collect(),
        c,
        lower: w.iter().map(|wj| -cfg.coeff_bound * wj).collect(),
        upper: w.iter().map(|wj| cfg.coeff_bound * wj).collect(),
    };
    let mut out = lp.solve(cfg.max_iterations)?;
    for (x, wj) in out.x.iter_mut().zip(w) {
        *x /= wj;
    }
    let at_box = out
        .x
        .iter()
        .any(|g| g.abs() >= cfg.coeff_bound * (1.0 - 1e-9));
    let status = match out.status {
        SimplexStatus::Unbounded => LpStatus::UnboundedRelaxation,
        SimplexStatus::IterationLimit => LpStatus::IterationLimit,
        SimplexStatus::Optimal if at_box => LpStatus::UnboundedRelaxation,
        SimplexStatus::Optimal => LpStatus::Optimal,
    };
    let training_violation = violation(&kmat, &out.x, &xs);
    let fine = grid(extent, cfg.samples_per_unit * cfg.check_refinement);
    let kfine = kernel_matrix(d, &base.nodes, &base.quad_weights, &fine)?;
    let max_violation = violation(&kfine, &out.x, &fine);
    Ok(LpSolution {
        objective: out.x[0],
        profile: base.with_coefficients(out.x)?,
        status,
        max_violation,
        training_violation,
        extent,
        constraints: xs.len(),
        iterations: out.iterations,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub config: LpConfig,
    pub objective: f64,
    pub max_violation: f64,
    pub status: LpStatus,
}

/// Solves every rung of `ladder` (in parallel) and reports them in order.
pub fn convergence_study(d: Dimension, r: f64, ladder: &[LpConfig]) -> Result<Vec<StudyRow>> {
    if ladder.len() < 3 {
        return Err(Error::Config(format!(
            "a convergence study needs at least 3 rungs, got {}",
            ladder.len()
        )));
    }
    ladder
        .par_iter()
        .map(|&cfg| {
            let s = solve_lp(d, r, cfg)?;
            Ok(StudyRow {
                config: cfg,
                objective: s.objective,
                max_violation: s.max_violation,
                status: s.status,
            })
        })
        .collect()
}
