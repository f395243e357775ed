//! Bounded-variable primal simplex on a dense tableau.
//!
//! Solves `max c.x` subject to `A x <= b`, `l <= x <= u`, starting from the
//! point `x = 0`, which must be feasible (`b >= 0`, `l <= 0 <= u`). One slack
//! per row starts basic; structural variables start nonbasic at zero even
//! when zero is strictly between their bounds.
//!
//! Pricing is Dantzig's largest reduced cost. Among rows tied in the ratio
//! test the largest pivot wins, since degenerate ties between nearly
//! parallel rows otherwise drive the pivots towards zero. After a long run
//! of degenerate steps the solver switches to Bland's rule until the
//! objective moves again. Every tie is broken by lowest index, so runs are
//! deterministic.

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

const COST_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const RATIO_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexStatus {
    Optimal,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub status: SimplexStatus,
    /// Structural variables at the final vertex.
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct BoundedLp {
    pub a: DenseMatrix,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl BoundedLp {
    fn validate(&self) -> Result<()> {
        let (m, n) = (self.a.rows(), self.a.cols());
        if self.b.len() != m || self.c.len() != n || self.lower.len() != n || self.upper.len() != n {
            return Err(Error::Config("inconsistent LP dimensions".into()));
        }
        if self.b.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Config("right-hand side must be >= 0".into()));
        }
        if self
            .lower
            .iter()
            .zip(&self.upper)
            .any(|(&l, &u)| !(l <= 0.0 && u >= 0.0))
        {
            return Err(Error::Config("bounds must contain 0".into()));
        }
        if self.a.as_slice().iter().chain(&self.c).any(|v| !v.is_finite()) {
            return Err(Error::Config("LP data must be finite".into()));
        }
        Ok(())
    }

    /// Runs the simplex for at most `max_iterations` pivots or bound flips.
    pub fn solve(&self, max_iterations: usize) -> Result<SimplexOutcome> {
        self.validate()?;
        Tableau::new(self).run(max_iterations)
    }
}

struct Tableau {
    /// `B^-1 N`, one row per basic variable, one column per nonbasic slot.
    d: DenseMatrix,
    /// Current values of the basic variables.
    beta: Vec<f64>,
    /// Variable index held in each basic row.
    basic: Vec<usize>,
    /// Variable index held in each nonbasic slot.
    nonbasic: Vec<usize>,
    /// Values of the nonbasic variables, by slot.
    value_n: Vec<f64>,
    reduced: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    n_struct: usize,
}

enum Step {
    Flip,
    Pivot(usize, f64),
}

impl Tableau {
    fn new(lp: &BoundedLp) -> Self {
        let (m, n) = (lp.a.rows(), lp.a.cols());
        let mut lower = lp.lower.clone();
        let mut upper = lp.upper.clone();
        lower.extend(std::iter::repeat_n(0.0, m));
        upper.extend(std::iter::repeat_n(f64::INFINITY, m));
        let mut cost = lp.c.clone();
        cost.extend(std::iter::repeat_n(0.0, m));
        Tableau {
            d: lp.a.clone(),
            beta: lp.b.clone(),
            basic: (n..n + m).collect(),
            nonbasic: (0..n).collect(),
            value_n: vec![0.0; n],
            reduced: lp.c.clone(),
            lower,
            upper,
            cost,
            n_struct: n,
        }
    }

    /// Improving nonbasic variable as (slot, direction): the largest
    /// reduced cost, or the lowest index under `bland`.
    fn entering(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for (slot, &var) in self.nonbasic.iter().enumerate() {
            let dk = self.reduced[slot];
            let v = self.value_n[slot];
            let dir = if dk > COST_TOL && v < self.upper[var] {
                1.0
            } else if dk < -COST_TOL && v > self.lower[var] {
                -1.0
            } else {
                continue;
            };
            let better = match best {
                None => true,
                Some((bs, bv, _)) if bland => var < bv || (var == bv && slot < bs),
                Some((bs, bv, _)) => {
                    let (a, b) = (dk.abs(), self.reduced[bs].abs());
                    a > b || (a == b && var < bv)
                }
            };
            if better {
                best = Some((slot, var, dir));
            }
        }
        best.map(|(slot, _, dir)| (slot, dir))
    }

    /// Ratio test. Rows within `RATIO_TIE` of the minimum ratio tie; ties go
    /// to the largest pivot, or to the lowest variable index under `bland`.
    fn ratio_test(&self, slot: usize, dir: f64, bland: bool) -> Option<(f64, Step)> {
        let var = self.nonbasic[slot];
        let v = self.value_n[slot];
        let own = if dir > 0.0 { self.upper[var] - v } else { v - self.lower[var] };
        let mut ratios = Vec::new();
        let mut t_min = f64::INFINITY;
        for (row, &bv) in self.basic.iter().enumerate() {
            let rate = -dir * self.d[(row, slot)];
            let (t, bound) = if rate < -PIVOT_TOL {
                (((self.beta[row] - self.lower[bv]) / -rate).max(0.0), self.lower[bv])
            } else if rate > PIVOT_TOL && self.upper[bv].is_finite() {
                (((self.upper[bv] - self.beta[row]) / rate).max(0.0), self.upper[bv])
            } else {
                continue;
            };
            t_min = t_min.min(t);
            ratios.push((row, t, rate.abs(), bound));
        }
        if own <= t_min {
            return own.is_finite().then_some((own, Step::Flip));
        }
        let mut best: Option<(usize, f64, f64)> = None;
        for &(row, t, mag, bound) in &ratios {
            if t > t_min + RATIO_TIE {
                continue;
            }
            let better = match best {
                None => true,
                Some((br, bm, _)) => {
                    let (idx, bidx) = (self.basic[row], self.basic[br]);
                    if bland {
                        idx < bidx
                    } else {
                        mag > bm || (mag == bm && idx < bidx)
                    }
                }
            };
            if better {
                best = Some((row, mag, bound));
            }
        }
        let (row, _, bound) = best.expect("a finite minimum ratio has a row");
        Some((t_min, Step::Pivot(row, bound)))
    }

    fn run(mut self, max_iterations: usize) -> Result<SimplexOutcome> {
        let mut iterations = 0;
        let mut degenerate_run = 0usize;
        let stall_limit = 5 * (self.nonbasic.len() + self.basic.len());
        let status = loop {
            let bland = degenerate_run > stall_limit;
            let Some((slot, dir)) = self.entering(bland) else {
                break SimplexStatus::Optimal;
            };
            if iterations >= max_iterations {
                break SimplexStatus::IterationLimit;
            }
            iterations += 1;
            let Some((t, step)) = self.ratio_test(slot, dir, bland) else {
                break SimplexStatus::Unbounded;
            };
            if t > 0.0 {
                degenerate_run = 0;
            } else {
                degenerate_run += 1;
            }
            let delta = dir * t;
            for row in 0..self.beta.len() {
                self.beta[row] -= self.d[(row, slot)] * delta;
            }
            let entering_value = self.value_n[slot] + delta;
            match step {
                Step::Flip => self.value_n[slot] = entering_value,
                Step::Pivot(row, bound) => self.pivot(row, slot, entering_value, bound),
            }
        };
        let mut x = vec![0.0; self.n_struct];
        for (slot, &var) in self.nonbasic.iter().enumerate() {
            if var < self.n_struct {
                x[var] = self.value_n[slot];
            }
        }
        for (row, &var) in self.basic.iter().enumerate() {
            if var < self.n_struct {
                x[var] = self.beta[row];
            }
        }
        let objective = x.iter().zip(&self.cost).map(|(a, b)| a * b).sum();
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::NonConvergence {
                method: "bounded simplex",
                iterations,
            });
        }
        Ok(SimplexOutcome {
            status,
            x,
            objective,
            iterations,
        })
    }

    fn pivot(&mut self, r: usize, k: usize, entering_value: f64, leaving_value: f64) {
        let cols = self.d.cols();
        let p = self.d[(r, k)];
        let pivot_row: Vec<f64> = self.d.row(r).iter().map(|v| v / p).collect();
        for i in 0..self.d.rows() {
            if i == r {
                continue;
            }
            let f = self.d[(i, k)];
            if f == 0.0 {
                continue;
            }
            let row = self.d.row_mut(i);
            for j in 0..cols {
                row[j] -= f * pivot_row[j];
            }
            row[k] = -f / p;
        }
        {
            let row = self.d.row_mut(r);
            row.copy_from_slice(&pivot_row);
            row[k] = 1.0 / p;
        }
        let dk = self.reduced[k];
        for j in 0..cols {
            self.reduced[j] -= dk * pivot_row[j];
        }
        self.reduced[k] = -dk / p;

        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[k]);
        self.beta[r] = entering_value;
        self.value_n[k] = leaving_value;
    }
}
