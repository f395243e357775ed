//! Python module `minorant`.

use minorant_core::debranges::{self, QuadratureConfig, WeightedIntegralReport};
use minorant_core::extremal::{self, Dimension};
use minorant_core::lp;
use minorant_core::special::{self, Order, ZeroIndex};
use minorant_core::Error;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Overflow { .. } => PyOverflowError::new_err(e.to_string()),
        Error::NonConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for minorant_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn order(nu: f64) -> PyResult<Order> {
    Order::new(nu).py()
}

fn dim(d: u32) -> PyResult<Dimension> {
    Dimension::new(d).py()
}

#[pyfunction]
fn bessel_j(nu: f64, x: f64) -> PyResult<f64> {
    special::bessel_j(order(nu)?, x).py()
}

#[pyfunction]
fn bessel_j_derivative(nu: f64, x: f64) -> PyResult<f64> {
    special::bessel_j_derivative(order(nu)?, x).py()
}

/// `A_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x)`, equal to 1 at the origin.
#[pyfunction]
fn normalized_bessel(nu: f64, x: f64) -> PyResult<f64> {
    special::normalized_bessel(order(nu)?, x).py()
}

#[pyfunction]
fn bessel_zero(nu: f64, n: usize) -> PyResult<f64> {
    special::bessel_zero(order(nu)?, ZeroIndex::new(n).py()?).py()
}

#[pyfunction]
fn bessel_zeros(nu: f64, count: usize) -> PyResult<Vec<f64>> {
    special::bessel_zeros(order(nu)?, count).py()
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    special::gamma(x).py()
}

#[pyfunction]
fn ln_gamma(x: f64) -> PyResult<f64> {
    special::ln_gamma(x).py()
}

#[pyfunction]
fn a_fn(nu: f64, x: f64) -> PyResult<f64> {
    debranges::a_fn(order(nu)?, x).py()
}

#[pyfunction]
fn b_fn(nu: f64, x: f64) -> PyResult<f64> {
    debranges::b_fn(order(nu)?, x).py()
}

#[pyfunction]
fn weight(nu: f64, x: f64) -> PyResult<f64> {
    debranges::weight(order(nu)?, x).py()
}

#[pyfunction]
fn a_constant(nu: f64) -> PyResult<f64> {
    Ok(debranges::a_constant(order(nu)?))
}

#[pyfunction]
fn test_function_gn(n: u32, x: f64) -> f64 {
    debranges::test_function_gn(n, x)
}

#[pyfunction]
fn minimal_n(nu: f64) -> PyResult<u32> {
    Ok(debranges::minimal_n(order(nu)?))
}

#[pyclass(name = "IdentityReport", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyReport {
    lhs: f64,
    rhs: f64,
    relative_error: f64,
    truncation_t: f64,
    tail_bound: f64,
    tolerance: f64,
    passed: bool,
}

impl From<WeightedIntegralReport> for PyReport {
    fn from(r: WeightedIntegralReport) -> Self {
        PyReport {
            lhs: r.lhs,
            rhs: r.rhs,
            relative_error: r.relative_error,
            truncation_t: r.truncation_t,
            tail_bound: r.tail_bound,
            tolerance: r.tolerance,
            passed: r.passed,
        }
    }
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "IdentityReport(lhs={}, rhs={}, relative_error={:e}, T={}, passed={})",
            self.lhs, self.rhs, self.relative_error, self.truncation_t, self.passed
        )
    }
}

fn quad_config(nu: Order, n: u32, t: Option<f64>, tol: f64) -> PyResult<QuadratureConfig> {
    match t {
        Some(t) => QuadratureConfig::new(t, tol, debranges::MAX_SUBDIVISIONS).py(),
        None => QuadratureConfig::for_test_function(nu, n, tol).py(),
    }
}

/// `T=None` picks the truncation from the decay of `G_n^2`.
#[pyfunction]
#[pyo3(signature = (nu, n, t=None, tol=1e-6))]
fn verify_isometry(py: Python<'_>, nu: f64, n: u32, t: Option<f64>, tol: f64) -> PyResult<PyReport> {
    let o = order(nu)?;
    let cfg = quad_config(o, n, t, tol)?;
    py.detach(|| debranges::verify_isometry(o, n, cfg)).py().map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (nu, n, c=debranges::DEFAULT_SCALE_C, t=None, tol=1e-6))]
fn verify_integral_identity(
    py: Python<'_>,
    nu: f64,
    n: u32,
    c: f64,
    t: Option<f64>,
    tol: f64,
) -> PyResult<PyReport> {
    let o = order(nu)?;
    let cfg = quad_config(o, n, t, tol)?;
    py.detach(|| debranges::verify_integral_identity(o, n, c, cfg))
        .py()
        .map(Into::into)
}

#[pyfunction]
fn surface_area(d: u32) -> PyResult<f64> {
    Ok(extremal::surface_area(dim(d)?))
}

#[pyfunction]
fn ball_volume(d: u32) -> PyResult<f64> {
    Ok(extremal::ball_volume(dim(d)?))
}

#[pyfunction]
fn critical_radius(d: u32) -> PyResult<f64> {
    extremal::critical_radius(dim(d)?).py()
}

#[pyfunction]
fn critical_radius_asymptotic(d: u32) -> PyResult<f64> {
    Ok(extremal::critical_radius_asymptotic(dim(d)?))
}

#[pyfunction]
fn window(d: u32) -> PyResult<(f64, f64)> {
    extremal::window(dim(d)?).py()
}

#[pyfunction]
fn gamma_factor(d: u32, r: f64) -> PyResult<f64> {
    extremal::gamma_factor(dim(d)?, r).py()
}

#[pyfunction]
fn lambda_minus(d: u32, r: f64) -> PyResult<f64> {
    extremal::lambda_minus(dim(d)?, r).py()
}

/// Returns `(value, regime)`; `value` is `None` outside the window.
#[pyfunction]
fn beta(d: u32, r: f64) -> PyResult<(Option<f64>, &'static str)> {
    let b = extremal::beta_closed_form(dim(d)?, r).py()?;
    Ok((b.value, b.regime.as_str()))
}

#[pyfunction]
fn linear_slope(d: u32) -> PyResult<f64> {
    extremal::linear_slope(dim(d)?).py()
}

#[pyfunction]
fn beta_linear_approx(d: u32, r: f64) -> PyResult<f64> {
    extremal::beta_linear_approx(dim(d)?, r).py()
}

#[pyclass(name = "LpConfig", get_all, set_all, from_py_object)]
#[derive(Clone)]
struct PyLpConfig {
    m: usize,
    samples_per_unit: usize,
    coeff_bound: f64,
    check_refinement: usize,
    max_iterations: usize,
}

impl From<&PyLpConfig> for lp::LpConfig {
    fn from(c: &PyLpConfig) -> Self {
        lp::LpConfig {
            m: c.m,
            samples_per_unit: c.samples_per_unit,
            coeff_bound: c.coeff_bound,
            check_refinement: c.check_refinement,
            max_iterations: c.max_iterations,
        }
    }
}

impl From<lp::LpConfig> for PyLpConfig {
    fn from(c: lp::LpConfig) -> Self {
        PyLpConfig {
            m: c.m,
            samples_per_unit: c.samples_per_unit,
            coeff_bound: c.coeff_bound,
            check_refinement: c.check_refinement,
            max_iterations: c.max_iterations,
        }
    }
}

#[pymethods]
impl PyLpConfig {
    #[new]
    #[pyo3(signature = (m=None, samples_per_unit=None, coeff_bound=None, check_refinement=None, max_iterations=None))]
    fn new(
        m: Option<usize>,
        samples_per_unit: Option<usize>,
        coeff_bound: Option<f64>,
        check_refinement: Option<usize>,
        max_iterations: Option<usize>,
    ) -> PyResult<Self> {
        let d = lp::LpConfig::default();
        let cfg = lp::LpConfig {
            m: m.unwrap_or(d.m),
            samples_per_unit: samples_per_unit.unwrap_or(d.samples_per_unit),
            coeff_bound: coeff_bound.unwrap_or(d.coeff_bound),
            check_refinement: check_refinement.unwrap_or(d.check_refinement),
            max_iterations: max_iterations.unwrap_or(d.max_iterations),
        };
        cfg.validate().py()?;
        Ok(cfg.into())
    }

    fn __repr__(&self) -> String {
        format!(
            "LpConfig(m={}, samples_per_unit={}, coeff_bound={}, check_refinement={}, max_iterations={})",
            self.m, self.samples_per_unit, self.coeff_bound, self.check_refinement, self.max_iterations
        )
    }
}

#[pyclass(name = "LpSolution", frozen)]
struct PyLpSolution {
    inner: lp::LpSolution,
    d: Dimension,
}

#[pymethods]
impl PyLpSolution {
    #[getter]
    fn objective(&self) -> f64 {
        self.inner.objective
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.as_str()
    }

    #[getter]
    fn max_violation(&self) -> f64 {
        self.inner.max_violation
    }

    #[getter]
    fn extent(&self) -> f64 {
        self.inner.extent
    }

    #[getter]
    fn constraints(&self) -> usize {
        self.inner.constraints
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.inner.profile.nodes().to_vec()
    }

    #[getter]
    fn coefficients(&self) -> Vec<f64> {
        self.inner.profile.coefficients().to_vec()
    }

    /// The minorant at radius `x`.
    fn __call__(&self, x: f64) -> PyResult<f64> {
        lp::evaluate_minorant(&self.inner.profile, self.d, x).py()
    }

    fn __repr__(&self) -> String {
        format!(
            "LpSolution(objective={}, status={}, max_violation={:e})",
            self.inner.objective,
            self.inner.status.as_str(),
            self.inner.max_violation
        )
    }
}

#[pyfunction]
#[pyo3(signature = (d, r, config=None))]
fn solve_lp(py: Python<'_>, d: u32, r: f64, config: Option<PyLpConfig>) -> PyResult<PyLpSolution> {
    let d = dim(d)?;
    let cfg = config.as_ref().map(Into::into).unwrap_or_default();
    let inner = py.detach(|| lp::solve_lp(d, r, cfg)).py()?;
    Ok(PyLpSolution { inner, d })
}

/// Rows of `(m, objective, max_violation, status)`, `m` doubling per rung.
#[pyfunction]
#[pyo3(signature = (d, r, config=None, rungs=3))]
fn convergence_study(
    py: Python<'_>,
    d: u32,
    r: f64,
    config: Option<PyLpConfig>,
    rungs: usize,
) -> PyResult<Vec<(usize, f64, f64, &'static str)>> {
    let d = dim(d)?;
    let base: lp::LpConfig = config.as_ref().map(Into::into).unwrap_or_default();
    let rows = py.detach(|| lp::convergence_study(d, r, &base.ladder(rungs))).py()?;
    Ok(rows
        .into_iter()
        .map(|row| (row.config.m, row.objective, row.max_violation, row.status.as_str()))
        .collect())
}

#[pymodule]
fn minorant(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_bessel, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_zero, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(ln_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(a_fn, m)?)?;
    m.add_function(wrap_pyfunction!(b_fn, m)?)?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(a_constant, m)?)?;
    m.add_function(wrap_pyfunction!(test_function_gn, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_n, m)?)?;
    m.add_function(wrap_pyfunction!(verify_isometry, m)?)?;
    m.add_function(wrap_pyfunction!(verify_integral_identity, m)?)?;
    m.add_function(wrap_pyfunction!(surface_area, m)?)?;
    m.add_function(wrap_pyfunction!(ball_volume, m)?)?;
    m.add_function(wrap_pyfunction!(critical_radius, m)?)?;
    m.add_function(wrap_pyfunction!(critical_radius_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(window, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_factor, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_minus, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(linear_slope, m)?)?;
    m.add_function(wrap_pyfunction!(beta_linear_approx, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_study, m)?)?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyLpConfig>()?;
    m.add_class::<PyLpSolution>()?;
    Ok(())
}
