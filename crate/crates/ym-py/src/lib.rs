//! Python bindings: expressions, piecewise functions, Young measures and
//! the verification oracle, exposed as the `ym_py` extension module.
//!
//! Usage from Python:
//!
//! ```text
//! import ym_py
//! pf = ym_py.PiecewiseFunction.example("b")
//! ym = ym_py.compute(pf)
//! ym.density(0.25)            # 2/3
//! ym_py.verify_identity(pf)   # {'pass': True, ...}
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use ym_core::expr::Expr;
use ym_core::measure;
use ym_core::oracle;
use ym_core::oscillation::{self, ExampleParams, ExampleTag, OscillationSpec};
use ym_core::piecewise::{Interval, PiecewiseFunction};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_expr(source: &str) -> PyResult<Expr> {
    Expr::parse(source).map_err(value_error)
}

/// Parsed single-variable expression (the variable may be written x or y).
#[pyclass(name = "Expr", frozen)]
struct PyExpr {
    inner: Expr,
}

#[pymethods]
impl PyExpr {
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        Ok(PyExpr {
            inner: parse_expr(source)?,
        })
    }

    /// Evaluate at x.
    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.evaluate(x).map_err(value_error)
    }

    fn evaluate(&self, x: f64) -> PyResult<f64> {
        self.inner.evaluate(x).map_err(value_error)
    }

    /// Symbolic derivative.
    fn derivative(&self) -> PyExpr {
        PyExpr {
            inner: self.inner.differentiate(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_string())
    }
}

/// Piecewise monotone-or-constant function on a bounded open interval.
#[pyclass(name = "PiecewiseFunction", frozen)]
struct PyPiecewiseFunction {
    inner: PiecewiseFunction,
}

#[pymethods]
impl PyPiecewiseFunction {
    /// Load from the JSON schema (numbers may be exact-fraction strings).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPiecewiseFunction {
            inner: PiecewiseFunction::from_json(text).map_err(value_error)?,
        })
    }

    /// Build a corpus example: tag in "a".."e" with builder parameters.
    #[staticmethod]
    #[pyo3(signature = (tag, a=1.0, b=2.0, n=1, k_max=1000))]
    fn example(tag: &str, a: f64, b: f64, n: u32, k_max: u32) -> PyResult<Self> {
        let tag: ExampleTag = tag.parse().map_err(value_error)?;
        let params = ExampleParams { a, b, n, k_max };
        Ok(PyPiecewiseFunction {
            inner: oscillation::build_example(tag, &params).map_err(value_error)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(value_error)
    }

    fn eval(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(value_error)
    }

    #[getter]
    fn omega(&self) -> (f64, f64) {
        (self.inner.omega().lo(), self.inner.omega().hi())
    }

    #[getter]
    fn k_range(&self) -> (f64, f64) {
        (self.inner.k_range().lo(), self.inner.k_range().hi())
    }

    #[getter]
    fn piece_count(&self) -> usize {
        self.inner.pieces().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "PiecewiseFunction(omega=({}, {}), pieces={})",
            self.inner.omega().lo(),
            self.inner.omega().hi(),
            self.inner.pieces().len()
        )
    }
}

/// Young measure: Dirac atoms plus an absolutely continuous density.
#[pyclass(name = "YoungMeasure", frozen)]
struct PyYoungMeasure {
    inner: measure::YoungMeasure,
}

#[pymethods]
impl PyYoungMeasure {
    /// List of (location, weight) pairs, sorted by location.
    #[getter]
    fn atoms(&self) -> Vec<(f64, f64)> {
        self.inner
            .atoms()
            .iter()
            .map(|a| (a.location, a.weight))
            .collect()
    }

    #[getter]
    fn k_range(&self) -> (f64, f64) {
        (self.inner.k_range().lo(), self.inner.k_range().hi())
    }

    /// Density of the absolutely continuous part at y.
    fn density(&self, y: f64) -> PyResult<f64> {
        self.inner.density_at(y).map_err(value_error)
    }

    /// Cumulative distribution function at y.
    fn cdf(&self, y: f64) -> PyResult<f64> {
        self.inner.cdf(y).map_err(value_error)
    }

    /// ∫ beta dν for a test function given as an expression string.
    fn integrate(&self, beta: &str) -> PyResult<f64> {
        self.inner
            .integrate(&parse_expr(beta)?)
            .map_err(value_error)
    }

    /// Structural total mass (atoms plus segment masses).
    fn total_mass(&self) -> f64 {
        self.inner.total_mass()
    }

    fn __repr__(&self) -> String {
        format!(
            "YoungMeasure(atoms={}, segments={}, k_range=({}, {}))",
            self.inner.atoms().len(),
            self.inner.segments().len(),
            self.inner.k_range().lo(),
            self.inner.k_range().hi()
        )
    }
}

/// Young measure of a validated piecewise function.
#[pyfunction]
fn compute(pf: &PyPiecewiseFunction) -> PyYoungMeasure {
    PyYoungMeasure {
        inner: measure::compute(&pf.inner),
    }
}

/// Pushforward side of the defining identity: (1/|Ω|) ∫ beta(u(x)) dx.
#[pyfunction]
fn pushforward_integral(pf: &PyPiecewiseFunction, beta: &str) -> PyResult<f64> {
    measure::pushforward_integral(&pf.inner, &parse_expr(beta)?).map_err(value_error)
}

/// Check ∫ beta dν = (1/|Ω|) ∫ beta(u(x)) dx for a family of test
/// functions; returns a dict with per-beta checks and the overall verdict.
#[pyfunction]
#[pyo3(signature = (pf, betas=None, tolerance=1e-8))]
fn verify_identity<'py>(
    py: Python<'py>,
    pf: &PyPiecewiseFunction,
    betas: Option<Vec<String>>,
    tolerance: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let betas: Vec<Expr> = match betas {
        None => measure::default_beta_family(),
        Some(sources) => sources
            .iter()
            .map(|s| parse_expr(s))
            .collect::<PyResult<_>>()?,
    };
    let report = measure::verify_identity(&pf.inner, &betas, tolerance).map_err(value_error)?;
    let checks = PyList::empty(py);
    for c in &report.checks {
        let d = PyDict::new(py);
        d.set_item("beta", &c.beta)?;
        d.set_item("lhs", c.lhs)?;
        d.set_item("rhs", c.rhs)?;
        d.set_item("residual", c.residual)?;
        checks.append(d)?;
    }
    let out = PyDict::new(py);
    out.set_item("tolerance", report.tolerance)?;
    out.set_item("max_residual", report.max_residual)?;
    out.set_item("pass", report.pass)?;
    out.set_item("checks", checks)?;
    Ok(out)
}

/// Squeeze `c` copies of a generator on ]0,1[ into ]0,1[.
#[pyfunction]
fn dilate(pf: &PyPiecewiseFunction, c: u32) -> PyResult<PyPiecewiseFunction> {
    let spec = OscillationSpec::new(pf.inner.clone(), c).map_err(value_error)?;
    Ok(PyPiecewiseFunction {
        inner: oscillation::dilate(&spec).map_err(value_error)?,
    })
}

/// Affinely map the domain onto `omega` and the value range onto `k_range`.
#[pyfunction]
fn rescale(
    pf: &PyPiecewiseFunction,
    omega: (f64, f64),
    k_range: (f64, f64),
) -> PyResult<PyPiecewiseFunction> {
    let om = Interval::new(omega.0, omega.1).map_err(value_error)?;
    let kk = Interval::new(k_range.0, k_range.1).map_err(value_error)?;
    Ok(PyPiecewiseFunction {
        inner: oscillation::rescale(&pf.inner, om, kk).map_err(value_error)?,
    })
}

/// Telescoping partial sum n Σ_{k<=k_max} 1/((n+k-1)(n+k)) = k_max/(n+k_max).
#[pyfunction]
fn weight_sum(n: u32, k_max: u64) -> f64 {
    oscillation::weight_sum(n, k_max)
}

/// Sorted values of u on the deterministic n-point midpoint grid.
#[pyfunction]
fn empirical_pushforward(pf: &PyPiecewiseFunction, n_samples: usize) -> PyResult<Vec<f64>> {
    Ok(oracle::empirical_pushforward(&pf.inner, n_samples)
        .map_err(value_error)?
        .values()
        .to_vec())
}

/// One-sample Kolmogorov–Smirnov distance between the midpoint-grid
/// pushforward of `pf` and the measure `ym`.
#[pyfunction]
fn kolmogorov_distance(
    pf: &PyPiecewiseFunction,
    ym: &PyYoungMeasure,
    n_samples: usize,
) -> PyResult<f64> {
    let emp = oracle::empirical_pushforward(&pf.inner, n_samples).map_err(value_error)?;
    oracle::kolmogorov_distance(&emp, &ym.inner).map_err(value_error)
}

/// Both sides of the tensor comparison for alpha(x)·beta(k); they coincide
/// exactly when alpha is constant.
#[pyfunction]
fn tensor_integrals(
    pf: &PyPiecewiseFunction,
    alpha: &str,
    beta: &str,
) -> PyResult<(f64, f64)> {
    oracle::tensor_integrals(&pf.inner, &parse_expr(alpha)?, &parse_expr(beta)?)
        .map_err(value_error)
}

#[pymodule]
fn ym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyPiecewiseFunction>()?;
    m.add_class::<PyYoungMeasure>()?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward_integral, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(dilate, m)?)?;
    m.add_function(wrap_pyfunction!(rescale, m)?)?;
    m.add_function(wrap_pyfunction!(weight_sum, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_pushforward, m)?)?;
    m.add_function(wrap_pyfunction!(kolmogorov_distance, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_integrals, m)?)?;
    Ok(())
}
