//! Python bindings for the `dehnfill` crate.
//!
//! Slopes and cusp shapes are exposed as classes; reports come back as
//! plain dicts and lists with the same field names as the JSON output of
//! the command-line tool.

use dehnfill::cusp::CuspShape;
use dehnfill::drilling::{self, FillingParams, ReportOptions};
use dehnfill::slope::{self, Slope};
use dehnfill::{fibonacci, tunnel, verify};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

fn value_error(e: dehnfill::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// An unoriented slope `p·α + q·β`, stored with `q > 0` (or `1/0`).
#[pyclass(name = "Slope", module = "dehnfill", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySlope {
    inner: Slope,
}

#[pymethods]
impl PySlope {
    #[new]
    fn new(p: BigInt, q: BigInt) -> PyResult<Self> {
        Ok(PySlope {
            inner: Slope::new(p, q).map_err(value_error)?,
        })
    }

    /// Parses `"p/q"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PySlope {
            inner: text.parse().map_err(value_error)?,
        })
    }

    #[getter]
    fn p(&self) -> BigInt {
        self.inner.p().clone()
    }

    #[getter]
    fn q(&self) -> BigInt {
        self.inner.q().clone()
    }

    fn farey_partner(&self) -> Self {
        PySlope {
            inner: self.inner.farey_partner(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Slope({}, {})", self.inner.p(), self.inner.q())
    }
}

impl From<Slope> for PySlope {
    fn from(inner: Slope) -> Self {
        PySlope { inner }
    }
}

/// Translation lattice of a horospherical cusp torus.
#[pyclass(name = "CuspShape", module = "dehnfill", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCuspShape {
    inner: CuspShape,
}

#[pymethods]
impl PyCuspShape {
    #[new]
    #[pyo3(signature = (t_alpha, t_beta, uncertainty = 0.0))]
    fn new(t_alpha: Complex64, t_beta: Complex64, uncertainty: f64) -> PyResult<Self> {
        let inner = CuspShape::new(t_alpha, t_beta)
            .and_then(|c| c.with_uncertainty(uncertainty))
            .map_err(value_error)?;
        Ok(PyCuspShape { inner })
    }

    /// `"v3227_T0"` or `"v3227_T1"`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(PyCuspShape {
            inner: CuspShape::builtin(name).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCuspShape {
            inner: CuspShape::from_json(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn t_alpha(&self) -> Complex64 {
        self.inner.t_alpha()
    }

    #[getter]
    fn t_beta(&self) -> Complex64 {
        self.inner.t_beta()
    }

    #[getter]
    fn uncertainty(&self) -> f64 {
        self.inner.uncertainty()
    }

    fn area(&self) -> f64 {
        self.inner.area()
    }

    fn slope_length(&self, s: &PySlope) -> f64 {
        self.inner.slope_length(&s.inner)
    }

    /// `(lo, hi)` after widening by the error radius of the translations.
    fn slope_length_bounds(&self, s: &PySlope) -> (f64, f64) {
        let b = self.inner.slope_length_bounds(&s.inner);
        (b.lo(), b.hi())
    }

    fn normalized_length(&self, s: &PySlope) -> f64 {
        self.inner.normalized_length(&s.inner)
    }

    fn waist_size(&self) -> f64 {
        self.inner.waist_size()
    }

    fn shortest_slope(&self) -> (PySlope, f64) {
        let (s, len) = self.inner.shortest_slope();
        (s.into(), len)
    }

    fn shortest_longitude(&self, mu: &PySlope) -> PySlope {
        self.inner.shortest_longitude(&mu.inner).into()
    }

    /// Same torus with every length multiplied by `e^d`.
    fn rescale(&self, d: f64) -> Self {
        PyCuspShape {
            inner: self.inner.rescale(dehnfill::HoroballScale { d }),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pyfunction]
fn intersection_number(a: &PySlope, b: &PySlope) -> BigUint {
    slope::intersection_number(&a.inner, &b.inner)
}

#[pyfunction]
fn is_farey_neighbor(a: &PySlope, b: &PySlope) -> bool {
    slope::is_farey_neighbor(&a.inner, &b.inner)
}

#[pyfunction]
fn farey_neighbors(a: &PySlope, height_bound: u64) -> Vec<PySlope> {
    slope::farey_neighbors(&a.inner, height_bound).into_iter().map(PySlope::from).collect()
}

#[pyfunction]
fn farey_walk(start: &PySlope, steps: u64, seed: u64) -> PySlope {
    slope::farey_walk(&start.inner, steps, seed).into()
}

#[pyfunction]
fn fibonacci_number(n: u64) -> BigUint {
    fibonacci::fibonacci(n)
}

#[pyfunction]
fn core_length_bound(l_mu: f64) -> PyResult<f64> {
    drilling::core_length_bound(l_mu).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (ell_mu_eps, j = drilling::J_DEFAULT))]
fn tube_radius_lower(ell_mu_eps: f64, j: f64) -> PyResult<f64> {
    drilling::tube_radius_lower(ell_mu_eps, j).map_err(value_error)
}

/// `(h, p)` for a core geodesic of length at most `core_len`.
#[pyfunction]
fn h_and_p_bounds(core_len: f64) -> PyResult<(f64, f64)> {
    drilling::h_and_p_bounds(core_len).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (ell_mu, ell_lambda, l_mu, target_length = 0.0, threshold = None))]
fn genericity_report<'py>(
    py: Python<'py>,
    ell_mu: f64,
    ell_lambda: f64,
    l_mu: f64,
    target_length: f64,
    threshold: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let params = FillingParams::from_max_cusp(ell_mu, ell_lambda, l_mu);
    let options = ReportOptions {
        target_length,
        drilling_threshold: threshold.unwrap_or_else(drilling::drilling_floor),
    };
    serialize(py, &drilling::genericity_report(&params, &options))
}

#[pyfunction]
#[pyo3(signature = (ell_lambda, asymptotic = false, ell_mu = None))]
fn estimate_tunnel<'py>(py: Python<'py>, ell_lambda: f64, asymptotic: bool, ell_mu: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
    let mode = if asymptotic {
        tunnel::Mode::Asymptotic
    } else {
        tunnel::Mode::Quantified
    };
    let est = match ell_mu {
        Some(mu) => tunnel::estimate_tunnel_with_meridian(ell_lambda, mu, mode),
        None => tunnel::estimate_tunnel(ell_lambda, mode),
    }
    .map_err(value_error)?;
    serialize(py, &est)
}

/// Every intermediate constant of the quantified estimate.
#[pyfunction]
#[pyo3(signature = (j = drilling::J_DEFAULT))]
fn derive_chain(py: Python<'_>, j: f64) -> PyResult<Bound<'_, PyAny>> {
    serialize(py, &tunnel::derive_chain(j).map_err(value_error)?)
}

#[pyfunction]
fn tunnel_bracket(py: Python<'_>, n: u64) -> PyResult<Bound<'_, PyAny>> {
    serialize(py, &fibonacci::tunnel_bracket(n).map_err(value_error)?)
}

#[pyfunction]
fn family_report(py: Python<'_>, n: u64) -> PyResult<Bound<'_, PyAny>> {
    serialize(py, &fibonacci::family_report(n).map_err(value_error)?)
}

#[pyfunction]
fn family_table(py: Python<'_>, n_from: u64, n_to: u64) -> PyResult<Bound<'_, PyAny>> {
    serialize(py, &fibonacci::family_table(n_from, n_to).map_err(value_error)?)
}

#[pyfunction]
fn s3_embedding_matrix(n: u64) -> PyResult<Vec<Vec<BigInt>>> {
    let m = fibonacci::s3_embedding_matrix(n).map_err(value_error)?;
    Ok(m.into_iter().map(|row| row.to_vec()).collect())
}

#[pyfunction]
#[pyo3(signature = (trials = 10_000, seed = 0))]
fn verify_trig(py: Python<'_>, trials: u64, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    serialize(py, &verify::verify_trig(trials, seed))
}

#[pymodule]
#[pyo3(name = "dehnfill")]
fn dehnfill_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySlope>()?;
    m.add_class::<PyCuspShape>()?;
    m.add_function(wrap_pyfunction!(intersection_number, m)?)?;
    m.add_function(wrap_pyfunction!(is_farey_neighbor, m)?)?;
    m.add_function(wrap_pyfunction!(farey_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(farey_walk, m)?)?;
    m.add_function(wrap_pyfunction!(fibonacci_number, m)?)?;
    m.add_function(wrap_pyfunction!(core_length_bound, m)?)?;
    m.add_function(wrap_pyfunction!(tube_radius_lower, m)?)?;
    m.add_function(wrap_pyfunction!(h_and_p_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(genericity_report, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_tunnel, m)?)?;
    m.add_function(wrap_pyfunction!(derive_chain, m)?)?;
    m.add_function(wrap_pyfunction!(tunnel_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(family_report, m)?)?;
    m.add_function(wrap_pyfunction!(family_table, m)?)?;
    m.add_function(wrap_pyfunction!(s3_embedding_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(verify_trig, m)?)?;
    Ok(())
}
