//! Python bindings for `smeecs`.
//!
//! Build with `cargo build --release -p smeecs-python --features extension-module`
//! and import the resulting shared library as `smeecs_py`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use smeecs::{EvalPath, Sign, StateSpec};

fn to_py_err(e: smeecs::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts `"+"`, `"-"`, `"plus"` or `"minus"`.
pub fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("sign must be '+' or '-' (got {other:?})")),
    }
}

fn sign_arg(s: &str) -> PyResult<Sign> {
    parse_sign(s).map_err(PyValueError::new_err)
}

/// Result of a concurrence evaluation.
#[pyclass(name = "Concurrence", module = "smeecs_py", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyConcurrence {
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    condition: f64,
    path: EvalPath,
}

#[pymethods]
impl PyConcurrence {
    #[getter]
    fn path(&self) -> &'static str {
        self.path.as_str()
    }

    fn __float__(&self) -> f64 {
        self.value
    }

    fn __repr__(&self) -> String {
        format!(
            "Concurrence(value={:?}, path='{}', condition={:?})",
            self.value,
            self.path.as_str(),
            self.condition
        )
    }
}

impl From<smeecs::ConcurrenceResult> for PyConcurrence {
    fn from(r: smeecs::ConcurrenceResult) -> Self {
        Self {
            value: r.value,
            condition: r.condition,
            path: r.path,
        }
    }
}

/// Photon-added entangled coherent state `a^dag^m (|a,a> +/- |-a,-a>)`.
#[pyclass(name = "State", module = "smeecs_py", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyState {
    spec: StateSpec,
}

#[pymethods]
impl PyState {
    #[new]
    #[pyo3(signature = (alpha, m, sign = "+"))]
    fn new(alpha: Complex64, m: u32, sign: &str) -> PyResult<Self> {
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(PyValueError::new_err("alpha must be finite"));
        }
        Ok(Self {
            spec: StateSpec::new(alpha, m, sign_arg(sign)?),
        })
    }

    /// Builds the state from `x = |alpha|^2` and a phase.
    #[staticmethod]
    #[pyo3(signature = (x, m, sign = "+", phase = 0.0))]
    fn from_intensity(x: f64, m: u32, sign: &str, phase: f64) -> PyResult<Self> {
        if !x.is_finite() || x < 0.0 || !phase.is_finite() {
            return Err(PyValueError::new_err("x must be finite and nonnegative, phase finite"));
        }
        Ok(Self {
            spec: StateSpec::from_intensity(x, phase, m, sign_arg(sign)?),
        })
    }

    #[getter]
    fn alpha(&self) -> Complex64 {
        self.spec.alpha
    }

    #[getter]
    fn m(&self) -> u32 {
        self.spec.m
    }

    #[getter]
    fn sign(&self) -> &'static str {
        self.spec.sign.symbol()
    }

    #[getter]
    fn intensity(&self) -> f64 {
        self.spec.intensity()
    }

    fn is_degenerate(&self) -> bool {
        self.spec.is_degenerate()
    }

    fn normalization_n(&self) -> PyResult<f64> {
        smeecs::normalization_n(&self.spec).map_err(to_py_err)
    }

    fn normalization_m(&self) -> PyResult<f64> {
        smeecs::normalization_m(&self.spec).map_err(to_py_err)
    }

    /// `(p1, p2)`.
    fn overlaps(&self) -> (f64, f64) {
        let p = smeecs::overlap_pair(self.spec.alpha, self.spec.m);
        (p.p1, p.p2)
    }

    fn concurrence(&self) -> PyResult<PyConcurrence> {
        smeecs::concurrence_closed(&self.spec).map(Into::into).map_err(to_py_err)
    }

    /// Concurrence from the truncated Fock-basis state.
    #[pyo3(signature = (trunc = None))]
    fn concurrence_oracle(&self, py: Python<'_>, trunc: Option<usize>) -> PyResult<PyConcurrence> {
        let spec = self.spec;
        let trunc = trunc.unwrap_or_else(|| smeecs::default_truncation(spec.intensity(), spec.m));
        py.detach(|| smeecs::concurrence_oracle(&spec, trunc))
            .map(Into::into)
            .map_err(to_py_err)
    }

    /// Reduced purity of mode `"a"` or `"b"`.
    #[pyo3(signature = (trunc = None, mode = "a"))]
    fn reduced_purity(&self, trunc: Option<usize>, mode: &str) -> PyResult<f64> {
        let which = match mode.to_ascii_lowercase().as_str() {
            "a" => smeecs::Mode::A,
            "b" => smeecs::Mode::B,
            _ => return Err(PyValueError::new_err("mode must be 'a' or 'b'")),
        };
        let trunc = trunc.unwrap_or_else(|| smeecs::default_truncation(self.spec.intensity(), self.spec.m));
        let state = smeecs::build_state(&self.spec, trunc).map_err(to_py_err)?;
        Ok(smeecs::reduced_purity(&state, which))
    }

    fn __repr__(&self) -> String {
        format!(
            "State(alpha=({}{:+}j), m={}, sign='{}')",
            self.spec.alpha.re,
            self.spec.alpha.im,
            self.spec.m,
            self.spec.sign.symbol()
        )
    }
}

/// Laguerre polynomial `L_m(x)`.
#[pyfunction]
fn laguerre(m: u32, x: f64) -> f64 {
    smeecs::laguerre(m, x)
}

/// `(sign, ln|L_m(x)|)`, finite for arguments where `L_m(x)` overflows.
#[pyfunction]
fn laguerre_signed_log(m: u32, x: f64) -> (i8, f64) {
    let v = smeecs::laguerre_signed_log(m, x);
    (v.sign(), v.log_mag())
}

/// Two-variable Hermite polynomial `H_{m,n}(eta, eta_conj)`.
#[pyfunction]
fn hermite2(m: u32, n: u32, eta: Complex64, eta_conj: Complex64) -> Complex64 {
    smeecs::hermite2(m, n, eta, eta_conj)
}

/// `<alpha| a^n a^dag^m |beta>`.
#[pyfunction]
fn cross_moment(n: u32, m: u32, alpha: Complex64, beta: Complex64) -> Complex64 {
    smeecs::cross_moment(n, m, alpha, beta)
}

/// Concurrence from the overlaps `p1`, `p2`.
#[pyfunction]
#[pyo3(signature = (p1, p2, sign = "+"))]
fn concurrence_general(p1: f64, p2: f64, sign: &str) -> PyResult<PyConcurrence> {
    smeecs::concurrence_general(smeecs::OverlapPair { p1, p2 }, sign_arg(sign)?)
        .map(Into::into)
        .map_err(to_py_err)
}

/// Closed-form concurrence at `x = |alpha|^2`.
#[pyfunction]
#[pyo3(signature = (x, m, sign = "+"))]
fn concurrence(x: f64, m: u32, sign: &str) -> PyResult<f64> {
    PyState::from_intensity(x, m, sign, 0.0)?.concurrence().map(|c| c.value)
}

#[pyfunction]
fn concurrence_small_alpha_limit(m: u32, sign: &str) -> PyResult<f64> {
    Ok(smeecs::concurrence_small_alpha_limit(m, sign_arg(sign)?))
}

#[pyfunction]
fn default_truncation(x: f64, m: u32) -> usize {
    smeecs::default_truncation(x, m)
}

#[pymodule]
fn smeecs_py(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_class::<PyState>()?;
    module.add_class::<PyConcurrence>()?;
    module.add_function(wrap_pyfunction!(laguerre, module)?)?;
    module.add_function(wrap_pyfunction!(laguerre_signed_log, module)?)?;
    module.add_function(wrap_pyfunction!(hermite2, module)?)?;
    module.add_function(wrap_pyfunction!(cross_moment, module)?)?;
    module.add_function(wrap_pyfunction!(concurrence, module)?)?;
    module.add_function(wrap_pyfunction!(concurrence_general, module)?)?;
    module.add_function(wrap_pyfunction!(concurrence_small_alpha_limit, module)?)?;
    module.add_function(wrap_pyfunction!(default_truncation, module)?)?;
    module.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
