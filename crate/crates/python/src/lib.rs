//! Python bindings: number systems, activations, networks, transition graphs,
//! realification and the octonion experiment.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hhnn_core::activation::Activation;
use hhnn_core::config::{preset, NetworkConfig};
use hhnn_core::experiment::{OctonionExperiment, RunSummary};
use hhnn_core::graph::{classify, enumerate_graph, to_dot};
use hhnn_core::laws::{check_reahn, check_reverse_involution, is_positive_semidefinite};
use hhnn_core::realify::{realify_network, verify_realification};
use hhnn_core::{HNumber, StateVector};

fn err(e: hhnn_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parses a JSON string into Python objects.
fn to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

#[pyclass(name = "NumberSystem", frozen)]
struct PyNumberSystem {
    inner: hhnn_core::NumberSystem,
}

impl PyNumberSystem {
    fn number(&self, c: Vec<f64>) -> PyResult<HNumber> {
        HNumber::new(self.inner.algebra(), c).map_err(err)
    }
}

#[pymethods]
impl PyNumberSystem {
    #[new]
    #[pyo3(signature = (algebra, involution = "default"))]
    fn new(algebra: &str, involution: &str) -> PyResult<Self> {
        let inner = hhnn_core::NumberSystem::from_ids(algebra, involution).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn involution(&self) -> Vec<i8> {
        self.inner.involution().signs().to_vec()
    }

    fn table(&self) -> String {
        self.inner.algebra().table_string()
    }

    fn multiply(&self, p: Vec<f64>, q: Vec<f64>) -> PyResult<Vec<f64>> {
        let prod = self.number(p)?.mul(&self.number(q)?).map_err(err)?;
        Ok(prod.into_coeffs())
    }

    fn involute(&self, p: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.inner.involute(&self.number(p)?).map_err(err)?.into_coeffs())
    }

    /// `B(p, q) = Re(tau(p) q)`.
    fn bilinear(&self, p: Vec<f64>, q: Vec<f64>) -> PyResult<f64> {
        self.inner
            .bilinear(&self.number(p)?, &self.number(q)?)
            .map_err(err)
    }

    /// Exact law checks as a dict.
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (a, t) = (self.inner.algebra(), self.inner.involution());
        let report = serde_json::json!({
            "reverse_involution": check_reverse_involution(a, t),
            "reahn": check_reahn(a, t),
            "psd": is_positive_semidefinite(a, t),
        });
        to_py(py, &report)
    }
}

/// Applies an activation (`csgn:K`, `tsgn:K`, `split`, `conj_split`,
/// `sigma`); `None` outside its domain.
#[pyfunction]
fn activate(name: &str, p: Vec<f64>) -> PyResult<Option<Vec<f64>>> {
    let f: Activation = name.parse().map_err(err)?;
    f.check_dim(p.len()).map_err(err)?;
    Ok(f.apply_slice(&p))
}

#[pyclass(name = "Network", frozen)]
struct PyNetwork {
    config: NetworkConfig,
    inner: hhnn_core::Network,
}

impl PyNetwork {
    fn from_cfg(config: NetworkConfig) -> PyResult<Self> {
        let inner = config.build().map_err(err)?;
        Ok(Self { config, inner })
    }

    fn state(&self, x: Option<Vec<f64>>) -> PyResult<StateVector> {
        match x {
            Some(flat) => {
                let x = StateVector::from_flat(self.inner.dim(), flat).map_err(err)?;
                self.inner.validate_state(&x).map_err(err)?;
                Ok(x)
            }
            None => self.config.initial_state(&self.inner).map_err(err),
        }
    }
}

#[pymethods]
impl PyNetwork {
    /// Builds a network from a config JSON string.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::from_cfg(NetworkConfig::from_json(text).map_err(err)?)
    }

    /// `example5:<c|u|d>-<split|conj>` or `example6:<c|u|d>`.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        Self::from_cfg(preset(name).map_err(err)?)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn to_json(&self) -> PyResult<String> {
        self.config.to_json().map_err(err)
    }

    /// Energy of a flat state (neuron-major coefficients).
    fn energy(&self, x: Vec<f64>) -> PyResult<f64> {
        Ok(self.inner.energy(&self.state(Some(x))?))
    }

    /// Runs to a fixed point from `x` (or the configured initial state) and
    /// returns the summary with the final state and the CSV trace.
    #[pyo3(signature = (x = None, sweeps = 1000))]
    fn run<'py>(
        &self,
        py: Python<'py>,
        x: Option<Vec<f64>>,
        sweeps: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let trace = self.inner.run(&self.state(x)?, sweeps).map_err(err)?;
        let report = serde_json::json!({
            "summary": RunSummary::of(&trace),
            "final_state": trace.final_state.as_flat(),
            "csv": trace.to_csv(),
        });
        to_py(py, &report)
    }

    /// Fixed points and cyclic nodes of the full transition graph.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let g = enumerate_graph(&self.inner).map_err(err)?;
        to_py(py, &serde_json::to_value(classify(&g)).map_err(|e| err(e.into()))?)
    }

    fn dot(&self) -> PyResult<String> {
        let g = enumerate_graph(&self.inner).map_err(err)?;
        let start = match &self.config.initial_state {
            Some(_) => g.encode(&self.state(None)?),
            None => None,
        };
        Ok(to_dot(&g, start))
    }

    /// Real block matrix rows and the realified network.
    fn realify(&self) -> PyResult<(Vec<Vec<f64>>, PyNetwork)> {
        let (m, real) = realify_network(&self.inner).map_err(err)?;
        let config = NetworkConfig::from_network(&real, self.config.seed);
        Ok((m.to_rows(), PyNetwork { config, inner: real }))
    }

    /// Largest `|M phi(x) - phi(W x)|_inf` over random states, or an error
    /// if it exceeds the tolerance.
    #[pyo3(signature = (trials = 100, seed = 0))]
    fn verify_realification<'py>(
        &self,
        py: Python<'py>,
        trials: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let verdict = verify_realification(&self.inner, trials, seed);
        to_py(py, &serde_json::to_value(verdict).map_err(|e| err(e.into()))?)
    }
}

/// Octonion split-sign network and its realification from one seed.
#[pyfunction]
#[pyo3(signature = (n = 100, seed = 0))]
fn octonion_experiment<'py>(py: Python<'py>, n: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let outcome = OctonionExperiment::new(n, seed).run().map_err(err)?;
    to_py(py, &serde_json::to_value(outcome.summary()).map_err(|e| err(e.into()))?)
}

#[pymodule]
fn hhnn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNumberSystem>()?;
    m.add_class::<PyNetwork>()?;
    m.add_function(wrap_pyfunction!(activate, m)?)?;
    m.add_function(wrap_pyfunction!(octonion_experiment, m)?)?;
    Ok(())
}
