use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qdd::bench::{self, Family, Knobs};
use qdd::circuit::{circuit_to_qasm, parse_qasm, Circuit};
use qdd::sim::{self, SimKind};
use qdd::{Engine, Error, MatrixEdge, Mode, VectorEdge};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Argument(_) | Error::Parse { .. } | Error::Semantic { .. } | Error::NumericDomain(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn parse_kind(kind: &str) -> PyResult<SimKind> {
    match kind {
        "statevector" => Ok(SimKind::Statevector),
        "unitary" => Ok(SimKind::Unitary),
        other => Err(PyValueError::new_err(format!("unknown simulation kind `{other}`"))),
    }
}

/// A quantum circuit over one register.
#[pyclass(name = "Circuit", module = "pyqdd")]
struct PyCircuit {
    inner: Circuit,
}

#[pymethods]
impl PyCircuit {
    #[staticmethod]
    fn from_qasm(text: &str) -> PyResult<Self> {
        Ok(PyCircuit {
            inner: parse_qasm(text).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (family, qubits, secret=None, phase=None, marked=None, native_mcz=false))]
    fn benchmark(
        family: &str,
        qubits: usize,
        secret: Option<&str>,
        phase: Option<u64>,
        marked: Option<&str>,
        native_mcz: bool,
    ) -> PyResult<Self> {
        let family: Family = family.parse().map_err(py_err)?;
        let knobs = Knobs {
            secret: secret.map(bench::parse_bits).transpose().map_err(py_err)?,
            phase,
            marked: marked.map(bench::parse_bits).transpose().map_err(py_err)?,
            native_mcz,
        };
        Ok(PyCircuit {
            inner: bench::generate(family, qubits, &knobs).map_err(py_err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn gate_count(&self) -> usize {
        self.inner.gate_count()
    }

    fn to_qasm(&self) -> PyResult<String> {
        circuit_to_qasm(&self.inner).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(name={:?}, n={}, gates={})",
            self.inner.name,
            self.inner.n,
            self.inner.gate_count()
        )
    }
}

enum LastRun {
    None,
    State(VectorEdge),
    Unitary(MatrixEdge),
}

/// One engine plus the result of its last run.
#[pyclass(name = "Simulator", module = "pyqdd")]
struct PySimulator {
    engine: Engine,
    n: usize,
    last: LastRun,
}

impl PySimulator {
    fn state(&self) -> PyResult<VectorEdge> {
        match self.last {
            LastRun::State(s) => Ok(s),
            _ => Err(PyRuntimeError::new_err(
                "no statevector result; run a statevector simulation first",
            )),
        }
    }

    fn unitary(&self) -> PyResult<MatrixEdge> {
        match self.last {
            LastRun::Unitary(u) => Ok(u),
            _ => Err(PyRuntimeError::new_err(
                "no unitary result; run a unitary simulation first",
            )),
        }
    }
}

#[pymethods]
impl PySimulator {
    #[new]
    #[pyo3(signature = (mode="new"))]
    fn new(mode: &str) -> PyResult<Self> {
        let mode: Mode = mode.parse().map_err(py_err)?;
        Ok(PySimulator {
            engine: Engine::new(mode),
            n: 0,
            last: LastRun::None,
        })
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.engine.mode().as_str()
    }

    /// Simulates `circuit` and returns the run statistics as a dict.
    #[pyo3(signature = (circuit, kind="statevector"))]
    fn run<'py>(&mut self, py: Python<'py>, circuit: &PyCircuit, kind: &str) -> PyResult<Bound<'py, PyAny>> {
        match std::mem::replace(&mut self.last, LastRun::None) {
            LastRun::State(s) => self.engine.dec_ref(s),
            LastRun::Unitary(u) => self.engine.dec_ref(u),
            LastRun::None => {}
        }
        let report = match parse_kind(kind)? {
            SimKind::Statevector => {
                let (s, r) = sim::simulate_statevector(&mut self.engine, &circuit.inner).map_err(py_err)?;
                self.last = LastRun::State(s);
                r
            }
            SimKind::Unitary => {
                let (u, r) = sim::simulate_unitary(&mut self.engine, &circuit.inner).map_err(py_err)?;
                self.last = LastRun::Unitary(u);
                r
            }
        };
        self.n = circuit.inner.n;
        json_to_py(py, &report.to_json())
    }

    fn amplitude(&self, index: u64) -> PyResult<Complex64> {
        self.engine.amplitude(self.state()?, index).map_err(py_err)
    }

    /// All amplitudes of the last state (at most 24 qubits).
    fn statevector(&self) -> PyResult<Vec<Complex64>> {
        if self.n > 24 {
            return Err(PyValueError::new_err("state too large for a dense readback"));
        }
        self.engine.to_dense_vector(self.state()?, self.n).map_err(py_err)
    }

    fn matrix_entry(&self, row: u64, col: u64) -> PyResult<Complex64> {
        self.engine
            .matrix_entry(self.unitary()?, row, col, self.n)
            .map_err(py_err)
    }

    /// Graphviz source of the last result.
    fn dot(&self) -> PyResult<String> {
        match self.last {
            LastRun::State(s) => Ok(sim::export_dot(&self.engine, s)),
            LastRun::Unitary(u) => Ok(sim::export_dot(&self.engine, u)),
            LastRun::None => Err(PyRuntimeError::new_err("nothing simulated yet")),
        }
    }

    /// True when the store holds no identity-shaped operator node.
    fn identity_free(&self) -> bool {
        sim::identity_free(&self.engine)
    }
}

/// Runs `circuit` in both modes; returns both reports and the maximal deviation.
#[pyfunction]
#[pyo3(signature = (circuit, kind="statevector"))]
fn compare<'py>(py: Python<'py>, circuit: &PyCircuit, kind: &str) -> PyResult<Bound<'py, PyAny>> {
    let cmp = sim::compare(&circuit.inner, parse_kind(kind)?, &[]).map_err(py_err)?;
    json_to_py(py, &cmp.to_json())
}

#[pymodule]
fn pyqdd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_class::<PySimulator>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add("__version__", qdd::ENGINE_VERSION)?;
    Ok(())
}
