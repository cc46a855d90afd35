use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use virtcorr::reductions::{partial_trace_matrix, partial_transpose_matrix};
use virtcorr::{claims, entanglement, fermion_map, states, sweep};
use virtcorr::{BipartiteShape, ComplexMatrix, Subsystem};

create_exception!(virtcorr, VirtcorrError, PyValueError);

fn err(e: virtcorr::Error) -> PyErr {
    VirtcorrError::new_err(e.to_string())
}

fn to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    m.rows().map(<[Complex64]>::to_vec).collect()
}

fn subsystem(name: &str) -> PyResult<Subsystem> {
    match name {
        "A" | "a" => Ok(Subsystem::A),
        "B" | "b" => Ok(Subsystem::B),
        other => Err(PyValueError::new_err(format!(
            "subsystem must be 'A' or 'B', got {other:?}"
        ))),
    }
}

/// Validated density matrix.
#[pyclass(frozen, name = "DensityMatrix", module = "virtcorr")]
struct PyDensityMatrix {
    inner: states::DensityMatrix,
}

impl PyDensityMatrix {
    fn wrap(inner: states::DensityMatrix) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyDensityMatrix {
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = ComplexMatrix::from_rows(&rows).map_err(err)?;
        states::DensityMatrix::from_matrix(m).map(Self::wrap).map_err(err)
    }

    #[staticmethod]
    fn from_pure(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        let psi = states::PureState::new(amplitudes).map_err(err)?;
        Ok(Self::wrap(states::density_from_pure(&psi)))
    }

    #[staticmethod]
    fn from_diagonal(probs: Vec<f64>) -> PyResult<Self> {
        let p = states::DiagonalDistribution::new(probs).map_err(err)?;
        Ok(Self::wrap(states::density_from_diagonal(&p)))
    }

    #[staticmethod]
    fn random_mixed(dim: usize, seed: u64) -> Self {
        Self::wrap(states::random_mixed(dim, seed))
    }

    #[staticmethod]
    fn random_pure(dim: usize, seed: u64) -> Self {
        Self::wrap(states::density_from_pure(&states::random_pure(dim, seed)))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn to_list(&self) -> Vec<Vec<Complex64>> {
        to_rows(self.inner.matrix())
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.inner.eigenvalues().map_err(err)
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    fn conjugated(&self, unitary: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let u = ComplexMatrix::from_rows(&unitary).map_err(err)?;
        self.inner.conjugated(&u).map(Self::wrap).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dim={})", self.inner.dim())
    }
}

/// Two-fermion state on the d x d product space.
#[pyclass(frozen, name = "TwoFermionState", module = "virtcorr")]
struct PyTwoFermionState {
    inner: fermion_map::TwoFermionState,
}

#[pymethods]
impl PyTwoFermionState {
    #[new]
    fn new(rho: &PyDensityMatrix, d: usize) -> PyResult<Self> {
        fermion_map::TwoFermionState::new(rho.inner.clone(), d)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    fn density(&self) -> PyDensityMatrix {
        PyDensityMatrix::wrap(self.inner.density().clone())
    }

    fn to_list(&self) -> Vec<Vec<Complex64>> {
        to_rows(self.inner.matrix())
    }

    fn extract(&self) -> PyResult<PyDensityMatrix> {
        fermion_map::extract(&self.inner)
            .map(PyDensityMatrix::wrap)
            .map_err(err)
    }

    fn negativity(&self) -> PyResult<PyMonotoneReport> {
        entanglement::negativity(self.inner.density(), self.inner.shape())
            .map(|inner| PyMonotoneReport { inner })
            .map_err(err)
    }

    fn entanglement_entropy(&self) -> PyResult<f64> {
        entanglement::entanglement_entropy(self.inner.density(), self.inner.shape()).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("TwoFermionState(d={})", self.inner.d())
    }
}

#[pyclass(frozen, name = "MonotoneReport", module = "virtcorr")]
struct PyMonotoneReport {
    inner: entanglement::MonotoneReport,
}

#[pymethods]
impl PyMonotoneReport {
    #[getter]
    fn negativity(&self) -> f64 {
        self.inner.negativity
    }

    #[getter]
    fn log_negativity(&self) -> f64 {
        self.inner.log_negativity
    }

    #[getter]
    fn trace_norm(&self) -> f64 {
        self.inner.trace_norm
    }

    #[getter]
    fn neg_eigenvalues(&self) -> Vec<f64> {
        self.inner.neg_eigenvalues.clone()
    }

    #[getter]
    fn entangled(&self) -> bool {
        self.inner.entangled
    }

    fn __repr__(&self) -> String {
        format!(
            "MonotoneReport(negativity={}, log_negativity={}, entangled={})",
            self.inner.negativity,
            self.inner.log_negativity,
            if self.inner.entangled { "True" } else { "False" }
        )
    }
}

#[pyclass(frozen, name = "CubicAnalysis", module = "virtcorr")]
struct PyCubicAnalysis {
    inner: entanglement::CubicAnalysis,
}

#[pymethods]
impl PyCubicAnalysis {
    #[getter]
    fn coefficients(&self) -> [f64; 4] {
        self.inner.coefficients
    }

    #[getter]
    fn roots(&self) -> [f64; 3] {
        self.inner.roots
    }

    #[getter]
    fn negativity(&self) -> f64 {
        self.inner.negativity
    }

    #[getter]
    fn neg_root(&self) -> f64 {
        self.inner.neg_root()
    }

    fn __repr__(&self) -> String {
        format!(
            "CubicAnalysis(roots={:?}, negativity={})",
            self.inner.roots, self.inner.negativity
        )
    }
}

/// Wedge basis pairs (1-based) for single-fermion dimension d.
#[pyfunction]
fn wedge_basis(d: usize) -> PyResult<Vec<(usize, usize)>> {
    fermion_map::wedge_basis(d).map(|b| b.labels()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (rho, d = 3))]
fn embed(rho: &PyDensityMatrix, d: usize) -> PyResult<PyTwoFermionState> {
    fermion_map::embed(&rho.inner, d)
        .map(|inner| PyTwoFermionState { inner })
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (rho, d = 3))]
fn reduced_fermion_state(rho: &PyDensityMatrix, d: usize) -> PyResult<PyDensityMatrix> {
    fermion_map::reduced_fermion_state(&rho.inner, d)
        .map(PyDensityMatrix::wrap)
        .map_err(err)
}

#[pyfunction]
fn partial_trace(
    rho: &PyDensityMatrix,
    dim_a: usize,
    dim_b: usize,
    keep: &str,
) -> PyResult<PyDensityMatrix> {
    let m = partial_trace_matrix(rho.inner.matrix(), BipartiteShape::new(dim_a, dim_b), subsystem(keep)?)
        .map_err(err)?;
    states::DensityMatrix::from_matrix(m)
        .map(PyDensityMatrix::wrap)
        .map_err(err)
}

/// Partial transpose as a plain matrix (it need not be a state).
#[pyfunction]
fn partial_transpose(
    rho: &PyDensityMatrix,
    dim_a: usize,
    dim_b: usize,
    which: &str,
) -> PyResult<Vec<Vec<Complex64>>> {
    partial_transpose_matrix(rho.inner.matrix(), BipartiteShape::new(dim_a, dim_b), subsystem(which)?)
        .map(|m| to_rows(&m))
        .map_err(err)
}

#[pyfunction]
fn negativity(rho: &PyDensityMatrix, dim_a: usize, dim_b: usize) -> PyResult<PyMonotoneReport> {
    entanglement::negativity(&rho.inner, BipartiteShape::new(dim_a, dim_b))
        .map(|inner| PyMonotoneReport { inner })
        .map_err(err)
}

#[pyfunction]
fn entanglement_entropy(rho: &PyDensityMatrix, dim_a: usize, dim_b: usize) -> PyResult<f64> {
    entanglement::entanglement_entropy(&rho.inner, BipartiteShape::new(dim_a, dim_b)).map_err(err)
}

#[pyfunction]
fn diagonal_cubic_analysis(probs: Vec<f64>) -> PyResult<PyCubicAnalysis> {
    let p = states::DiagonalDistribution::new(probs).map_err(err)?;
    entanglement::diagonal_cubic_analysis(&p)
        .map(|inner| PyCubicAnalysis { inner })
        .map_err(err)
}

#[pyfunction]
fn hermitian_eigenvalues(matrix: Vec<Vec<Complex64>>) -> PyResult<Vec<f64>> {
    let m = ComplexMatrix::from_rows(&matrix).map_err(err)?;
    virtcorr::linalg::hermitian_eigenvalues(&m).map_err(err)
}

#[pyfunction]
fn random_unitary(dim: usize, seed: u64) -> Vec<Vec<Complex64>> {
    to_rows(&states::random_unitary(dim, seed))
}

/// Rows `(p1, p2, p3, negativity, neg_root)` of the simplex sweep.
#[pyfunction]
fn simplex_sweep(step: f64) -> PyResult<Vec<(f64, f64, f64, f64, f64)>> {
    let rows = sweep::sweep_grid(step).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.p1, r.p2, r.p3, r.negativity, r.neg_root))
        .collect())
}

/// Runs every property check; returns `(id, name, passed)` triples.
#[pyfunction]
#[pyo3(signature = (seed = claims::DEFAULT_SEED))]
fn verify(py: Python<'_>, seed: u64) -> Vec<(usize, &'static str, bool)> {
    py.detach(|| {
        claims::run_all(seed)
            .into_iter()
            .map(|o| (o.id, o.name, o.passed))
            .collect()
    })
}

#[pymodule(name = "virtcorr")]
fn py_virtcorr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("VirtcorrError", m.py().get_type::<VirtcorrError>())?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyTwoFermionState>()?;
    m.add_class::<PyMonotoneReport>()?;
    m.add_class::<PyCubicAnalysis>()?;
    m.add_function(wrap_pyfunction!(wedge_basis, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_fermion_state, m)?)?;
    m.add_function(wrap_pyfunction!(partial_trace, m)?)?;
    m.add_function(wrap_pyfunction!(partial_transpose, m)?)?;
    m.add_function(wrap_pyfunction!(negativity, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_cubic_analysis, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(random_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
