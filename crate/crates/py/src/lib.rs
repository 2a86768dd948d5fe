//! Python bindings. Matrices cross the boundary as nested lists of complex
//! numbers.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use qudit_extremal as core;
use qudit_extremal::models::Spin;
use qudit_extremal::{HermitianMatrix, PurityConstants};

create_exception!(pyqudit, SolverFailure, PyRuntimeError);

type Rows = Vec<Vec<Complex64>>;

fn to_py(e: core::Error) -> PyErr {
    match e {
        core::Error::SolverFailure { .. } => SolverFailure::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn hermitian(rows: Rows) -> PyResult<HermitianMatrix> {
    HermitianMatrix::from_rows(&rows).map_err(to_py)
}

fn problem(h: Rows, constants: Vec<f64>) -> PyResult<core::ExtremalProblem> {
    let h = hermitian(h)?;
    let basis = core::build_basis(h.dim()).map_err(to_py)?;
    let c = PurityConstants::new(constants).map_err(to_py)?;
    core::ExtremalProblem::new(h, basis, c).map_err(to_py)
}

#[pyclass(name = "ExtremalSolution", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyExtremalSolution {
    lambda_: Vec<f64>,
    multipliers: Option<Vec<f64>>,
    energy: f64,
    residual: f64,
    entropy: f64,
    kind: String,
    state: Rows,
}

#[pymethods]
impl PyExtremalSolution {
    /// Coherence vector (`lambda` is a Python keyword).
    #[getter]
    fn coherence(&self) -> Vec<f64> {
        self.lambda_.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "ExtremalSolution(energy={}, entropy={}, residual={:.2e}, kind='{}')",
            self.energy, self.entropy, self.residual, self.kind
        )
    }
}

impl From<core::ExtremalSolution> for PyExtremalSolution {
    fn from(s: core::ExtremalSolution) -> Self {
        Self {
            kind: format!("{:?}", s.kind).to_lowercase(),
            state: s.state.as_matrix().to_rows(),
            lambda_: s.lambda,
            multipliers: s.multipliers,
            energy: s.energy,
            residual: s.residual,
            entropy: s.entropy,
        }
    }
}

#[pyclass(name = "InequalityReport", frozen, get_all)]
pub struct PyInequalityReport {
    energy: f64,
    entropy: f64,
    bound: f64,
    slack: f64,
    diff_bound: f64,
    diff_slack: f64,
    weighted_lhs: f64,
    weighted_rhs: f64,
    relative_entropy: f64,
    passes: bool,
}

#[pymethods]
impl PyInequalityReport {
    fn __repr__(&self) -> String {
        format!("InequalityReport(slack={}, diff_slack={}, passes={})", self.slack, self.diff_slack, self.passes)
    }
}

/// Generators of su(d): symmetric, antisymmetric, then diagonal.
#[pyfunction]
fn build_basis(d: usize) -> PyResult<Vec<Rows>> {
    let b = core::build_basis(d).map_err(to_py)?;
    Ok(b.generators().iter().map(|g| g.as_matrix().to_rows()).collect())
}

/// `(h0, [h_k])` with `H = h0 I/d + 1/2 sum h_k g_k`.
#[pyfunction]
fn expand(h: Rows) -> PyResult<(f64, Vec<f64>)> {
    let h = hermitian(h)?;
    let b = core::build_basis(h.dim()).map_err(to_py)?;
    let c = core::expand(&h, &b).map_err(to_py)?;
    Ok((c.h0, c.coeffs))
}

#[pyfunction]
fn char_coeffs(rho: Rows) -> PyResult<Vec<f64>> {
    Ok(core::char_coeffs(&hermitian(rho)?))
}

#[pyfunction]
fn eigvalsh(h: Rows) -> PyResult<Vec<f64>> {
    Ok(core::matrix::eigenvalues(&hermitian(h)?))
}

/// `(feasible, spectrum)`; the spectrum is descending or `None`.
#[pyfunction]
fn is_feasible(constants: Vec<f64>) -> PyResult<(bool, Option<Vec<f64>>)> {
    let c = PurityConstants::new(constants).map_err(to_py)?;
    let b = core::build_basis(c.dim()).map_err(to_py)?;
    let f = core::is_feasible(&c, &b).map_err(to_py)?;
    Ok((f.feasible, f.spectrum))
}

#[pyfunction]
#[pyo3(signature = (h, constants, seed = 0, starts = None))]
fn solve_extremal(
    py: Python<'_>,
    h: Rows,
    constants: Vec<f64>,
    seed: u64,
    starts: Option<usize>,
) -> PyResult<Vec<PyExtremalSolution>> {
    let p = problem(h, constants)?;
    let opts = core::SolveOptions {
        starts,
        ..core::SolveOptions::with_seed(seed)
    };
    let sols = py.detach(|| core::solve_extremal(&p, &opts)).map_err(to_py)?;
    Ok(sols.into_iter().map(Into::into).collect())
}

#[pyfunction]
fn qubit_closed_form(h: Rows, c2: f64) -> PyResult<Vec<PyExtremalSolution>> {
    let sols = core::qubit_closed_form(&hermitian(h)?, c2).map_err(to_py)?;
    Ok(sols.into_iter().map(Into::into).collect())
}

#[pyfunction]
fn check_bounds(rho: Rows, h: Rows) -> PyResult<PyInequalityReport> {
    let r = core::check_bounds(&hermitian(rho)?, &hermitian(h)?).map_err(to_py)?;
    Ok(PyInequalityReport {
        energy: r.energy,
        entropy: r.entropy,
        bound: r.bound,
        slack: r.slack,
        diff_bound: r.diff_bound,
        diff_slack: r.diff_slack,
        weighted_lhs: r.weighted_lhs,
        weighted_rhs: r.weighted_rhs,
        relative_entropy: r.relative_entropy,
        passes: r.passes.all(),
    })
}

#[pyfunction]
fn gibbs_like(h: Rows) -> PyResult<Rows> {
    Ok(core::gibbs_like(&hermitian(h)?).as_matrix().to_rows())
}

/// `Z(beta) = Tr exp(-beta H)`.
#[pyfunction]
fn partition(h: Rows, beta: f64) -> PyResult<f64> {
    Ok(core::partition(&hermitian(h)?, beta))
}

#[pyfunction]
fn von_neumann_entropy(rho: Rows) -> PyResult<f64> {
    core::von_neumann_entropy(&hermitian(rho)?).map_err(to_py)
}

#[pyfunction]
fn relative_entropy(rho: Rows, sigma: Rows) -> PyResult<f64> {
    core::relative_entropy(&hermitian(rho)?, &hermitian(sigma)?).map_err(to_py)
}

#[pyfunction]
fn qubit_f_closed(h: f64, delta: f64) -> PyResult<f64> {
    core::qubit_f_closed(h, delta).map_err(to_py)
}

#[pyfunction]
fn qubit_hamiltonian(h0: f64, h1: f64, h2: f64, h3: f64) -> Rows {
    core::qubit_hamiltonian(h0, h1, h2, h3).as_matrix().to_rows()
}

/// `a J_z + b J_z^2 + c J_x` on spin `j`.
#[pyfunction]
#[pyo3(signature = (a, b, c, j = 1.0))]
fn bec_hamiltonian(a: f64, b: f64, c: f64, j: f64) -> PyResult<Rows> {
    let spin = Spin::new(j).map_err(to_py)?;
    Ok(core::bec_hamiltonian(&core::BecParams::with_spin(a, b, c, spin)).as_matrix().to_rows())
}

#[pymodule]
fn pyqudit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SolverFailure", m.py().get_type::<SolverFailure>())?;
    m.add_class::<PyExtremalSolution>()?;
    m.add_class::<PyInequalityReport>()?;
    m.add_function(wrap_pyfunction!(build_basis, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(char_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(eigvalsh, m)?)?;
    m.add_function(wrap_pyfunction!(is_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(solve_extremal, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(gibbs_like, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_f_closed, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(bec_hamiltonian, m)?)?;
    Ok(())
}
