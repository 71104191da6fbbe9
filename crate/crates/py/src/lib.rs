//! Python bindings: basis specification, potentials, phase-shift solvers,
//! and the direct-integration oracles.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use jmatrix_core::{basis, kinematics, nonrel, oracle, rel};
use jmatrix_core::{BasisKind, BasisSpec, PotentialModel, DEFAULT_LIGHT_SPEED};

fn err(e: jmatrix_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<BasisKind> {
    match kind {
        "laguerre" => Ok(BasisKind::Laguerre),
        "gaussian" => Ok(BasisKind::Gaussian),
        other => Err(PyValueError::new_err(format!(
            "unknown basis kind '{other}' (expected 'laguerre' or 'gaussian')"
        ))),
    }
}

/// Square-integrable basis channel: kind, relativistic quantum number kappa,
/// scale lambda, truncation size N.
#[pyclass(name = "BasisSpec", frozen)]
#[derive(Clone)]
struct PyBasisSpec {
    inner: BasisSpec,
}

#[pymethods]
impl PyBasisSpec {
    #[new]
    #[pyo3(signature = (kind, *, lam, n, kappa=None, l=None))]
    fn new(kind: &str, lam: f64, n: usize, kappa: Option<i32>, l: Option<u32>) -> PyResult<Self> {
        let kind = parse_kind(kind)?;
        let inner = match (kappa, l) {
            (Some(k), None) => BasisSpec::new(kind, k, lam, n).map_err(err)?,
            (None, Some(l)) => BasisSpec::for_orbital(kind, l, lam, n).map_err(err)?,
            _ => {
                return Err(PyValueError::new_err(
                    "give exactly one of kappa= or l=",
                ))
            }
        };
        Ok(Self { inner })
    }

    #[getter]
    fn kappa(&self) -> i32 {
        self.inner.kappa
    }

    #[getter]
    fn l(&self) -> u32 {
        self.inner.l
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.inner.scale
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n_max
    }

    /// phi_n(r)
    fn phi(&self, n: usize, r: f64) -> f64 {
        basis::phi(&self.inner, n, r)
    }

    /// psi_n(r) = (kappa/r + d/dr) phi_n(r)
    fn psi(&self, n: usize, r: f64) -> f64 {
        basis::psi(&self.inner, n, r)
    }

    fn __repr__(&self) -> String {
        format!(
            "BasisSpec(kind={:?}, kappa={}, lam={}, n={})",
            self.inner.kind, self.inner.kappa, self.inner.scale, self.inner.n_max
        )
    }
}

/// Short-range radial potential.
#[pyclass(name = "Potential", frozen)]
#[derive(Clone)]
struct PyPotential {
    inner: PotentialModel,
}

#[pymethods]
impl PyPotential {
    #[staticmethod]
    fn free() -> Self {
        Self { inner: PotentialModel::Free }
    }

    #[staticmethod]
    fn square_well(depth: f64, radius: f64) -> Self {
        Self { inner: PotentialModel::SquareWell { depth, radius } }
    }

    /// depth * exp(-range * r)
    #[staticmethod]
    fn exponential(depth: f64, range: f64) -> Self {
        Self { inner: PotentialModel::Exponential { depth, range } }
    }

    /// depth * exp(-(r / width)^2)
    #[staticmethod]
    fn gaussian(depth: f64, width: f64) -> Self {
        Self { inner: PotentialModel::Gaussian { depth, width } }
    }

    fn __call__(&self, r: f64) -> f64 {
        self.inner.evaluate(r)
    }

    fn __repr__(&self) -> String {
        format!("Potential({:?})", self.inner)
    }
}

/// Non-relativistic phase-shift result.
#[pyclass(name = "PhaseShift", frozen, get_all)]
struct PyPhaseShift {
    tan_delta: f64,
    delta: f64,
    pole_proximity: f64,
}

/// Relativistic phase-shift result.
#[pyclass(name = "RelPhaseShift", frozen, get_all)]
struct PyRelPhaseShift {
    tan_delta: f64,
    delta: f64,
    consistency_gap: f64,
    pole_proximity: f64,
}

/// tan(delta_N) from the truncated non-relativistic problem at energy E > 0.
#[pyfunction]
fn tan_delta(spec: &PyBasisSpec, potential: &PyPotential, energy: f64) -> PyResult<PyPhaseShift> {
    let r = nonrel::tan_delta(&spec.inner, &potential.inner, energy).map_err(err)?;
    Ok(PyPhaseShift {
        tan_delta: r.tan_delta,
        delta: r.delta,
        pole_proximity: r.pole_proximity,
    })
}

/// t-tilde_N from the truncated relativistic problem; `energy` is the
/// non-relativistic energy E = E_total - mc^2.
#[pyfunction]
#[pyo3(signature = (spec, potential, energy, *, mass=1.0, c=DEFAULT_LIGHT_SPEED))]
fn rel_tan_delta(
    spec: &PyBasisSpec,
    potential: &PyPotential,
    energy: f64,
    mass: f64,
    c: f64,
) -> PyResult<PyRelPhaseShift> {
    let kin = kinematics(mass, c, energy).map_err(err)?;
    let r = rel::rel_tan_delta(&spec.inner, &potential.inner, &kin).map_err(err)?;
    Ok(PyRelPhaseShift {
        tan_delta: r.tan_delta_tilde,
        delta: r.delta,
        consistency_gap: r.consistency_gap,
        pole_proximity: r.pole_proximity,
    })
}

/// Rows (c, tan_rel, tan_nonrel, gap) over ascending light speeds.
#[pyfunction]
fn nonrel_limit_scan(
    spec: &PyBasisSpec,
    potential: &PyPotential,
    energy: f64,
    c_values: Vec<f64>,
) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let rows = rel::nonrel_limit_scan(&spec.inner, &potential.inner, energy, &c_values)
        .map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.c, r.tan_rel, r.tan_nonrel, r.gap)).collect())
}

/// Direct radial Schroedinger integration reference.
#[pyfunction]
fn schrodinger_oracle(potential: &PyPotential, l: u32, energy: f64) -> PyResult<f64> {
    oracle::schrodinger_phase_shift(&potential.inner, l, energy, &Default::default()).map_err(err)
}

/// Direct radial Dirac integration reference; `energy` as in rel_tan_delta.
#[pyfunction]
#[pyo3(signature = (potential, kappa, energy, *, mass=1.0, c=DEFAULT_LIGHT_SPEED))]
fn dirac_oracle(
    potential: &PyPotential,
    kappa: i32,
    energy: f64,
    mass: f64,
    c: f64,
) -> PyResult<f64> {
    let kin = kinematics(mass, c, energy).map_err(err)?;
    oracle::dirac_phase_shift(&potential.inner, kappa, &kin, &Default::default()).map_err(err)
}

/// Closed-form s-wave square-well tangent.
#[pyfunction]
fn squarewell_tan_delta_analytic(depth: f64, radius: f64, energy: f64) -> PyResult<f64> {
    oracle::squarewell_tan_delta_analytic(depth, radius, energy).map_err(err)
}

#[pymodule]
fn jmatrix(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBasisSpec>()?;
    m.add_class::<PyPotential>()?;
    m.add_class::<PyPhaseShift>()?;
    m.add_class::<PyRelPhaseShift>()?;
    m.add_function(wrap_pyfunction!(tan_delta, m)?)?;
    m.add_function(wrap_pyfunction!(rel_tan_delta, m)?)?;
    m.add_function(wrap_pyfunction!(nonrel_limit_scan, m)?)?;
    m.add_function(wrap_pyfunction!(schrodinger_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(squarewell_tan_delta_analytic, m)?)?;
    m.add("DEFAULT_LIGHT_SPEED", DEFAULT_LIGHT_SPEED)?;
    Ok(())
}
