//! Python bindings: Lorentz kinematics, operator triples and their
//! certificates, helicity-bundle topology and the verification suites.

use nalgebra::Matrix4;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spinsplit::algebra::checks::{check_commuting, check_so3, check_vector_operator};
use spinsplit::algebra::closure::fit_structure_constants;
use spinsplit::algebra::SampleConfig;
use spinsplit::minkowski::{
    little_group_element, standard_boost, LorentzTransform, MomentumPoint, Rotation,
};
use spinsplit::representations::{self as reps, ChartId};
use spinsplit::suite::{self, ReportFormat, SuiteConfig};
use spinsplit::topology::{self, LoopPath};
use spinsplit::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Usage(_)
        | Error::Domain(_)
        | Error::Precondition(_)
        | Error::RankMismatch { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn chart(name: &str) -> PyResult<ChartId> {
    match name {
        "north" | "N" => Ok(ChartId::North),
        "south" | "S" => Ok(ChartId::South),
        _ => Err(PyValueError::new_err(format!("unknown chart `{name}`"))),
    }
}

fn rows4(l: &LorentzTransform) -> Vec<Vec<f64>> {
    (0..4)
        .map(|i| (0..4).map(|j| l.get(i, j)).collect())
        .collect()
}

fn lorentz(rows: Vec<Vec<f64>>) -> PyResult<LorentzTransform> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(PyValueError::new_err("expected a 4x4 matrix"));
    }
    let m = Matrix4::from_fn(|i, j| rows[i][j]);
    LorentzTransform::from_matrix(m).map_err(py_err)
}

/// Standard boost `L(k)` taking the reference momentum to `(k, mass)`, as rows.
#[pyfunction]
#[pyo3(signature = (k, mass = 0.0))]
fn standard_boost_matrix(k: [f64; 3], mass: f64) -> PyResult<Vec<Vec<f64>>> {
    let p = MomentumPoint::new(k, mass).map_err(py_err)?;
    Ok(rows4(&standard_boost(&p).map_err(py_err)?))
}

/// Little-group element `L(Λk)⁻¹ Λ L(k)`.
#[pyfunction]
#[pyo3(signature = (transform, k, mass = 0.0))]
fn wigner_element(transform: Vec<Vec<f64>>, k: [f64; 3], mass: f64) -> PyResult<Vec<Vec<f64>>> {
    let l = lorentz(transform)?;
    let p = MomentumPoint::new(k, mass).map_err(py_err)?;
    Ok(rows4(&little_group_element(&l, &p).map_err(py_err)?))
}

/// A triple of first-order differential operators on sections.
#[pyclass(name = "OperatorTriple", frozen)]
struct PyTriple {
    inner: reps::OperatorTriple,
}

#[pymethods]
impl PyTriple {
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Drift vector and fiber matrix of component `n` at `k`.
    fn coefficients(
        &self,
        n: usize,
        k: [f64; 3],
    ) -> PyResult<(Vec<Complex64>, Vec<Vec<Complex64>>)> {
        if n > 2 {
            return Err(PyValueError::new_err("component index must be 0, 1 or 2"));
        }
        let c = self.inner.get(n).coefficients(k).map_err(py_err)?;
        let r = c.fiber.rank();
        Ok((
            c.drift.to_vec(),
            (0..r)
                .map(|i| (0..r).map(|j| c.fiber.get(i, j)).collect())
                .collect(),
        ))
    }

    /// Largest normalized so(3) residual at seeded samples.
    #[pyo3(signature = (samples = 100, seed = 42))]
    fn so3_residual(&self, samples: usize, seed: u64) -> PyResult<f64> {
        Ok(
            check_so3(self.inner.ops(), &SampleConfig::new(samples, seed, 1e-8))
                .map_err(py_err)?
                .max_residual,
        )
    }

    #[pyo3(signature = (j, samples = 100, seed = 42))]
    fn vector_operator_residual(&self, j: &PyTriple, samples: usize, seed: u64) -> PyResult<f64> {
        let cfg = SampleConfig::new(samples, seed, 1e-8);
        Ok(check_vector_operator(self.inner.ops(), j.inner.ops(), &cfg)
            .map_err(py_err)?
            .max_residual)
    }

    #[pyo3(signature = (other, samples = 100, seed = 42))]
    fn commuting_residual(&self, other: &PyTriple, samples: usize, seed: u64) -> PyResult<f64> {
        let cfg = SampleConfig::new(samples, seed, 1e-8);
        Ok(check_commuting(self.inner.ops(), other.inner.ops(), &cfg)
            .map_err(py_err)?
            .max_residual)
    }

    /// `(max |c|, residual)` of the least-squares structure-constant fit.
    #[pyo3(signature = (samples = 100, seed = 42))]
    fn closure_fit(&self, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
        let fit =
            fit_structure_constants(self.inner.ops(), &SampleConfig::new(samples, seed, 1e-8))
                .map_err(py_err)?;
        Ok((fit.max_abs_constant(), fit.residual))
    }
}

fn wrap(t: reps::OperatorTriple) -> PyTriple {
    PyTriple { inner: t }
}

/// `(J, S, L)` of a massive spin-`s` particle.
#[pyfunction]
#[pyo3(signature = (s, mass = 1.0))]
fn massive_jsl(s: f64, mass: f64) -> PyResult<(PyTriple, PyTriple, PyTriple)> {
    let m = reps::build_massive_JSL(s, mass).map_err(py_err)?;
    Ok((wrap(m.j), wrap(m.s), wrap(m.l)))
}

/// Total angular momentum of the helicity-`h` bundle on one chart.
#[pyfunction]
#[pyo3(signature = (h, chart_name = "north"))]
fn massless_j(h: i32, chart_name: &str) -> PyResult<PyTriple> {
    Ok(wrap(
        reps::build_massless_J(h, chart(chart_name)?).map_err(py_err)?,
    ))
}

/// `(J∥, J⊥)` of a total angular momentum.
#[pyfunction]
fn split_parallel_perp(j: &PyTriple) -> PyResult<(PyTriple, PyTriple)> {
    let (a, b) = reps::build_parallel_perp(&j.inner).map_err(py_err)?;
    Ok((wrap(a), wrap(b)))
}

#[pyfunction]
#[pyo3(signature = (h, samples = 100, seed = 42))]
fn helicity_residual(h: i32, samples: usize, seed: u64) -> PyResult<f64> {
    let j = reps::build_massless_J(h, ChartId::North).map_err(py_err)?;
    reps::massless::helicity_eigenvalue_residual(&j, h, &SampleConfig::new(samples, seed, 1e-9))
        .map_err(py_err)
}

/// Lattice Chern number of the helicity-`h` line bundle.
#[pyfunction]
#[pyo3(signature = (h, mesh_level = 4))]
fn chern_number(h: i32, mesh_level: u32) -> PyResult<i64> {
    let frame = reps::line_frame(h, ChartId::North).map_err(py_err)?;
    let mesh = topology::icosphere(mesh_level).map_err(py_err)?;
    Ok(topology::chern_number(&frame, &mesh).map_err(py_err)?.chern)
}

#[pyfunction]
#[pyo3(signature = (helicities, mesh_level = 4))]
fn whitney_sum_chern(helicities: Vec<i32>, mesh_level: u32) -> PyResult<i64> {
    let frames = helicities
        .iter()
        .map(|&h| reps::helicity_frame(h, ChartId::North))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let mesh = topology::icosphere(mesh_level).map_err(py_err)?;
    Ok(topology::whitney_sum_chern(&frames, &mesh)
        .map_err(py_err)?
        .chern)
}

/// Berry holonomy around a geodesic polygon, and the polygon's solid angle.
#[pyfunction]
#[pyo3(signature = (h, corners, steps = 200))]
fn berry_holonomy(h: i32, corners: Vec<[f64; 3]>, steps: usize) -> PyResult<(Complex64, f64)> {
    let frame = reps::line_frame(h, ChartId::North).map_err(py_err)?;
    let path = LoopPath::geodesic_polygon(&corners, steps).map_err(py_err)?;
    Ok((
        topology::berry_holonomy(&frame, &path).map_err(py_err)?,
        path.solid_angle(),
    ))
}

/// Spin-1 SAM descent witness for `k`, `A`, `α` and a rotation about `axis`.
#[pyfunction]
fn sam_descent(
    k: [f64; 3],
    a: [Complex64; 3],
    alpha: f64,
    axis: [f64; 3],
    angle: f64,
) -> PyResult<f64> {
    let r = Rotation::from_axis_angle(axis, angle).map_err(py_err)?;
    Ok(reps::sam_descent_counterexample(k, &a, alpha, &r)
        .map_err(py_err)?
        .distance)
}

/// Runs a suite and returns the report text. `config` is TOML; the keyword
/// arguments override it.
#[pyfunction]
#[pyo3(signature = (name, config = None, seed = None, samples = None, format = "json"))]
fn run_suite(
    py: Python<'_>,
    name: &str,
    config: Option<&str>,
    seed: Option<u64>,
    samples: Option<usize>,
    format: &str,
) -> PyResult<String> {
    let mut cfg = match config {
        Some(text) => SuiteConfig::from_toml_str(text).map_err(py_err)?,
        None => SuiteConfig::default(),
    };
    cfg.suite = name.into();
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = samples {
        cfg.samples = n;
    }
    let fmt: ReportFormat = format.parse().map_err(py_err)?;
    let report = py.detach(|| suite::run_suite(&cfg)).map_err(py_err)?;
    Ok(suite::emit_report(&report, fmt))
}

#[pymodule]
fn spinsplit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTriple>()?;
    m.add_function(wrap_pyfunction!(standard_boost_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_element, m)?)?;
    m.add_function(wrap_pyfunction!(massive_jsl, m)?)?;
    m.add_function(wrap_pyfunction!(massless_j, m)?)?;
    m.add_function(wrap_pyfunction!(split_parallel_perp, m)?)?;
    m.add_function(wrap_pyfunction!(helicity_residual, m)?)?;
    m.add_function(wrap_pyfunction!(chern_number, m)?)?;
    m.add_function(wrap_pyfunction!(whitney_sum_chern, m)?)?;
    m.add_function(wrap_pyfunction!(berry_holonomy, m)?)?;
    m.add_function(wrap_pyfunction!(sam_descent, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
