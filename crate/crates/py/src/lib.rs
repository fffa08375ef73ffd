//! Python bindings. Rationals come back as `fractions.Fraction`, integer vectors as
//! lists of Python ints.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use toric_kit::cones::{self, RationalCone};
use toric_kit::linalg::Q;
use toric_kit::polytope::{self, Polytope as CorePolytope};
use toric_kit::sparse::{self, PolySystem};
use toric_kit::toric::{self, GroebnerConfig, TermOrder};
use toric_kit::{volume, Error, SupportSet};

fn err(e: Error) -> PyErr {
    match e {
        Error::Numerical(_) | Error::Unsupported(_) | Error::BudgetExceeded(_) | Error::Overflow => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn support(points: Vec<Vec<BigInt>>) -> PyResult<SupportSet> {
    let dim = points.first().map(Vec::len).ok_or_else(|| PyValueError::new_err("empty point set"))?;
    SupportSet::new(dim, points).map_err(err)
}

fn frac<'py>(py: Python<'py>, q: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

fn fracs<'py>(py: Python<'py>, v: &[Q]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.iter().map(|q| frac(py, q)).collect()
}

/// A convex polytope given as the hull of integer points.
#[pyclass(module = "toric_kit", frozen)]
struct Polytope {
    inner: CorePolytope,
}

#[pymethods]
impl Polytope {
    #[new]
    fn new(points: Vec<Vec<BigInt>>) -> PyResult<Self> {
        Ok(Polytope { inner: polytope::convex_hull_support(&support(points)?).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim
    }

    #[getter]
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.vertices.iter().map(|v| fracs(py, v)).collect()
    }

    /// Pairs `(normal, offset)` with `normal . x <= offset` on the polytope.
    #[getter]
    fn facets<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<BigInt>, Bound<'py, PyAny>)>> {
        self.inner.facets.iter().map(|h| Ok((h.normal.clone(), frac(py, &h.offset)?))).collect()
    }

    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        frac(py, &volume::volume(&self.inner))
    }

    fn normalized_volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        frac(py, &volume::normalized_volume(&self.inner))
    }

    fn lattice_point_count(&self) -> BigInt {
        volume::count_lattice_points(&self.inner)
    }

    /// Ehrhart polynomial coefficients, constant term first.
    fn ehrhart<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fracs(py, &volume::ehrhart(&self.inner).map_err(err)?.coefficients)
    }

    /// Normal fan as `{"rays": [...], "maximal": [[ray indices], ...], "complete": bool}`.
    fn normal_fan<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let fan = cones::normal_fan(&self.inner).map_err(err)?;
        let rays = fan.rays();
        let maximal: Vec<Vec<usize>> = fan
            .maximal_cones()
            .into_iter()
            .map(|i| fan.cones[i].rays.iter().filter_map(|r| rays.iter().position(|x| x == r)).collect())
            .collect();
        let d = PyDict::new(py);
        d.set_item("rays", rays)?;
        d.set_item("maximal", maximal)?;
        d.set_item("complete", fan.complete)?;
        Ok(d)
    }

    fn __add__(&self, other: &Polytope) -> PyResult<Polytope> {
        Ok(Polytope { inner: polytope::minkowski_sum(&self.inner, &other.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, ambient_dim={}, vertices={})",
            self.inner.dim,
            self.inner.ambient_dim,
            self.inner.vertices.len()
        )
    }
}

/// A rational polyhedral cone spanned by integer rays.
#[pyclass(module = "toric_kit", frozen)]
struct Cone {
    inner: RationalCone,
}

#[pymethods]
impl Cone {
    #[new]
    fn new(rays: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let dim = rays.first().map(Vec::len).ok_or_else(|| PyValueError::new_err("no rays"))?;
        Ok(Cone { inner: RationalCone::from_rays(dim, &rays).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.inner.rays.clone()
    }

    /// Inner facet normals.
    #[getter]
    fn halfspaces(&self) -> Vec<Vec<BigInt>> {
        self.inner.halfspaces.clone()
    }

    fn dual(&self) -> Cone {
        Cone { inner: cones::dual_cone(&self.inner) }
    }

    fn hilbert_basis(&self) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(cones::hilbert_basis(&self.inner).map_err(err)?.points)
    }

    fn contains(&self, x: Vec<BigInt>) -> bool {
        self.inner.contains(&x)
    }

    fn __repr__(&self) -> String {
        format!("Cone(dim={}, rays={:?})", self.inner.dim, self.inner.rays)
    }
}

/// Mixed volume of `n` polytopes in dimension `n`.
#[pyfunction]
fn mixed_volume<'py>(py: Python<'py>, polytopes: Vec<PyRef<'py, Polytope>>) -> PyResult<Bound<'py, PyAny>> {
    let refs: Vec<&CorePolytope> = polytopes.iter().map(|p| &p.inner).collect();
    frac(py, &volume::mixed_volume(&refs).map_err(err)?.mv)
}

/// Reduced Gröbner basis of the toric ideal of the points, as `(plus, minus, text)`
/// triples for the binomials `z^plus - z^minus`.
#[pyfunction]
#[pyo3(signature = (points, order = "degrevlex", weights = None))]
fn toric_ideal(
    points: Vec<Vec<BigInt>>,
    order: &str,
    weights: Option<Vec<i64>>,
) -> PyResult<Vec<(Vec<BigInt>, Vec<BigInt>, String)>> {
    let a = support(points)?;
    let n = a.len();
    let base = match order {
        "degrevlex" => TermOrder::degrevlex(n),
        "lex" => TermOrder::lex(n),
        other => return Err(PyValueError::new_err(format!("unknown order {other:?}"))),
    };
    let ord = match weights {
        Some(w) => TermOrder::weighted(w, base),
        None => base,
    };
    ord.validate(n).map_err(err)?;
    let gb = toric::toric_groebner_with(&a, &ord, &GroebnerConfig::default()).map_err(err)?;
    let names: Vec<String> = a
        .points
        .iter()
        .map(|p| format!("z({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Ok(gb.generators.iter().map(|b| (b.plus(), b.minus(), b.format_with(&names))).collect())
}

/// `|dA|` for `d = 0..=max_degree`.
#[pyfunction]
fn hilbert_function(points: Vec<Vec<BigInt>>, max_degree: usize) -> PyResult<Vec<usize>> {
    toric::sumset_sizes(&support(points)?, max_degree).map_err(err)
}

#[pyfunction]
fn hilbert_polynomial<'py>(py: Python<'py>, points: Vec<Vec<BigInt>>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fracs(py, &toric::hilbert_polynomial(&support(points)?).map_err(err)?.coefficients)
}

#[pyfunction]
fn kushnirenko_bound(points: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    sparse::kushnirenko_bound(&support(points)?).map_err(err)
}

fn parse_system(variables: Vec<String>, polynomials: Vec<String>) -> PyResult<PolySystem> {
    let v: Vec<&str> = variables.iter().map(String::as_str).collect();
    let p: Vec<&str> = polynomials.iter().map(String::as_str).collect();
    PolySystem::parse(&v, &p).map_err(err)
}

#[pyfunction]
fn bernstein_bound(variables: Vec<String>, polynomials: Vec<String>) -> PyResult<BigInt> {
    sparse::bernstein_bound(&parse_system(variables, polynomials)?).map_err(err)
}

/// Genericity verdict: `"GENERIC"`, `"DEGENERATE"` or `"UNDECIDED"`.
#[pyfunction]
fn genericity(variables: Vec<String>, polynomials: Vec<String>) -> PyResult<String> {
    let report = sparse::genericity_check(&parse_system(variables, polynomials)?).map_err(err)?;
    Ok(format!("{:?}", report.verdict).to_uppercase())
}

/// Isolated solutions in the complex torus of two equations in two unknowns, as
/// `(coordinates, multiplicity)` pairs.
#[pyfunction]
#[pyo3(signature = (variables, polynomials, tol = sparse::DEFAULT_TOL))]
fn solve2(variables: Vec<String>, polynomials: Vec<String>, tol: f64) -> PyResult<Vec<(Vec<Complex64>, u32)>> {
    let sols = sparse::solve_bivariate(&parse_system(variables, polynomials)?, tol).map_err(err)?;
    Ok(sols.into_iter().map(|s| (s.coordinates, s.multiplicity)).collect())
}

#[pymodule]
#[pyo3(name = "toric_kit")]
fn toric_kit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polytope>()?;
    m.add_class::<Cone>()?;
    m.add_function(wrap_pyfunction!(mixed_volume, m)?)?;
    m.add_function(wrap_pyfunction!(toric_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_function, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(kushnirenko_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bernstein_bound, m)?)?;
    m.add_function(wrap_pyfunction!(genericity, m)?)?;
    m.add_function(wrap_pyfunction!(solve2, m)?)?;
    Ok(())
}
