//! Python bindings: complexes, colourings, map search, complexity and the verify harness.

use std::collections::BTreeMap;
use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use facetcx::complexity::{bounds_with, compute_with, Complexity, ComplexityQuery, ComputeOptions};
use facetcx::homsearch::{find_map as search, MapKind, SearchLimits, SearchProblem, SearchStatus};
use facetcx::verify::{verify as run_verify, VerifyConfig};
use facetcx::{fixtures, parse_scx, serialize_scx, Error};

type CoverGroups = Vec<(Vec<Vec<String>>, BTreeMap<String, String>)>;

fn err(e: Error) -> PyErr {
    match e {
        Error::Undecided { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_kind(kind: &str) -> PyResult<MapKind> {
    kind.parse().map_err(err)
}

fn limits(node_budget: Option<u64>, time_budget: Option<f64>) -> SearchLimits {
    let mut l = SearchLimits::default();
    if let Some(n) = node_budget {
        l.node_budget = n;
    }
    l.time_budget = time_budget.map(Duration::from_secs_f64);
    l
}

/// An abstract simplicial complex stored by its facets.
#[pyclass(name = "Complex", module = "facetcx", frozen, from_py_object)]
#[derive(Clone)]
struct PyComplex {
    inner: facetcx::Complex,
}

#[pymethods]
impl PyComplex {
    #[new]
    #[pyo3(signature = (faces, vertices = None, name = None))]
    fn new(faces: Vec<Vec<String>>, vertices: Option<Vec<String>>, name: Option<String>) -> PyResult<Self> {
        let mut c = facetcx::Complex::build(&faces, vertices.as_deref()).map_err(err)?;
        if let Some(n) = name {
            c = c.with_name(n);
        }
        Ok(PyComplex { inner: c })
    }

    /// Parse `.scx` text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyComplex { inner: parse_scx(text).map_err(err)? })
    }

    #[staticmethod]
    fn gamma(n: usize) -> PyResult<Self> {
        Ok(PyComplex { inner: facetcx::Complex::gamma(n).map_err(err)? })
    }

    /// All proper faces of an `n`-vertex simplex.
    #[staticmethod]
    fn boundary(n: usize) -> PyResult<Self> {
        Ok(PyComplex { inner: facetcx::Complex::boundary(n).map_err(err)? })
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name)
            .map(|inner| PyComplex { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))
    }

    #[staticmethod]
    #[pyo3(signature = (parts, disjoint = false))]
    fn union(parts: Vec<PyComplex>, disjoint: bool) -> PyResult<Self> {
        let parts: Vec<facetcx::Complex> = parts.into_iter().map(|p| p.inner).collect();
        Ok(PyComplex { inner: facetcx::Complex::union(&parts, disjoint).map_err(err)? })
    }

    fn to_scx(&self) -> String {
        serialize_scx(&self.inner)
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_string)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<String>> {
        self.inner.facets().iter().map(|f| self.inner.names(*f)).collect()
    }

    #[getter]
    fn dim(&self) -> isize {
        self.inner.dim()
    }

    #[getter]
    fn eta(&self) -> usize {
        self.inner.eta()
    }

    fn skeleton(&self, q: usize) -> Self {
        PyComplex { inner: self.inner.skeleton(q) }
    }

    fn metrics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.metrics())
    }

    fn __len__(&self) -> usize {
        self.inner.eta()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Complex({})", self.inner)
    }
}

/// χ(c) and an optimal colouring as a label -> colour dict.
#[pyfunction]
#[pyo3(signature = (c, graph = false))]
fn chromatic_number(c: &PyComplex, graph: bool) -> (usize, BTreeMap<String, usize>) {
    let chi = if graph {
        facetcx::graph_chromatic_number(&c.inner.underlying_graph())
    } else {
        facetcx::chromatic_number(&c.inner)
    };
    (chi.value, chi.witness.as_map())
}

/// A map with the requested properties as a dict, or None when none exists.
#[pyfunction]
#[pyo3(signature = (source, target, kind = "facet", injective = false, node_budget = None, time_budget = None))]
fn find_map(
    source: &PyComplex,
    target: &PyComplex,
    kind: &str,
    injective: bool,
    node_budget: Option<u64>,
    time_budget: Option<f64>,
) -> PyResult<Option<BTreeMap<String, String>>> {
    let p = SearchProblem {
        limits: limits(node_budget, time_budget),
        ..SearchProblem::new(&source.inner, &target.inner, parse_kind(kind)?, injective)
    };
    let outcome = search(&p);
    match outcome.status {
        SearchStatus::Found(m) => {
            Ok(Some(m.pairs().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()))
        }
        SearchStatus::NotFound => Ok(None),
        SearchStatus::Undecided => {
            Err(PyRuntimeError::new_err(format!("search undecided after {} nodes", outcome.nodes)))
        }
    }
}

/// Exact complexity with a certificate cover; infinity is reported as `math.inf`.
#[pyfunction]
#[pyo3(signature = (source, target, kind = "facet", injective = false, facet_cap = None, node_budget = None, time_budget = None))]
#[allow(clippy::too_many_arguments)]
fn complexity<'py>(
    py: Python<'py>,
    source: &PyComplex,
    target: &PyComplex,
    kind: &str,
    injective: bool,
    facet_cap: Option<usize>,
    node_budget: Option<u64>,
    time_budget: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let q = ComplexityQuery::new(&source.inner, &target.inner, parse_kind(kind)?, injective);
    let mut opts = ComputeOptions { limits: limits(node_budget, time_budget), ..Default::default() };
    if let Some(cap) = facet_cap {
        opts.facet_cap = cap;
    }
    let r = compute_with(&q, &opts).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("symbol", q.symbol())?;
    match r.value {
        Complexity::Finite(n) => out.set_item("value", n)?,
        Complexity::Infinite => out.set_item("value", f64::INFINITY)?,
    }
    let groups: CoverGroups = r
        .cover
        .map(|c| {
            c.groups
                .iter()
                .map(|g| {
                    let facets = g.facets.iter().map(|f| source.inner.names(*f)).collect();
                    let map = g.map.pairs().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
                    (facets, map)
                })
                .collect()
        })
        .unwrap_or_default();
    out.set_item("cover", groups)?;
    out.set_item("probes", r.probes)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (source, target, kind = "facet", injective = false))]
fn bounds<'py>(
    py: Python<'py>,
    source: &PyComplex,
    target: &PyComplex,
    kind: &str,
    injective: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let q = ComplexityQuery::new(&source.inner, &target.inner, parse_kind(kind)?, injective);
    to_py(py, &bounds_with(&q, &ComputeOptions::default()).map_err(err)?)
}

/// Run the seeded property suites and return the report as a dict.
#[pyfunction]
#[pyo3(signature = (seed = 1, trials = 200, properties = None, fixtures = true))]
fn verify<'py>(
    py: Python<'py>,
    seed: u64,
    trials: usize,
    properties: Option<Vec<String>>,
    fixtures: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = VerifyConfig { seed, trials, properties, fixtures, observations: false, ..Default::default() };
    to_py(py, &run_verify(&cfg).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "facetcx")]
fn facetcx_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(find_map, m)?)?;
    m.add_function(wrap_pyfunction!(complexity, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
