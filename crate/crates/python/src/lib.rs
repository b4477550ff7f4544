//! Python bindings: ring specs, intersection graphs, the classification
//! report and the cycle constructions.

use idealgraph_core::classify::classify_report;
use idealgraph_core::graph::{
    compute_properties, export_dot, validate_cycle, GraphJson, LabelMode,
};
use idealgraph_core::hamcycle::{construct_hamiltonian, pancyclic_family, predict_hamiltonian};
use idealgraph_core::rings::{enumerate_ideals, max_independent_family, parse_ring_spec};
use idealgraph_core::sweep::{run_sweep, SweepConfig};
use idealgraph_core::{Caps, CycleWitness, IntersectionGraph, RingSpec};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

create_exception!(idealgraph, IdealGraphError, PyValueError);

fn err(e: idealgraph_core::Error) -> PyErr {
    IdealGraphError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| IdealGraphError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A finite commutative ring written as a product of local blocks.
#[pyclass(
    name = "RingSpec",
    module = "idealgraph",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Hash)]
struct PyRingSpec {
    inner: RingSpec,
}

#[pymethods]
impl PyRingSpec {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyRingSpec {
            inner: parse_ring_spec(text).map_err(err)?,
        })
    }

    #[getter]
    fn blocks(&self) -> Vec<String> {
        self.inner.blocks.iter().map(|b| b.to_string()).collect()
    }

    #[getter]
    fn ideal_count(&self) -> u128 {
        self.inner.ideal_count()
    }

    #[getter]
    fn nontrivial_count(&self) -> u128 {
        self.inner.nontrivial_count()
    }

    #[getter]
    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    /// Labels of every ideal, whole ring first and zero last.
    fn ideals(&self) -> PyResult<Vec<String>> {
        let ideals = enumerate_ideals(&self.inner, Caps::default().ideals).map_err(err)?;
        Ok(ideals.iter().map(|i| i.label()).collect())
    }

    /// Size of a largest independent family, up to `limit`, with the
    /// family itself.
    #[pyo3(signature = (limit = 64))]
    fn max_independent_family(&self, limit: usize) -> PyResult<(usize, Vec<String>)> {
        let (n, fam) = max_independent_family(&self.inner, limit, Caps::default().independence)
            .map_err(err)?;
        Ok((n, fam.members.iter().map(|m| m.label()).collect()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingSpec('{}')", self.inner)
    }
}

#[derive(FromPyObject)]
enum SpecArg {
    Spec(PyRingSpec),
    Text(String),
}

impl SpecArg {
    fn into_spec(self) -> PyResult<RingSpec> {
        match self {
            SpecArg::Spec(s) => Ok(s.inner),
            SpecArg::Text(t) => parse_ring_spec(&t).map_err(err),
        }
    }
}

fn caps_with(oracle_cap: Option<usize>) -> Caps {
    let mut caps = Caps::from_env();
    if let Some(c) = oracle_cap {
        caps.hamiltonian = c;
    }
    caps
}

/// The intersection graph of the nontrivial ideals of a ring.
#[pyclass(name = "Graph", module = "idealgraph", frozen)]
struct PyGraph {
    inner: IntersectionGraph,
    caps: Caps,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (spec, oracle_cap = None))]
    fn new(spec: SpecArg, oracle_cap: Option<usize>) -> PyResult<Self> {
        let caps = caps_with(oracle_cap);
        let inner = IntersectionGraph::build(&spec.into_spec()?, &caps).map_err(err)?;
        Ok(PyGraph { inner, caps })
    }

    #[getter]
    fn spec(&self) -> PyRingSpec {
        PyRingSpec {
            inner: self.inner.spec().clone(),
        }
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn labels(&self) -> Vec<String> {
        (0..self.inner.vertex_count())
            .map(|i| self.inner.label(i))
            .collect()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn adjacent(&self, i: usize, j: usize) -> PyResult<bool> {
        let n = self.inner.vertex_count();
        if i >= n || j >= n {
            return Err(IdealGraphError::new_err(format!(
                "vertex out of range for {n} vertices"
            )));
        }
        Ok(self.inner.adjacent(i, j))
    }

    fn properties<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let props = compute_properties(&self.inner);
        let mut v =
            serde_json::to_value(&props).map_err(|e| IdealGraphError::new_err(e.to_string()))?;
        v["shape"] = Value::String(props.shape().to_string());
        to_py(py, &v)
    }

    #[pyo3(signature = (index_labels = false))]
    fn to_dot(&self, index_labels: bool) -> String {
        let mode = if index_labels {
            LabelMode::Index
        } else {
            LabelMode::Ideal
        };
        export_dot(&self.inner, mode)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialize(py, &GraphJson::new(&self.inner))
    }

    /// Whether the vertex indices form a cycle of the graph.
    fn is_cycle(&self, vertices: Vec<usize>) -> bool {
        validate_cycle(&self.inner, &CycleWitness::new(vertices)).is_ok()
    }

    /// Every check of the classification report, as a dict.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = classify_report(&self.inner, &self.caps).map_err(err)?;
        serialize(py, &report)
    }

    fn hamiltonian_cycle<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let g = &self.inner;
        let out = construct_hamiltonian(g, &self.caps).map_err(err)?;
        let dict = PyDict::new(py);
        dict.set_item("status", out.status.to_string())?;
        dict.set_item("strategy", out.strategy.to_string())?;
        dict.set_item("note", out.note.clone())?;
        dict.set_item(
            "cycle",
            out.witness.as_ref().map(|w| w.vertex_indices.clone()),
        )?;
        dict.set_item("labels", out.witness.as_ref().map(|w| w.labels(g)))?;
        Ok(dict.into_any())
    }

    /// Cycles keyed by length, as lists of vertex indices.
    fn pancyclic<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let fam = pancyclic_family(&self.inner, &self.caps).map_err(err)?;
        let dict = PyDict::new(py);
        for (len, w) in &fam.cycles {
            dict.set_item(len, w.vertex_indices.clone())?;
        }
        Ok(dict)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph('{}', vertices={}, edges={})",
            self.inner.spec(),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// `True`, `False`, or `None` when the ring is outside what the
/// structure theory decides.
#[pyfunction]
fn predict_hamiltonian_for(spec: SpecArg) -> PyResult<(Option<bool>, Option<String>)> {
    let p = predict_hamiltonian(&spec.into_spec()?);
    Ok((p.as_bool(), p.tag().map(|t| t.to_string())))
}

#[pyfunction]
#[pyo3(signature = (max_vertices = 14, block_budget = 4, q_values = vec![2, 3, 4, 5], chain_k_max = 4, vs_params = vec![(2, 2), (3, 2)], parallel = 0))]
fn sweep<'py>(
    py: Python<'py>,
    max_vertices: usize,
    block_budget: usize,
    q_values: Vec<u32>,
    chain_k_max: u32,
    vs_params: Vec<(u32, u32)>,
    parallel: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let config = SweepConfig {
        max_vertices,
        block_budget,
        q_values,
        chain_k_max,
        vs_params,
        parallel,
        include_reports: false,
        caps: Caps::from_env(),
    };
    let report = py.detach(|| run_sweep(&config, false)).map_err(err)?;
    serialize(py, &report)
}

#[pymodule]
fn idealgraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("IdealGraphError", m.py().get_type::<IdealGraphError>())?;
    m.add_class::<PyRingSpec>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(predict_hamiltonian_for, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
