// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Python bindings for graph loading, routing and circuit synthesis.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use routesynth::circuit::{decompose, Circuit};
use routesynth::hash::{accept_probability as accept, is_good_set as good, verify_hash};
use routesynth::qasm::to_qasm;
use routesynth::qft::verify_qft;
use routesynth::report::{hash_report, qft_report, SynthesisReport, Verification};
use routesynth::{
    construct_hash, construct_qft, shortest_covering_walk, shortest_paths, ActiveSet, Error,
    HashStrategy, HashingAngles, Router, WalkMode,
};

const TOLERANCE: f64 = 1e-9;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_router(name: Option<&str>, n: usize) -> PyResult<Router> {
    match name {
        None => Ok(Router::auto(n)),
        Some("exact") => Ok(Router::exact()),
        Some("two_opt") => Ok(Router::TwoOpt),
        Some(other) => Err(PyValueError::new_err(format!("unknown router {other:?}"))),
    }
}

/// Connected coupling graph.
#[pyclass(
    name = "CouplingGraph",
    module = "routesynth_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
pub struct PyCouplingGraph {
    inner: routesynth::CouplingGraph,
    label: String,
}

#[pymethods]
impl PyCouplingGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = routesynth::CouplingGraph::new(n, &edges).map_err(py_err)?;
        Ok(Self {
            inner,
            label: format!("custom:{n}"),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    /// Hop-distance matrix.
    fn distances(&self) -> PyResult<Vec<Vec<u32>>> {
        let t = shortest_paths(&self.inner).map_err(py_err)?;
        let n = self.inner.n();
        Ok((0..n)
            .map(|v| (0..n).map(|u| t.distance(v, u)).collect())
            .collect())
    }

    /// Shortest covering walk; `mode` is "open", "closed" or a start vertex.
    #[pyo3(signature = (mode = None, start = None, router = None))]
    fn covering_walk(
        &self,
        mode: Option<&str>,
        start: Option<usize>,
        router: Option<&str>,
    ) -> PyResult<Vec<usize>> {
        let n = self.inner.n();
        let mode = match (mode.unwrap_or("open"), start) {
            ("open", None) => WalkMode::Open,
            ("open", Some(v)) => WalkMode::FixedStart(v),
            ("closed", None) => WalkMode::Closed,
            (m, _) => return Err(PyValueError::new_err(format!("bad walk mode {m:?}"))),
        };
        let walk = shortest_covering_walk(
            &self.inner,
            &ActiveSet::all(n),
            mode,
            parse_router(router, n)?,
        )
        .map_err(py_err)?;
        Ok(walk.vertices)
    }

    fn __repr__(&self) -> String {
        format!("CouplingGraph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// A synthesized circuit with its report.
#[pyclass(name = "Synthesis", module = "routesynth_py", frozen)]
pub struct PySynthesis {
    circuit: Circuit,
    report: SynthesisReport,
}

#[pymethods]
impl PySynthesis {
    #[getter]
    fn cnot_cost(&self) -> usize {
        self.report.cnot_cost
    }

    #[getter]
    fn initial_mapping(&self) -> Vec<usize> {
        self.report.initial_mapping.clone()
    }

    #[getter]
    fn final_mapping(&self) -> Vec<usize> {
        self.report.final_mapping.clone()
    }

    #[getter]
    fn walks(&self) -> Vec<Vec<usize>> {
        self.report
            .walks
            .iter()
            .map(|w| w.vertices.clone())
            .collect()
    }

    #[getter]
    fn bounds_pass(&self) -> bool {
        self.report.bounds_pass()
    }

    /// `None` unless verification was requested.
    #[getter]
    fn verified(&self) -> Option<bool> {
        self.report.verification.as_ref().map(|v| v.passed)
    }

    fn qasm(&self) -> String {
        to_qasm(&decompose(&self.circuit))
    }

    fn report_json(&self) -> String {
        self.report.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Synthesis(algorithm={}, n={}, cnot_cost={})",
            self.report.algorithm, self.report.n, self.report.cnot_cost
        )
    }
}

#[pyfunction]
fn load_graph(spec: &str) -> PyResult<PyCouplingGraph> {
    let inner = routesynth::load_graph(spec).map_err(py_err)?;
    Ok(PyCouplingGraph {
        inner,
        label: spec.to_string(),
    })
}

#[pyfunction]
#[pyo3(signature = (graph, router = None, verify = false))]
fn synthesize_qft(
    graph: &PyCouplingGraph,
    router: Option<&str>,
    verify: bool,
) -> PyResult<PySynthesis> {
    let router = parse_router(router, graph.inner.n())?;
    let s = construct_qft(&graph.inner, router).map_err(py_err)?;
    let mut report = qft_report(&graph.label, router, &s);
    if verify {
        report.verification = Some(Verification {
            tolerance: TOLERANCE,
            passed: verify_qft(&s, TOLERANCE).map_err(py_err)?,
        });
    }
    Ok(PySynthesis {
        circuit: s.circuit,
        report,
    })
}

/// `angles` holds one list of n-1 radians per step; when omitted, default
/// angles are repeated `steps` times.
#[pyfunction]
#[pyo3(signature = (graph, angles = None, steps = 1, strategy = "path", router = None, verify = false))]
fn synthesize_hash(
    graph: &PyCouplingGraph,
    angles: Option<Vec<Vec<f64>>>,
    steps: usize,
    strategy: &str,
    router: Option<&str>,
    verify: bool,
) -> PyResult<PySynthesis> {
    let n = graph.inner.n();
    let router = parse_router(router, n)?;
    let strategy = match strategy {
        "path" => HashStrategy::Path,
        "cycle" => HashStrategy::Cycle,
        other => return Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
    };
    let angles = match angles {
        Some(a) => HashingAngles::new(n, a),
        None => HashingAngles::default_for(n, steps),
    }
    .map_err(py_err)?;
    let h = construct_hash(&graph.inner, &angles, strategy, router).map_err(py_err)?;
    let mut report = hash_report(&graph.label, router, &h);
    if verify {
        report.verification = Some(Verification {
            tolerance: TOLERANCE,
            passed: verify_hash(&h, &angles, TOLERANCE).map_err(py_err)?,
        });
    }
    Ok(PySynthesis {
        circuit: h.circuit,
        report,
    })
}

#[pyfunction]
fn accept_probability(k: Vec<u64>, m: u64, g: i64) -> PyResult<f64> {
    if m == 0 || k.is_empty() {
        return Err(PyValueError::new_err(
            "need m >= 1 and a nonempty parameter set",
        ));
    }
    Ok(accept(&k, m, g))
}

#[pyfunction]
fn is_good_set(k: Vec<u64>, m: u64, eps: f64) -> PyResult<bool> {
    if m < 2 || k.is_empty() {
        return Err(PyValueError::new_err(
            "need m >= 2 and a nonempty parameter set",
        ));
    }
    Ok(good(&k, m, eps))
}

#[pymodule]
fn routesynth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCouplingGraph>()?;
    m.add_class::<PySynthesis>()?;
    m.add_function(wrap_pyfunction!(load_graph, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_qft, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_hash, m)?)?;
    m.add_function(wrap_pyfunction!(accept_probability, m)?)?;
    m.add_function(wrap_pyfunction!(is_good_set, m)?)?;
    Ok(())
}
