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

//! Python bindings for pathcolor.

use std::collections::BTreeMap;
use std::fmt::Display;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pathcolor::coloring::{self, ConflictGraph, Mode};
use pathcolor::encoding;
use pathcolor::generators;
use pathcolor::graph::{SystemGraph, VertexId};
use pathcolor::harness::{self, EnumerationPolicy, RunConfig};
use pathcolor::models;
use pathcolor::routing::{self, Interaction, PathSet, RoutingParams};
use pathcolor::PauliString;

fn err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode(name: &str) -> PyResult<Mode> {
    name.parse().map_err(PyValueError::new_err)
}

type Paths = BTreeMap<usize, Vec<Vec<VertexId>>>;

fn to_path_set(paths: Paths) -> PathSet {
    let mut ps = PathSet::default();
    for (id, p) in paths {
        ps.insert(id, p);
    }
    ps
}

fn from_path_set(ps: &PathSet, n: usize) -> Paths {
    (0..n).filter_map(|id| ps.get(id).map(|p| (id, p.to_vec()))).collect()
}

/// Pauli string with an exact phase in {1, i, -1, -i}.
#[pyclass(name = "PauliString", module = "pathcolor", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyPauliString(PauliString);

#[pymethods]
impl PyPauliString {
    /// Parses text such as `"+ X0 Z3"`, `"-i Y2"` or `"+ I"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(PauliString::identity())
    }

    /// Phase as the exponent k of i^k.
    #[getter]
    fn phase(&self) -> u8 {
        self.0.phase().exponent()
    }

    fn support(&self) -> Vec<u32> {
        self.0.support().into_iter().collect()
    }

    fn weight(&self) -> usize {
        self.0.weight()
    }

    fn commutes(&self, other: &PyPauliString) -> bool {
        self.0.commutes(&other.0)
    }

    fn __mul__(&self, other: &PyPauliString) -> Self {
        Self(self.0.multiply(&other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliString('{}')", self.0)
    }
}

/// One Hamiltonian term: endpoint pairs needing paths plus vertex-operator
/// targets.
#[pyclass(name = "Interaction", module = "pathcolor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInteraction(Interaction);

#[pymethods]
impl PyInteraction {
    #[new]
    #[pyo3(signature = (pairs, b_targets = Vec::new()))]
    fn new(pairs: Vec<(VertexId, VertexId)>, b_targets: Vec<VertexId>) -> Self {
        Self(Interaction::new(pairs, b_targets))
    }

    #[staticmethod]
    fn hopping(u: VertexId, v: VertexId) -> Self {
        Self(Interaction::hopping(u, v))
    }

    #[staticmethod]
    fn vertex(u: VertexId) -> Self {
        Self(Interaction::vertex(u))
    }

    #[getter]
    fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.0.pairs.clone()
    }

    #[getter]
    fn b_targets(&self) -> Vec<VertexId> {
        self.0.b_targets.iter().copied().collect()
    }

    fn __repr__(&self) -> String {
        format!("Interaction({})", self.0.label())
    }
}

fn unwrap_interactions(ts: Vec<PyRef<'_, PyInteraction>>) -> Vec<Interaction> {
    ts.iter().map(|t| t.0.clone()).collect()
}

fn wrap_interactions(ts: Vec<Interaction>) -> Vec<PyInteraction> {
    ts.into_iter().map(PyInteraction).collect()
}

/// System graph with physical/virtual vertices and an edge enumeration.
#[pyclass(name = "SystemGraph", module = "pathcolor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(SystemGraph);

#[pymethods]
impl PyGraph {
    /// Generator by name, e.g. `generate("star", 8)` or
    /// `generate("heavy_hexagon")`.
    #[staticmethod]
    #[pyo3(signature = (name, size = None))]
    fn generate(name: &str, size: Option<usize>) -> PyResult<Self> {
        generators::by_name(name, size).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        SystemGraph::from_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn vertices(&self) -> Vec<VertexId> {
        self.0.vertices().collect()
    }

    fn physical_vertices(&self) -> Vec<VertexId> {
        self.0.physical_vertices().collect()
    }

    fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.0.edges().collect()
    }

    fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.0.neighbors(v).collect()
    }

    fn degree(&self, v: VertexId) -> usize {
        self.0.degree(v)
    }

    fn qubit_count(&self) -> u32 {
        self.0.qubit_count()
    }

    fn xi(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.0.xi(u, v)
    }

    fn is_fully_enumerated(&self) -> bool {
        self.0.is_fully_enumerated()
    }

    /// Copy with explicit `(u, v, index)` assignments applied.
    fn with_enumeration(&self, assignments: Vec<(VertexId, VertexId, u32)>) -> PyResult<Self> {
        self.0.set_enumeration(assignments).map(Self).map_err(err)
    }

    /// Copy with every unset slot filled in ascending neighbor order.
    fn default_enumeration(&self) -> Self {
        Self(self.0.default_enumeration())
    }

    fn __len__(&self) -> usize {
        self.0.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "SystemGraph(vertices={}, edges={}, qubits={})",
            self.0.vertex_count(),
            self.0.edge_count(),
            self.0.qubit_count()
        )
    }
}

#[pyfunction]
fn vertex_operator(g: &PyGraph, u: VertexId) -> PyResult<PyPauliString> {
    encoding::vertex_operator(&g.0, u).map(PyPauliString).map_err(err)
}

#[pyfunction]
fn edge_operator(g: &PyGraph, u: VertexId, v: VertexId) -> PyResult<PyPauliString> {
    encoding::edge_operator(&g.0, u, v).map(PyPauliString).map_err(err)
}

#[pyfunction]
fn path_operator(g: &PyGraph, path: Vec<VertexId>) -> PyResult<PyPauliString> {
    encoding::path_operator(&g.0, &path).map(PyPauliString).map_err(err)
}

#[pyfunction]
fn loop_operator(g: &PyGraph, cycle: Vec<VertexId>) -> PyResult<PyPauliString> {
    encoding::loop_operator(&g.0, &cycle).map(PyPauliString).map_err(err)
}

/// Qubits touched by an interaction under the active-qubit rules.
#[pyfunction]
fn interaction_support(g: &PyGraph, t: &PyInteraction, paths: Vec<Vec<VertexId>>) -> PyResult<Vec<u32>> {
    let s = encoding::interaction_support(&g.0, 0, &t.0, &paths).map_err(err)?;
    Ok(s.into_iter().collect())
}

#[pyfunction]
fn all_to_all(n: usize) -> PyResult<Vec<PyInteraction>> {
    Ok(wrap_interactions(models::all_to_all(n).map_err(err)?.interactions))
}

#[pyfunction]
fn nn_hopping(l: usize) -> PyResult<Vec<PyInteraction>> {
    Ok(wrap_interactions(models::nn_hopping(l).map_err(err)?.interactions))
}

/// Routes every interaction; returns `(paths, order)` with `paths` mapping
/// interaction id to one path per pair.
#[pyfunction]
#[pyo3(signature = (g, interactions, seed = 0, phys_penalty = 5, used_increment = 3))]
fn route(
    g: &PyGraph,
    interactions: Vec<PyRef<'_, PyInteraction>>,
    seed: u64,
    phys_penalty: u64,
    used_increment: u64,
) -> PyResult<(Paths, Vec<usize>)> {
    let ts = unwrap_interactions(interactions);
    let params = RoutingParams {
        phys_penalty,
        used_increment,
        seed,
    };
    let routed = routing::route(&g.0, &ts, &params).map_err(err)?;
    Ok((from_path_set(&routed.paths, ts.len()), routed.order))
}

/// Enumerates edges from paths given in routing order.
#[pyfunction]
fn greedy_enumerate(g: &PyGraph, paths_in_order: Vec<Vec<VertexId>>) -> PyResult<PyGraph> {
    routing::greedy_enumerate(&g.0, paths_in_order.iter()).map(PyGraph).map_err(err)
}

/// Conflict graph over interaction ids.
#[pyclass(name = "ConflictGraph", module = "pathcolor", frozen, skip_from_py_object)]
struct PyConflictGraph(ConflictGraph);

#[pymethods]
impl PyConflictGraph {
    #[getter]
    fn mode(&self) -> String {
        self.0.mode().to_string()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn degree(&self, v: usize) -> usize {
        self.0.degree(v)
    }

    fn max_degree(&self) -> usize {
        self.0.max_degree()
    }

    /// Largest-first greedy coloring; returns the layers.
    #[pyo3(signature = (seed = 0))]
    fn greedy_color(&self, seed: u64) -> PyResult<Vec<Vec<usize>>> {
        let order = coloring::largest_first_order(&self.0, seed);
        Ok(coloring::greedy_color(&self.0, &order).map_err(err)?.layers)
    }

    fn clique_lower_bound(&self) -> usize {
        coloring::clique_lower_bound(&self.0)
    }

    #[pyo3(signature = (size_cap = coloring::DEFAULT_EXACT_CAP))]
    fn exact_chromatic(&self, size_cap: usize) -> PyResult<usize> {
        coloring::exact_chromatic(&self.0, size_cap).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyfunction]
fn conflict_graph(
    mode_name: &str,
    g: &PyGraph,
    interactions: Vec<PyRef<'_, PyInteraction>>,
    paths: Paths,
) -> PyResult<PyConflictGraph> {
    let ts = unwrap_interactions(interactions);
    coloring::build(mode(mode_name)?, &g.0, &ts, &to_path_set(paths))
        .map(PyConflictGraph)
        .map_err(err)
}

/// Seeded restarts for one mode. Returns a dict with the winning seed,
/// colors, layers, paths, clique bound and the graph it was built on.
#[pyfunction]
#[pyo3(signature = (g, interactions, mode_name, restarts = 1, seed = 0, preset_enumeration = false))]
fn run<'py>(
    py: Python<'py>,
    g: &PyGraph,
    interactions: Vec<PyRef<'py, PyInteraction>>,
    mode_name: &str,
    restarts: usize,
    seed: u64,
    preset_enumeration: bool,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let ts = unwrap_interactions(interactions);
    let n = ts.len();
    let mut config = RunConfig::new(g.0.clone(), ts);
    config.restarts = restarts;
    config.seed = seed;
    if preset_enumeration {
        config.enumeration = EnumerationPolicy::Preset;
    }
    let m = mode(mode_name)?;
    let r = py.detach(|| harness::run_mode(&config, m)).map_err(err)?;
    let out = pyo3::types::PyDict::new(py);
    out.set_item("seed", r.best.seed)?;
    out.set_item("colors", r.colors())?;
    out.set_item("layers", r.best.schedule.layers.clone())?;
    out.set_item("paths", from_path_set(&r.best.paths, n))?;
    out.set_item("clique_bound", r.clique_bound)?;
    out.set_item("graph", PyGraph(r.best.graph))?;
    Ok(out)
}

#[pyfunction]
fn chi_weak_star(n: usize) -> PyResult<usize> {
    models::chi_weak_star(n).map_err(err)
}

#[pyfunction]
fn chi_strong_star(n: usize) -> PyResult<usize> {
    models::chi_strong_star(n).map_err(err)
}

#[pyfunction]
fn chi_weak_complete(n: usize) -> PyResult<usize> {
    models::chi_weak_complete(n).map_err(err)
}

#[pyfunction]
fn chi_strong_complete_bounds(n: usize) -> PyResult<(usize, usize)> {
    models::chi_strong_complete_bounds(n).map_err(err)
}

/// `(weak, strong_upper)` for the bottleneck graph.
#[pyfunction]
fn chi_bottleneck(n: usize) -> PyResult<(usize, usize)> {
    let c = models::chi_bottleneck(n).map_err(err)?;
    Ok((c.weak, c.strong_upper))
}

#[pyfunction]
fn bottleneck_parity_enumeration(g: &PyGraph) -> PyResult<PyGraph> {
    generators::bottleneck_parity_enumeration(&g.0).map(PyGraph).map_err(err)
}

#[pymodule]
#[pyo3(name = "pathcolor")]
pub fn pathcolor_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauliString>()?;
    m.add_class::<PyInteraction>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyConflictGraph>()?;
    m.add_function(wrap_pyfunction!(vertex_operator, m)?)?;
    m.add_function(wrap_pyfunction!(edge_operator, m)?)?;
    m.add_function(wrap_pyfunction!(path_operator, m)?)?;
    m.add_function(wrap_pyfunction!(loop_operator, m)?)?;
    m.add_function(wrap_pyfunction!(interaction_support, m)?)?;
    m.add_function(wrap_pyfunction!(all_to_all, m)?)?;
    m.add_function(wrap_pyfunction!(nn_hopping, m)?)?;
    m.add_function(wrap_pyfunction!(route, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(conflict_graph, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(chi_weak_star, m)?)?;
    m.add_function(wrap_pyfunction!(chi_strong_star, m)?)?;
    m.add_function(wrap_pyfunction!(chi_weak_complete, m)?)?;
    m.add_function(wrap_pyfunction!(chi_strong_complete_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(chi_bottleneck, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck_parity_enumeration, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
