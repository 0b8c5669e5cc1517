//! Python bindings for `laser-core`.

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use laser_core::experiments;
use laser_core::io::{read_snapshot_dir, write_snapshot_dir};
use laser_core::measures::{self, evaluate};
use laser_core::rewire::SelectionMode;
use laser_core::{generate, GeneratorSpec, RewireConfig, UNREACHED};

fn err(e: laser_core::Error) -> PyErr {
    match e {
        laser_core::Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Undirected simple graph on nodes `0..n`.
#[pyclass(module = "laser", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Graph {
    inner: laser_core::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = laser_core::Graph::from_edges(n, edges).map_err(err)?;
        Ok(Graph { inner })
    }

    /// Parses the edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = laser_core::Graph::parse_edge_list(text).map_err(err)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        Self::parse(&text)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<u32>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.node_count() && v < self.inner.node_count() && self.inner.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        laser_core::is_connected(&self.inner)
    }

    /// Hop distances; `-1` marks pairs beyond `horizon` or in other components.
    #[pyo3(signature = (horizon=None))]
    fn distance_matrix(&self, horizon: Option<u32>) -> Vec<Vec<i64>> {
        let d = laser_core::distance_matrix(&self.inner, horizon);
        (0..d.dim())
            .map(|v| {
                d.row(v)
                    .iter()
                    .map(|&x| if x == UNREACHED { -1 } else { i64::from(x) })
                    .collect()
            })
            .collect()
    }

    /// Entries of `(A + I)^k`.
    fn walk_counts(&self, k: u32) -> PyResult<Vec<Vec<f64>>> {
        if k == 0 {
            return Err(PyValueError::new_err("k must be >= 1"));
        }
        Ok(laser_core::walk_count_matrix(&self.inner, k).to_rows())
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __eq__(&self, other: &Graph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

impl Graph {
    fn check(&self, v: usize) -> PyResult<()> {
        let n = self.inner.node_count();
        if v >= n {
            return Err(err(laser_core::Error::NodeOutOfRange { node: v, n }));
        }
        Ok(())
    }
}

/// Input graph plus the relational edges added at each level.
#[pyclass(module = "laser", frozen)]
pub struct SnapshotSequence {
    inner: laser_core::SnapshotSequence,
}

#[pymethods]
impl SnapshotSequence {
    #[getter]
    fn base(&self) -> Graph {
        Graph {
            inner: self.inner.base().clone(),
        }
    }

    #[getter]
    fn num_levels(&self) -> usize {
        self.inner.num_levels()
    }

    /// Directed `(v, u)` records of `level`.
    fn level_edges(&self, level: usize) -> PyResult<Vec<(usize, usize)>> {
        let set = self
            .inner
            .level(level)
            .ok_or_else(|| PyValueError::new_err(format!("no level {level}")))?;
        Ok(set.directed_records().collect())
    }

    /// Union of the input edges and the symmetrized levels `1..=up_to`.
    fn flatten(&self, up_to: usize) -> PyResult<Graph> {
        Ok(Graph {
            inner: self.inner.flatten(up_to).map_err(err)?,
        })
    }

    fn undirected_added_per_level(&self) -> Vec<usize> {
        self.inner.undirected_added_per_level()
    }

    fn config<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, self.inner.config())
    }

    fn write(&self, dir: PathBuf) -> PyResult<()> {
        write_snapshot_dir(&self.inner, &dir, None).map_err(err)
    }

    #[staticmethod]
    fn read(dir: PathBuf, base: &Graph) -> PyResult<Self> {
        Ok(SnapshotSequence {
            inner: read_snapshot_dir(&dir, &base.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "SnapshotSequence(n={}, levels={})",
            self.inner.base().node_count(),
            self.inner.num_levels()
        )
    }
}

#[pyfunction]
fn path(nodes: usize) -> PyResult<Graph> {
    build(GeneratorSpec::Path { nodes })
}

#[pyfunction]
fn cycle(nodes: usize) -> PyResult<Graph> {
    build(GeneratorSpec::Cycle { nodes })
}

#[pyfunction]
fn clique(nodes: usize) -> PyResult<Graph> {
    build(GeneratorSpec::Clique { nodes })
}

#[pyfunction]
fn lollipop(chain: usize, clique_size: usize) -> PyResult<Graph> {
    build(GeneratorSpec::Lollipop { chain, clique_size })
}

/// Pass exactly one of `p` and `avg_degree`.
#[pyfunction]
#[pyo3(signature = (nodes, p=None, avg_degree=None, seed=0))]
fn erdos_renyi(
    nodes: usize,
    p: Option<f64>,
    avg_degree: Option<f64>,
    seed: u64,
) -> PyResult<Graph> {
    let spec = match (p, avg_degree) {
        (Some(p), None) => GeneratorSpec::ErdosRenyi { nodes, p, seed },
        (None, Some(d)) => GeneratorSpec::erdos_renyi_avg_degree(nodes, d, seed),
        _ => {
            return Err(PyValueError::new_err(
                "pass exactly one of p and avg_degree",
            ))
        }
    };
    build(spec)
}

fn build(spec: GeneratorSpec) -> PyResult<Graph> {
    Ok(Graph {
        inner: generate(&spec).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (graph, snapshots=1, rho=0.5, walk_k=8, seed=0, mode="mu", min_one=true))]
fn rewire(
    graph: &Graph,
    snapshots: usize,
    rho: f64,
    walk_k: u32,
    seed: u64,
    mode: &str,
    min_one: bool,
) -> PyResult<SnapshotSequence> {
    let mode = match mode {
        "mu" => SelectionMode::MuGuided,
        "random" => SelectionMode::UniformRandom,
        other => {
            return Err(PyValueError::new_err(format!(
                "mode must be 'mu' or 'random', got {other:?}"
            )))
        }
    };
    let config = RewireConfig {
        snapshots,
        rho_density: rho,
        walk_k,
        seed,
        min_one,
        mode,
        ..Default::default()
    };
    Ok(SnapshotSequence {
        inner: laser_core::laser_rewire(&graph.inner, &config).map_err(err)?,
    })
}

/// Adds `num_edges` edges one at a time, each joining the pair of largest
/// effective resistance.
#[pyfunction]
fn spectral_greedy_add(graph: &Graph, num_edges: usize) -> PyResult<Graph> {
    Ok(Graph {
        inner: laser_core::rewire::spectral_greedy_add(&graph.inner, num_edges).map_err(err)?,
    })
}

/// Returns `(resistance, commute_time)`.
#[pyfunction]
fn effective_resistance(graph: &Graph, u: usize, v: usize) -> PyResult<(f64, f64)> {
    let r = measures::effective_resistance(&graph.inner, u, v).map_err(err)?;
    Ok((r.resistance, r.commute_time))
}

#[pyfunction]
fn total_effective_resistance(graph: &Graph) -> PyResult<f64> {
    measures::total_effective_resistance(&graph.inner).map_err(err)
}

#[pyfunction]
fn spectral_gap(graph: &Graph) -> PyResult<f64> {
    measures::spectral_gap(&graph.inner).map_err(err)
}

/// Frobenius norm of the difference of the two distance matrices.
#[pyfunction]
fn frobenius_deviation(a: &Graph, b: &Graph) -> PyResult<f64> {
    let da = laser_core::distance_matrix(&a.inner, None);
    let db = laser_core::distance_matrix(&b.inner, None);
    measures::frobenius_deviation(&da, &db).map_err(err)
}

/// Metrics report as a dict.
#[pyfunction]
#[pyo3(signature = (graph, rewired=None))]
fn metrics<'py>(
    py: Python<'py>,
    graph: &Graph,
    rewired: Option<&SnapshotSequence>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = evaluate(&graph.inner, rewired.map(|s| &s.inner)).map_err(err)?;
    to_dict(py, &report)
}

#[pyfunction]
#[pyo3(signature = (chain=12, clique_size=64, rho=1.0/12.0, seeds=20))]
fn ablate_lollipop<'py>(
    py: Python<'py>,
    chain: usize,
    clique_size: usize,
    rho: f64,
    seeds: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let result = experiments::ablate_lollipop(chain, clique_size, rho, seeds).map_err(err)?;
    to_dict(py, &result)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (sequence, source, target, layers=2, rho_relu=1.0, shortcut=None, width=4))]
fn sensitivity<'py>(
    py: Python<'py>,
    sequence: &SnapshotSequence,
    source: usize,
    target: usize,
    layers: usize,
    rho_relu: f64,
    shortcut: Option<usize>,
    width: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let report = experiments::sensitivity_report(
        &sequence.inner,
        source,
        target,
        layers,
        rho_relu,
        shortcut,
        width,
    )
    .map_err(err)?;
    to_dict(py, &report)
}

#[pymodule]
pub fn laser(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<SnapshotSequence>()?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(clique, m)?)?;
    m.add_function(wrap_pyfunction!(lollipop, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(rewire, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_greedy_add, m)?)?;
    m.add_function(wrap_pyfunction!(effective_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(total_effective_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_gap, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(metrics, m)?)?;
    m.add_function(wrap_pyfunction!(ablate_lollipop, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
