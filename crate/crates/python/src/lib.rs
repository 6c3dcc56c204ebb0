//! Python bindings: graphs, cut-tree construction, queries and analytics.

// pyo3 0.22 macros trip this lint on every PyResult method
#![allow(clippy::useless_conversion)]

use std::fs::File;
use std::io::BufReader;

use cuttree::analytics::{connectivity_dendrogram, connectivity_distribution};
use cuttree::io::{read_edge_list, write_edge_list, Label};
use cuttree::{construct_with_stats, generate, BuildConfig, LabeledTree, Stage, UndirectedGraph, Variant, VertexMapping};
use pyo3::exceptions::{PyKeyError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An undirected graph with integer vertex labels and integer capacities.
#[pyclass(name = "Graph", module = "cuttree_py")]
#[derive(Clone)]
struct PyGraph {
    graph: UndirectedGraph,
    labels: Vec<Label>,
}

impl PyGraph {
    fn dense(graph: UndirectedGraph) -> Self {
        let labels = (0..graph.vertex_slots() as Label).collect();
        PyGraph { graph, labels }
    }
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from `(u, v)` or `(u, v, capacity)` tuples. Parallel
    /// edges add up and self-loops are dropped.
    #[new]
    fn new(edges: Vec<Vec<u64>>) -> PyResult<Self> {
        let mut mapping = VertexMapping::new();
        let mut dense = Vec::with_capacity(edges.len());
        for e in &edges {
            let (a, b, c) = match e[..] {
                [a, b] => (a, b, 1),
                [a, b, c] => (a, b, c),
                _ => return Err(value_err(format!("edge must have 2 or 3 entries, got {}", e.len()))),
            };
            dense.push((mapping.intern(a), mapping.intern(b), c));
        }
        let graph = UndirectedGraph::from_edges(mapping.len(), dense);
        Ok(PyGraph {
            graph,
            labels: mapping.labels().to_vec(),
        })
    }

    /// Reads a whitespace-separated edge list file.
    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        let file = File::open(path).map_err(|e| PyOSError::new_err(format!("{path}: {e}")))?;
        let g = read_edge_list(BufReader::new(file)).map_err(value_err)?;
        Ok(PyGraph {
            graph: g.graph,
            labels: g.labels.labels().to_vec(),
        })
    }

    /// Seeded synthetic graph: "gnp" (connected G(n, p)), "pa"
    /// (preferential attachment with `m` links per vertex), "barbell"
    /// (`n` cliques of `size`), "tree" or "cycle".
    #[staticmethod]
    #[pyo3(signature = (family, n, p=0.1, m=3, size=5, seed=0))]
    fn generate(family: &str, n: usize, p: f64, m: usize, size: usize, seed: u64) -> PyResult<Self> {
        let g = match family {
            "gnp" => generate::gnp_connected(n, p, seed),
            "pa" => generate::preferential_attachment(n, m, seed),
            "barbell" => generate::barbell(n, size),
            "tree" => generate::random_tree(n, seed),
            "cycle" => generate::cycle(n),
            _ => return Err(value_err(format!("unknown family {family:?}"))),
        };
        Ok(PyGraph::dense(g))
    }

    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    fn labels(&self) -> Vec<Label> {
        self.labels.clone()
    }

    /// `(u, v, capacity)` triples using labels.
    fn edges(&self) -> Vec<(Label, Label, u64)> {
        self.graph.edges().map(|(u, v, c)| (self.labels[u], self.labels[v], c)).collect()
    }

    /// Edge list text with one line per unit of capacity.
    fn to_text(&self) -> String {
        let mut out = Vec::new();
        write_edge_list(&self.graph, &mut out).expect("writing to memory");
        let text = String::from_utf8(out).expect("ascii output");
        // write_edge_list emits dense ids; translate them back to labels
        text.lines()
            .map(|l| {
                let mut it = l.split_whitespace().map(|t| self.labels[t.parse::<usize>().unwrap()]);
                format!("{} {}\n", it.next().unwrap(), it.next().unwrap())
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.graph.vertex_count(), self.graph.edge_count())
    }
}

/// A cut tree: `query(s, t)` is the minimum s-t cut of the source graph.
#[pyclass(name = "CutTree", module = "cuttree_py")]
struct PyCutTree {
    tree: LabeledTree,
    stats: Vec<(String, u64)>,
}

#[pymethods]
impl PyCutTree {
    /// Parses the text format produced by `to_text`.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let tree = LabeledTree::parse(text).map_err(value_err)?;
        Ok(PyCutTree { tree, stats: Vec::new() })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyOSError::new_err(format!("{path}: {e}")))?;
        Self::from_text(&text)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        std::fs::write(path, self.tree.to_text()).map_err(|e| PyOSError::new_err(format!("{path}: {e}")))
    }

    fn to_text(&self) -> String {
        self.tree.to_text()
    }

    fn __len__(&self) -> usize {
        self.tree.len()
    }

    /// Connectivity between two labels; `math.inf` when they are equal.
    fn query(&self, py: Python<'_>, s: Label, t: Label) -> PyResult<PyObject> {
        if self.tree.id(s).is_none() || self.tree.id(t).is_none() {
            let missing = if self.tree.id(s).is_none() { s } else { t };
            return Err(PyKeyError::new_err(missing));
        }
        if s == t {
            return Ok(f64::INFINITY.into_py(py));
        }
        Ok(self.tree.query(s, t).expect("known labels").into_py(py))
    }

    /// `(child, parent, weight)` triples using labels.
    fn edges(&self) -> Vec<(Label, Label, u64)> {
        let t = &self.tree;
        t.tree.edges().map(|(c, p, w)| (t.label(c), t.label(p), w)).collect()
    }

    /// `(weight, pairs)` in descending weight.
    fn distribution(&self) -> Vec<(u64, u64)> {
        connectivity_distribution(&self.tree.tree)
    }

    /// Binary merges `(node, child_a, child_b, label)`. Leaves are
    /// `0..len` in the order of `labels()`; merge nodes follow.
    fn dendrogram(&self) -> Vec<(usize, usize, usize, u64)> {
        let d = connectivity_dendrogram(&self.tree.tree);
        d.merges
            .iter()
            .enumerate()
            .map(|(i, m)| (d.leaves + i, m.children[0], m.children[1], m.label))
            .collect()
    }

    fn labels(&self) -> Vec<Label> {
        self.tree.labels().to_vec()
    }

    /// Build counters (empty for trees loaded from text).
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new_bound(py);
        for (k, v) in &self.stats {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("CutTree(vertices={})", self.tree.len())
    }
}

/// Builds the cut tree of `graph`. `variant` picks a preset ("A0" to
/// "A5"); the remaining arguments override its parameters.
#[pyfunction]
#[pyo3(signature = (graph, variant="A5", alpha=None, beta=None, gamma=None, k=None, reductions=None, parallel=true))]
#[allow(clippy::too_many_arguments)]
fn build(
    py: Python<'_>,
    graph: &PyGraph,
    variant: &str,
    alpha: Option<usize>,
    beta: Option<usize>,
    gamma: Option<usize>,
    k: Option<usize>,
    reductions: Option<bool>,
    parallel: bool,
) -> PyResult<PyCutTree> {
    let v: Variant = variant.parse().map_err(value_err)?;
    let mut cfg = BuildConfig::variant(v);
    cfg.alpha = alpha.unwrap_or(cfg.alpha);
    cfg.beta = beta.or(cfg.beta);
    cfg.gamma = gamma.unwrap_or(cfg.gamma);
    cfg.k = k.unwrap_or(cfg.k);
    cfg.reductions = reductions.unwrap_or(cfg.reductions);
    cfg.parallel = parallel;
    let (tree, stats) = py.allow_threads(|| construct_with_stats(&graph.graph, &cfg));
    let totals = stats.flow_totals();
    let stats = vec![
        ("flow_invocations".to_string(), stats.flow_invocations()),
        ("bidirectional_phases".to_string(), totals.bidirectional_phases),
        ("goal_completions".to_string(), totals.goal_completions),
        ("packing_cuts".to_string(), stats.stage(Stage::Packing).cuts),
        ("bridges".to_string(), stats.bridges),
        ("degree2_removed".to_string(), stats.degree2_removed),
        ("microseconds".to_string(), stats.total_time.as_micros() as u64),
    ];
    Ok(PyCutTree {
        tree: LabeledTree::new(tree, graph.labels.clone()).sorted(),
        stats,
    })
}

#[pymodule]
fn cuttree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCutTree>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    Ok(())
}
