//! Gomory-Hu node splitting.
//!
//! The in-progress tree is a set of nodes partitioning the vertices. A node
//! with two or more members owns a graph whose vertices are either members,
//! or contracted vertices standing for a tree edge incident to the node.
//! Separating a pair splits the node in two, joined by an edge weighted
//! with the cut capacity. One side becomes a new node with a freshly built
//! graph; the other keeps the old id and reuses the old graph:
//!
//! * a single-vertex side leaves the graph untouched and that vertex turns
//!   into the contracted vertex of the new edge;
//! * otherwise the moved side is contracted in place into one slot, or, in
//!   reuse mode, merely relabelled (valid because the cut is the minimal
//!   one on the source side, so later cuts never cross it);
//! * only contracted vertices on the moved side have their edges reattached.
//!
//! Ordinary separations move whichever side of the cut is found first by
//! two interleaved residual searches, so the work per split is bounded by
//! the smaller side.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::goal::{self, DetourSearch, SinkLabels};
use crate::graph::{Capacity, Marker, UndirectedGraph, VertexId};
use crate::maxflow::{FlowCounters, FlowEngine, MaxFlowSolver};
use crate::tree::{CutTree, TreeError};

pub type NodeId = usize;
pub type TreeEdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("node {0} still has more than one member")]
    Unfinished(NodeId),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// What a vertex of a node graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Member(VertexId),
    Contracted(TreeEdgeId),
    Vacant,
}

#[derive(Clone, Debug)]
pub(crate) struct NodeGraph {
    pub(crate) graph: UndirectedGraph,
    pub(crate) role: Vec<Role>,
}

#[derive(Clone, Debug)]
struct Node {
    size: usize,
    graph: Option<NodeGraph>,
    /// Monotone scan position used by the pair-selection loops.
    cursor: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub ends: [NodeId; 2],
    pub weight: Capacity,
}

/// How the cut for one separation is computed.
#[derive(Clone, Copy, Debug)]
pub enum CutMethod<'a> {
    Flow(FlowEngine),
    /// Relaxed search toward a fixed sink; splits in reuse mode.
    Goal { labels: &'a SinkLabels, gamma: usize },
}

#[derive(Clone, Debug)]
pub struct GhState {
    nodes: Vec<Node>,
    node_of: Vec<NodeId>,
    local_of: Vec<VertexId>,
    edges: Vec<TreeEdge>,
    initial_degree: Vec<Capacity>,
    solver: MaxFlowSolver,
    detour: DetourSearch,
    scratch: Marker,
}

impl GhState {
    /// One node holding every vertex of `graph`, whose ids must be dense.
    pub fn init(graph: UndirectedGraph) -> Self {
        let n = graph.vertex_slots();
        assert_eq!(graph.vertex_count(), n, "graph ids must be dense");
        let initial_degree = (0..n).map(|v| graph.degree(v)).collect();
        let nodes = match n {
            0 => Vec::new(),
            1 => vec![Node {
                size: 1,
                graph: None,
                cursor: 0,
            }],
            _ => vec![Node {
                size: n,
                graph: Some(NodeGraph {
                    role: (0..n).map(Role::Member).collect(),
                    graph,
                }),
                cursor: 0,
            }],
        };
        GhState {
            nodes,
            node_of: vec![0; n],
            local_of: (0..n).collect(),
            edges: Vec::new(),
            initial_degree,
            solver: MaxFlowSolver::new(),
            detour: DetourSearch::default(),
            scratch: Marker::default(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.node_of.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_of(&self, v: VertexId) -> NodeId {
        self.node_of[v]
    }

    pub fn node_size(&self, x: NodeId) -> usize {
        self.nodes[x].size
    }

    pub fn tree_edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// Degree of `v` in the graph the state was initialised with.
    pub fn initial_degree(&self, v: VertexId) -> Capacity {
        self.initial_degree[v]
    }

    pub fn counters(&self) -> FlowCounters {
        self.solver.counters
    }

    pub fn is_complete(&self) -> bool {
        self.nodes.iter().all(|x| x.size <= 1)
    }

    /// Nodes that still need splitting.
    pub fn open_nodes(&self) -> Vec<NodeId> {
        (0..self.nodes.len()).filter(|&x| self.nodes[x].size >= 2).collect()
    }

    /// Members of `x`, ascending.
    pub fn members(&self, x: NodeId) -> Vec<VertexId> {
        match &self.nodes[x].graph {
            Some(ng) => {
                let mut out: Vec<_> = ng
                    .role
                    .iter()
                    .filter_map(|r| match r {
                        Role::Member(v) => Some(*v),
                        _ => None,
                    })
                    .collect();
                out.sort_unstable();
                out
            }
            None => (0..self.node_of.len()).filter(|&v| self.node_of[v] == x).collect(),
        }
    }

    pub(crate) fn node_graph(&self, x: NodeId) -> Option<&NodeGraph> {
        self.nodes[x].graph.as_ref()
    }

    pub(crate) fn local_of(&self, v: VertexId) -> VertexId {
        self.local_of[v]
    }

    /// Splits the node of `s` and `t` along a minimum s-t cut and returns
    /// the id of the new node. With [`CutMethod::Flow`] the new node is the
    /// cheaper side to materialize (minimal for its own terminal); with
    /// [`CutMethod::Goal`] it is always the minimal source side.
    pub fn separate(&mut self, s: VertexId, t: VertexId, method: CutMethod<'_>) -> NodeId {
        assert_ne!(s, t, "cannot separate a vertex from itself");
        let x = self.node_of[s];
        assert_eq!(x, self.node_of[t], "vertices {s} and {t} lie in different nodes");
        let ng = self.nodes[x].graph.as_ref().expect("open node owns a graph");
        let (ls, lt) = (self.local_of[s], self.local_of[t]);
        debug_assert_eq!(ng.role[ls], Role::Member(s));
        debug_assert_eq!(ng.role[lt], Role::Member(t));
        match method {
            CutMethod::Flow(engine) => {
                let value = self.solver.max_flow(&ng.graph, ls, lt, engine);
                let (part, _) = self
                    .solver
                    .smaller_cut_side(&ng.graph)
                    .expect("solver returns a maximum flow");
                self.split(x, &part, value, false)
            }
            CutMethod::Goal { labels, gamma } => {
                let value =
                    goal::relaxed_max_flow(&mut self.solver, &mut self.detour, &ng.graph, ls, lt, labels, gamma);
                let cut = self
                    .solver
                    .min_cut(&ng.graph, ls)
                    .expect("solver returns a maximum flow");
                self.split(x, &cut, value, true)
            }
        }
    }

    /// Separates `v` from the rest of its node with the trivial cut `{v}`,
    /// whose capacity the caller has certified to be minimum.
    pub fn separate_singleton(&mut self, v: VertexId) -> NodeId {
        let x = self.node_of[v];
        let ng = self.nodes[x].graph.as_ref().expect("open node owns a graph");
        let lv = self.local_of[v];
        let weight = ng.graph.degree(lv);
        self.split(x, &[lv], weight, false)
    }

    /// Moves the vertices in `cut` to a new node; the rest keeps id `x` and
    /// the (contracted or relabelled) old graph.
    fn split(&mut self, x: NodeId, cut: &[VertexId], weight: Capacity, reuse: bool) -> NodeId {
        let xs = self.nodes.len();
        let e = self.edges.len();
        self.edges.push(TreeEdge {
            ends: [xs, x],
            weight,
        });
        let mut ng = self.nodes[x].graph.take().expect("open node owns a graph");

        let mut members_s = Vec::new();
        for &v in cut {
            match ng.role[v] {
                Role::Member(o) => members_s.push(o),
                Role::Contracted(f) => {
                    for end in self.edges[f].ends.iter_mut() {
                        if *end == x {
                            *end = xs;
                        }
                    }
                }
                Role::Vacant => unreachable!("vacant slot inside a cut"),
            }
        }
        members_s.sort_unstable();
        for &o in &members_s {
            self.node_of[o] = xs;
        }
        let size_s = members_s.len();
        let size_t = self.nodes[x].size - size_s;
        assert!(size_s >= 1 && size_t >= 1, "cut must split the node");

        let graph_s = (size_s >= 2).then(|| self.side_graph(&ng, cut, &members_s, e));

        let graph_t = if size_t >= 2 {
            if cut.len() == 1 || reuse {
                for &v in cut {
                    ng.role[v] = Role::Contracted(e);
                }
            } else {
                ng.graph.contract(cut, cut[0]);
                for &v in &cut[1..] {
                    ng.role[v] = Role::Vacant;
                }
                ng.role[cut[0]] = Role::Contracted(e);
            }
            Some(ng)
        } else {
            None
        };

        let cursor = self.nodes[x].cursor;
        self.nodes[x] = Node {
            size: size_t,
            graph: graph_t,
            cursor,
        };
        self.nodes.push(Node {
            size: size_s,
            graph: graph_s,
            cursor: 0,
        });
        xs
    }

    /// Graph of the cut side: members first (ascending), then one vertex per
    /// contracted tree edge found in the cut, then the vertex for the rest.
    fn side_graph(
        &mut self,
        ng: &NodeGraph,
        cut: &[VertexId],
        members: &[VertexId],
        new_edge: TreeEdgeId,
    ) -> NodeGraph {
        let mut role: Vec<Role> = members.iter().map(|&o| Role::Member(o)).collect();
        for (i, &o) in members.iter().enumerate() {
            self.local_of[o] = i;
        }
        let mut groups: BTreeMap<TreeEdgeId, usize> = BTreeMap::new();
        for &v in cut {
            if let Role::Contracted(f) = ng.role[v] {
                groups.entry(f).or_insert(0);
            }
        }
        for (f, slot) in groups.iter_mut() {
            *slot = role.len();
            role.push(Role::Contracted(*f));
        }
        let outside = role.len();
        role.push(Role::Contracted(new_edge));

        let local = &mut self.scratch;
        local.reset(ng.graph.vertex_slots());
        for &v in cut {
            let l = match ng.role[v] {
                Role::Member(o) => self.local_of[o],
                Role::Contracted(f) => groups[&f],
                Role::Vacant => unreachable!(),
            };
            local.set(v, l);
        }
        let mut edges = Vec::new();
        for &v in cut {
            let lv = local.get(v).expect("cut vertex has a slot");
            for e in ng.graph.incident(v) {
                let w = ng.graph.other(e, v);
                let lw = match local.get(w) {
                    Some(lw) if v < w => lw,
                    Some(_) => continue,
                    None => outside,
                };
                if lv != lw {
                    edges.push((lv, lw, ng.graph.capacity(e)));
                }
            }
        }
        NodeGraph {
            graph: UndirectedGraph::from_edges(role.len(), edges),
            role,
        }
    }

    /// Two members of `x` from its scan cursor onwards: the first member
    /// found and the next one after it.
    pub(crate) fn first_two_members(&mut self, x: NodeId) -> (VertexId, VertexId) {
        let node = &mut self.nodes[x];
        let ng = node.graph.as_ref().expect("open node owns a graph");
        let mut found = Vec::with_capacity(2);
        let mut i = node.cursor;
        while found.len() < 2 {
            if let Role::Member(o) = ng.role[i] {
                if found.is_empty() {
                    node.cursor = i;
                }
                found.push(o);
            }
            i += 1;
        }
        (found[0], found[1])
    }

    /// First member of `x` (in slot order, from the node's scan cursor)
    /// that has a member neighbour, together with that neighbour.
    pub(crate) fn first_adjacent_pair(&mut self, x: NodeId) -> Option<(VertexId, VertexId)> {
        let node = &mut self.nodes[x];
        let ng = node.graph.as_ref()?;
        let slots = ng.graph.vertex_slots();
        while node.cursor < slots {
            let u = node.cursor;
            if let Role::Member(a) = ng.role[u] {
                for (w, _) in ng.graph.neighbors(u) {
                    if let Role::Member(b) = ng.role[w] {
                        return Some((a, b));
                    }
                }
            }
            node.cursor += 1;
        }
        None
    }

    pub(crate) fn reset_cursors(&mut self) {
        for node in &mut self.nodes {
            node.cursor = 0;
        }
    }

    /// Separates arbitrary pairs until every node is a singleton.
    pub fn separate_all<F>(&mut self, engine: FlowEngine, mut chooser: F)
    where
        F: FnMut(&GhState, NodeId) -> (VertexId, VertexId),
    {
        let mut stack = self.open_nodes();
        while let Some(x) = stack.pop() {
            if self.nodes[x].size < 2 {
                continue;
            }
            let (s, t) = chooser(self, x);
            let xs = self.separate(s, t, CutMethod::Flow(engine));
            stack.push(x);
            stack.push(xs);
        }
    }

    /// [`GhState::separate_all`] with the first two members of each node.
    pub fn separate_all_default(&mut self, engine: FlowEngine) {
        self.reset_cursors();
        let mut stack = self.open_nodes();
        while let Some(x) = stack.pop() {
            if self.nodes[x].size < 2 {
                continue;
            }
            let (s, t) = self.first_two_members(x);
            let xs = self.separate(s, t, CutMethod::Flow(engine));
            stack.push(x);
            stack.push(xs);
        }
    }

    /// Tree edges over vertices; requires every node to be a singleton.
    pub fn finalize_edges(&self) -> Result<Vec<(VertexId, VertexId, Capacity)>, BuildError> {
        if let Some(x) = (0..self.nodes.len()).find(|&x| self.nodes[x].size > 1) {
            return Err(BuildError::Unfinished(x));
        }
        let mut vertex_of = vec![0; self.nodes.len()];
        for (v, &x) in self.node_of.iter().enumerate() {
            vertex_of[x] = v;
        }
        Ok(self
            .edges
            .iter()
            .map(|e| (vertex_of[e.ends[0]], vertex_of[e.ends[1]], e.weight))
            .collect())
    }

    pub fn finalize(&self) -> Result<CutTree, BuildError> {
        let edges = self.finalize_edges()?;
        Ok(CutTree::from_edges(self.vertex_count(), &edges)?)
    }

    /// Checks the structural invariants; returns a description of the
    /// first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.node_of.len();
        let mut count = vec![0usize; self.nodes.len()];
        for &x in &self.node_of {
            count[x] += 1;
        }
        for (x, node) in self.nodes.iter().enumerate() {
            if count[x] != node.size {
                return Err(format!("node {x}: size {} but {} members", node.size, count[x]));
            }
            if node.size >= 2 && node.graph.is_none() {
                return Err(format!("open node {x} has no graph"));
            }
            if let Some(ng) = &node.graph {
                for v in ng.graph.vertices() {
                    match ng.role[v] {
                        Role::Member(o) => {
                            if self.node_of[o] != x || self.local_of[o] != v {
                                return Err(format!("member {o} misplaced in node {x}"));
                            }
                        }
                        Role::Contracted(f) => {
                            if !self.edges[f].ends.contains(&x) {
                                return Err(format!("contracted vertex of node {x} maps to edge {f} not incident to it"));
                            }
                        }
                        Role::Vacant => return Err(format!("live vacant slot {v} in node {x}")),
                    }
                }
            }
        }
        if n > 0 && self.edges.len() + 1 != self.nodes.len() {
            return Err(format!("{} edges for {} nodes", self.edges.len(), self.nodes.len()));
        }
        let mut sets = crate::analytics::DisjointSets::new(self.nodes.len());
        for e in &self.edges {
            if sets.union(e.ends[0], e.ends[1]).is_none() {
                return Err("tree edges form a cycle".into());
            }
        }
        Ok(())
    }
}
