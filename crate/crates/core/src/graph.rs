//! Undirected capacitated graphs with parallel-edge merging and in-place
//! contraction.
//!
//! Vertices and edges live in slot arrays. Contraction frees slots instead of
//! compacting, so ids held by callers stay valid. Dead edges have capacity 0
//! and may linger in adjacency lists of untouched vertices; every iterator
//! filters them out.

use std::collections::HashMap;
use std::hash::Hash;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Capacity = u64;

/// Bidirectional map between external vertex labels and dense ids.
#[derive(Clone, Debug, Default)]
pub struct VertexMapping<L> {
    forward: HashMap<L, VertexId>,
    backward: Vec<L>,
}

impl<L: Copy + Eq + Hash> VertexMapping<L> {
    pub fn new() -> Self {
        VertexMapping {
            forward: HashMap::new(),
            backward: Vec::new(),
        }
    }

    /// Returns the id of `label`, assigning the next free id on first sight.
    pub fn intern(&mut self, label: L) -> VertexId {
        let next = self.backward.len();
        let id = *self.forward.entry(label).or_insert(next);
        if id == next {
            self.backward.push(label);
        }
        id
    }

    pub fn id(&self, label: &L) -> Option<VertexId> {
        self.forward.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> L {
        self.backward[id]
    }

    pub fn labels(&self) -> &[L] {
        &self.backward
    }

    pub fn len(&self) -> usize {
        self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backward.is_empty()
    }
}

/// Stamp-based vertex marker; clearing is O(1).
#[derive(Clone, Debug, Default)]
pub(crate) struct Marker {
    stamp: Vec<u32>,
    value: Vec<usize>,
    epoch: u32,
}

impl Marker {
    pub(crate) fn reset(&mut self, len: usize) {
        if self.stamp.len() < len {
            self.stamp.resize(len, 0);
            self.value.resize(len, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, value: usize) {
        self.stamp[i] = self.epoch;
        self.value[i] = value;
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> Option<usize> {
        (self.stamp[i] == self.epoch).then(|| self.value[i])
    }

    #[inline]
    pub(crate) fn reset_one(&mut self, i: usize) {
        self.stamp[i] = 0;
    }

    #[inline]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.stamp[i] == self.epoch
    }
}

#[derive(Clone, Debug, Default)]
pub struct UndirectedGraph {
    adj: Vec<Vec<EdgeId>>,
    alive: Vec<bool>,
    degree: Vec<Capacity>,
    ends: Vec<[VertexId; 2]>,
    cap: Vec<Capacity>,
    vertex_count: usize,
    edge_count: usize,
    /// Dead entries per incidence list, compacted once they dominate.
    stale: Vec<usize>,
    marker: Marker,
}

impl UndirectedGraph {
    /// Graph with `n` isolated vertices.
    pub fn with_vertices(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
            alive: vec![true; n],
            degree: vec![0; n],
            ends: Vec::new(),
            cap: Vec::new(),
            vertex_count: n,
            edge_count: 0,
            stale: vec![0; n],
            marker: Marker::default(),
        }
    }

    /// Builds a normalized graph: self-loops and zero capacities are dropped,
    /// parallel edges are merged by summing capacities. Edge ids follow the
    /// order of first appearance of each unordered pair.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId, Capacity)>,
    {
        let mut g = UndirectedGraph::with_vertices(n);
        let mut index: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for (u, v, c) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
            if u == v || c == 0 {
                continue;
            }
            let key = (u.min(v), u.max(v));
            match index.get(&key) {
                Some(&e) => {
                    g.cap[e] += c;
                    g.degree[u] += c;
                    g.degree[v] += c;
                }
                None => {
                    let e = g.push_edge(key.0, key.1, c);
                    index.insert(key, e);
                }
            }
        }
        g
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId, c: Capacity) -> EdgeId {
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.cap.push(c);
        self.adj[u].push(e);
        self.adj[v].push(e);
        self.degree[u] += c;
        self.degree[v] += c;
        self.edge_count += 1;
        e
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of live edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Size of the vertex slot array; valid ids are below this bound.
    pub fn vertex_slots(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_slots(&self) -> usize {
        self.ends.len()
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len()).filter(move |&v| self.alive[v])
    }

    /// Capacity-weighted degree.
    #[inline]
    pub fn degree(&self, v: VertexId) -> Capacity {
        self.degree[v]
    }

    #[inline]
    pub fn capacity(&self, e: EdgeId) -> Capacity {
        self.cap[e]
    }

    #[inline]
    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e]
    }

    #[inline]
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Raw incidence list of `v`, possibly containing dead edges.
    #[inline]
    pub(crate) fn raw_incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    /// Live incident edges of `v`.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj[v].iter().copied().filter(move |&e| self.cap[e] > 0)
    }

    /// Live neighbours of `v` with the connecting edge capacity.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, Capacity)> + '_ {
        self.incident(v).map(move |e| (self.other(e, v), self.cap[e]))
    }

    /// Live edges as `(u, v, capacity)` with `u < v`, in edge-id order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Capacity)> + '_ {
        (0..self.ends.len()).filter(move |&e| self.cap[e] > 0).map(move |e| {
            let [a, b] = self.ends[e];
            (a.min(b), a.max(b), self.cap[e])
        })
    }

    pub fn total_capacity(&self) -> Capacity {
        self.cap.iter().sum()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.incident(a).find(|&e| self.other(e, a) == b)
    }

    /// Adds capacity between `u` and `v`, merging into an existing edge.
    pub fn add_capacity(&mut self, u: VertexId, v: VertexId, c: Capacity) -> Option<EdgeId> {
        if u == v || c == 0 {
            return None;
        }
        match self.find_edge(u, v) {
            Some(e) => {
                self.cap[e] += c;
                self.degree[u] += c;
                self.degree[v] += c;
                Some(e)
            }
            None => Some(self.push_edge(u, v, c)),
        }
    }

    fn kill_edge(&mut self, e: EdgeId) {
        let c = self.cap[e];
        if c == 0 {
            return;
        }
        let [a, b] = self.ends[e];
        self.degree[a] -= c;
        self.degree[b] -= c;
        self.cap[e] = 0;
        self.edge_count -= 1;
    }

    fn note_stale(&mut self, w: VertexId) {
        self.stale[w] += 1;
        if self.stale[w] * 2 > self.adj[w].len() {
            let cap = &self.cap;
            self.adj[w].retain(|&e| cap[e] > 0);
            self.stale[w] = 0;
        }
    }

    /// Deletes `v` together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) {
        assert!(self.alive[v], "vertex {v} already removed");
        for e in std::mem::take(&mut self.adj[v]) {
            if self.cap[e] > 0 {
                let w = self.other(e, v);
                self.kill_edge(e);
                self.note_stale(w);
            }
        }
        self.stale[v] = 0;
        self.alive[v] = false;
        self.vertex_count -= 1;
    }

    /// Contracts `set` into the slot `into`, which must belong to `set`.
    ///
    /// Edges inside `set` vanish, edges leaving it are re-attached to `into`
    /// and merged per outside neighbour. Every other slot of `set` is freed.
    /// Runs in time linear in the volume of `set`.
    pub fn contract(&mut self, set: &[VertexId], into: VertexId) {
        assert!(!set.is_empty(), "contracting an empty set");
        self.marker.reset(self.adj.len());
        for &x in set {
            assert!(self.alive[x], "vertex {x} is not alive");
            self.marker.set(x, usize::MAX);
        }
        assert!(self.marker.contains(into), "target slot must lie in the set");

        // outside neighbour -> surviving edge to `into`
        let mut link: HashMap<VertexId, EdgeId> = HashMap::new();
        let mut new_adj = Vec::new();
        let mut merged = Vec::new();
        let mut new_degree = 0;
        for &x in set {
            for e in std::mem::take(&mut self.adj[x]) {
                let c = self.cap[e];
                if c == 0 {
                    continue;
                }
                let w = self.other(e, x);
                if self.marker.contains(w) {
                    self.cap[e] = 0;
                    self.edge_count -= 1;
                    continue;
                }
                match link.get(&w) {
                    Some(&kept) => {
                        self.cap[kept] += c;
                        self.cap[e] = 0;
                        self.edge_count -= 1;
                        merged.push(w);
                    }
                    None => {
                        let slot = &mut self.ends[e];
                        if slot[0] == x {
                            slot[0] = into;
                        } else {
                            slot[1] = into;
                        }
                        link.insert(w, e);
                        new_adj.push(e);
                    }
                }
                new_degree += c;
            }
        }
        for w in merged {
            self.note_stale(w);
        }
        for &x in set {
            self.degree[x] = 0;
            self.stale[x] = 0;
            if x != into {
                self.alive[x] = false;
                self.vertex_count -= 1;
            }
        }
        self.adj[into] = new_adj;
        self.degree[into] = new_degree;
    }

    /// Graph induced by `vertices`, relabelled densely in the given order.
    pub fn induced(&self, vertices: &[VertexId]) -> UndirectedGraph {
        let mut local = Marker::default();
        local.reset(self.adj.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.set(v, i);
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for e in self.incident(v) {
                if let Some(j) = local.get(self.other(e, v)) {
                    if i < j {
                        edges.push((i, j, self.cap[e]));
                    }
                }
            }
        }
        UndirectedGraph::from_edges(vertices.len(), edges)
    }

    /// Vertex partition into connected components, each sorted ascending,
    /// components ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for root in self.vertices() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for (w, _) in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Capacity of the edges leaving the vertex set flagged in `inside`.
    pub fn cut_capacity(&self, inside: &[bool]) -> Capacity {
        self.edges()
            .filter(|&(u, v, _)| inside[u] != inside[v])
            .map(|(_, _, c)| c)
            .sum()
    }
}

/// Normalizes a raw labelled edge list: labels are densified in order of
/// first appearance, self-loops dropped, duplicates merged.
pub fn normalize<L, I>(raw_edges: I) -> (UndirectedGraph, VertexMapping<L>)
where
    L: Copy + Eq + Hash,
    I: IntoIterator<Item = (L, L)>,
{
    let mut mapping = VertexMapping::new();
    let mut edges = Vec::new();
    for (a, b) in raw_edges {
        let u = mapping.intern(a);
        let v = mapping.intern(b);
        edges.push((u, v, 1));
    }
    (UndirectedGraph::from_edges(mapping.len(), edges), mapping)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> UndirectedGraph {
        UndirectedGraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    }

    #[test]
    fn normalize_merges_duplicates_and_drops_loops() {
        let (g, m) = normalize([(0u64, 1u64), (1, 0), (1, 1)]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 2)]);
        assert_eq!(m.labels(), &[0, 1]);
    }

    #[test]
    fn normalize_relabels() {
        let (g, m) = normalize([(5u64, 9u64)]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 1)]);
        assert_eq!(m.id(&5), Some(0));
        assert_eq!(m.id(&9), Some(1));
        assert_eq!(m.label(1), 9);
    }

    #[test]
    fn normalize_triangle_and_empty() {
        let (g, _) = normalize([(0u64, 1u64), (1, 2), (2, 0)]);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().all(|(_, _, c)| c == 1));
        let (g, m) = normalize(Vec::<(u64, u64)>::new());
        assert_eq!(g.vertex_count(), 0);
        assert!(m.is_empty());
    }

    #[test]
    fn degrees() {
        let g = triangle();
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        let (g, _) = normalize([(0u64, 1u64), (1, 0)]);
        assert_eq!(g.degree(0), 2);
        let g = UndirectedGraph::with_vertices(1);
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn contract_triangle_pair() {
        let mut g = triangle();
        g.contract(&[0, 1], 0);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2, 2)]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(2), 2);
        assert!(!g.is_alive(1));
    }

    #[test]
    fn contract_k4_pair() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, v, 1));
            }
        }
        let mut g = UndirectedGraph::from_edges(4, edges);
        g.contract(&[0, 1], 1);
        let mut got: Vec<_> = g.edges().collect();
        got.sort();
        assert_eq!(got, vec![(1, 2, 2), (1, 3, 2), (2, 3, 1)]);
        assert_eq!(g.total_capacity(), 5);
    }

    #[test]
    fn contract_singleton_is_identity() {
        let mut g = UndirectedGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]);
        g.contract(&[0], 0);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 1), (1, 2, 1)]);
    }

    #[test]
    fn contract_everything() {
        let mut g = triangle();
        g.contract(&[0, 1, 2], 2);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn components() {
        let g = triangle();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2]]);
        let g = UndirectedGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3]]);
        assert!(UndirectedGraph::default().connected_components().is_empty());
    }

    #[test]
    fn add_capacity_merges() {
        let mut g = UndirectedGraph::from_edges(3, [(0, 1, 1)]);
        assert_eq!(g.add_capacity(1, 0, 2), Some(0));
        assert_eq!(g.capacity(0), 3);
        assert_eq!(g.degree(1), 3);
        g.add_capacity(1, 2, 1);
        g.remove_vertex(1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degree(0), 0);
    }
}
