use thiserror::Error;

use crate::graph::{Capacity, VertexId};

/// Connectivity reported for a vertex paired with itself.
pub const INFINITE: Capacity = Capacity::MAX;

const NO_PARENT: VertexId = VertexId::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("expected {expected} tree edges, got {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("edges do not form a spanning tree")]
    NotSpanning,
}

/// A weighted spanning tree stored as a parent array rooted at vertex 0.
///
/// `weight[v]` is the capacity of the edge from `v` to its parent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CutTree {
    parent: Vec<VertexId>,
    weight: Vec<Capacity>,
    depth: Vec<u32>,
}

impl CutTree {
    /// Roots an undirected edge list at vertex 0.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId, Capacity)]) -> Result<Self, TreeError> {
        let expected = n.saturating_sub(1);
        if edges.len() != expected {
            return Err(TreeError::EdgeCount {
                expected,
                got: edges.len(),
            });
        }
        let mut adj: Vec<Vec<(VertexId, Capacity)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: x, n });
                }
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut parent = vec![NO_PARENT; n];
        let mut weight = vec![0; n];
        let mut depth = vec![0; n];
        if n == 0 {
            return Ok(CutTree::default());
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut visited = 1;
        while let Some(u) = stack.pop() {
            for &(v, w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    visited += 1;
                    parent[v] = u;
                    weight[v] = w;
                    depth[v] = depth[u] + 1;
                    stack.push(v);
                }
            }
        }
        if visited != n {
            return Err(TreeError::NotSpanning);
        }
        Ok(CutTree {
            parent,
            weight,
            depth,
        })
    }

    /// Builds a tree from a parent array (`None` marks the single root).
    pub fn from_parents(parents: &[Option<VertexId>], weights: &[Capacity]) -> Result<Self, TreeError> {
        let n = parents.len();
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        let mut roots = 0;
        for (v, p) in parents.iter().enumerate() {
            match *p {
                Some(p) => edges.push((v, p, weights[v])),
                None => roots += 1,
            }
        }
        if n > 0 && roots != 1 {
            return Err(TreeError::NotSpanning);
        }
        // validates that the parent edges span the vertex set without cycles
        let mut t = CutTree::from_edges(n, &edges)?;
        if n > 0 {
            t.reroot_as(parents, weights)?;
        }
        Ok(t)
    }

    fn reroot_as(&mut self, parents: &[Option<VertexId>], weights: &[Capacity]) -> Result<(), TreeError> {
        let n = parents.len();
        let root = parents.iter().position(|p| p.is_none()).ok_or(TreeError::NotSpanning)?;
        let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        self.parent = parents.iter().map(|p| p.unwrap_or(NO_PARENT)).collect();
        self.weight = weights.to_vec();
        self.weight[root] = 0;
        self.depth = vec![0; n];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &c in &children[u] {
                self.depth[c] = self.depth[u] + 1;
                stack.push(c);
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> Option<VertexId> {
        self.parent.iter().position(|&p| p == NO_PARENT)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v];
        (p != NO_PARENT).then_some(p)
    }

    /// Weight of the edge from `v` to its parent (0 at the root).
    pub fn weight(&self, v: VertexId) -> Capacity {
        self.weight[v]
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v]
    }

    /// Tree edges as `(child, parent, weight)` in child order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Capacity)> + '_ {
        (0..self.len()).filter_map(move |v| self.parent(v).map(|p| (v, p, self.weight[v])))
    }

    /// Minimum edge weight on the tree path between `s` and `t`, found by
    /// lifting the deeper endpoint until both meet. `INFINITE` when `s == t`.
    pub fn query(&self, s: VertexId, t: VertexId) -> Result<Capacity, TreeError> {
        let n = self.len();
        for x in [s, t] {
            if x >= n {
                return Err(TreeError::VertexOutOfRange { vertex: x, n });
            }
        }
        let (mut a, mut b) = (s, t);
        let mut best = INFINITE;
        while a != b {
            if self.depth[a] >= self.depth[b] {
                best = best.min(self.weight[a]);
                a = self.parent[a];
            } else {
                best = best.min(self.weight[b]);
                b = self.parent[b];
            }
        }
        Ok(best)
    }
}
