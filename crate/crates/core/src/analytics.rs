//! Whole-tree analytics: the connectivity distribution (number of vertex
//! pairs per connectivity value) and the connectivity dendrogram. Both
//! sweep tree edges by descending weight and merge endpoint clusters, so
//! each costs one sort plus near-linear union-find work.

use crate::graph::{Capacity, VertexId};
use crate::tree::{CutTree, TreeError};

/// Union-find with union by size and path halving.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn size_of(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    /// Merges the sets of `a` and `b`; returns the new root, or `None` if
    /// they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        Some(ra)
    }
}

/// Pairwise connectivity from a cut tree.
pub fn query(tree: &CutTree, s: VertexId, t: VertexId) -> Result<Capacity, TreeError> {
    tree.query(s, t)
}

/// Tree edges sorted by descending weight, ties by child id.
fn edges_by_weight(tree: &CutTree) -> Vec<(VertexId, VertexId, Capacity)> {
    let mut edges: Vec<_> = tree.edges().collect();
    edges.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
    edges
}

/// `(connectivity, pair count)` in descending connectivity order. The counts
/// sum to `n * (n - 1) / 2`.
pub fn connectivity_distribution(tree: &CutTree) -> Vec<(Capacity, u64)> {
    let mut sets = DisjointSets::new(tree.len());
    let mut out: Vec<(Capacity, u64)> = Vec::new();
    for (u, v, w) in edges_by_weight(tree) {
        let pairs = (sets.size_of(u) * sets.size_of(v)) as u64;
        sets.union(u, v);
        match out.last_mut() {
            Some((last, count)) if *last == w => *count += pairs,
            _ => out.push((w, pairs)),
        }
    }
    out
}

/// One internal dendrogram node: two merged clusters (smaller id first) and
/// the connectivity at which they merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Merge {
    pub children: [usize; 2],
    pub label: Capacity,
}

/// Binary merge tree over the vertices. Ids `0..leaves` are the vertices;
/// merge `i` has id `leaves + i`. Leaves carry an infinite label.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Dendrogram {
    pub leaves: usize,
    pub merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn node_count(&self) -> usize {
        self.leaves + self.merges.len()
    }

    pub fn label(&self, node: usize) -> Option<Capacity> {
        node.checked_sub(self.leaves).map(|i| self.merges[i].label)
    }

    /// Leaf vertices below `node`.
    pub fn leaves_under(&self, node: usize) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            if x < self.leaves {
                out.push(x);
            } else {
                stack.extend(self.merges[x - self.leaves].children);
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn connectivity_dendrogram(tree: &CutTree) -> Dendrogram {
    let n = tree.len();
    let mut sets = DisjointSets::new(n);
    // cluster root -> dendrogram node currently representing it
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    for (u, v, w) in edges_by_weight(tree) {
        let (a, b) = (node_of[sets.find(u)], node_of[sets.find(v)]);
        let (a, b) = (a.min(b), a.max(b));
        let root = sets.union(u, v).expect("tree edges never close a cycle");
        node_of[root] = n + merges.len();
        merges.push(Merge {
            children: [a, b],
            label: w,
        });
    }
    Dendrogram { leaves: n, merges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::INFINITE;

    fn abc() -> CutTree {
        CutTree::from_edges(3, &[(0, 1, 3), (1, 2, 2)]).unwrap()
    }

    #[test]
    fn fig1_shaped_query() {
        // d-c (3), c-e (3), e-g (2), g-j (3); ids d=0 c=1 e=2 g=3 j=4
        let t = CutTree::from_edges(5, &[(0, 1, 3), (1, 2, 3), (2, 3, 2), (3, 4, 3)]).unwrap();
        assert_eq!(query(&t, 0, 4), Ok(2));
        assert_eq!(query(&t, 3, 3), Ok(INFINITE));
    }

    #[test]
    fn distribution_examples() {
        let star = CutTree::from_edges(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!(connectivity_distribution(&star), vec![(1, 6)]);
        assert_eq!(connectivity_distribution(&abc()), vec![(3, 1), (2, 2)]);
        assert!(connectivity_distribution(&CutTree::default()).is_empty());
    }

    #[test]
    fn dendrogram_examples() {
        let two = CutTree::from_edges(2, &[(0, 1, 5)]).unwrap();
        let d = connectivity_dendrogram(&two);
        assert_eq!(d.merges, vec![Merge { children: [0, 1], label: 5 }]);

        let d = connectivity_dendrogram(&abc());
        assert_eq!(d.merges.len(), 2);
        assert_eq!(d.merges[0], Merge { children: [0, 1], label: 3 });
        assert_eq!(d.merges[1], Merge { children: [2, 3], label: 2 });
        assert_eq!(d.leaves_under(4), vec![0, 1, 2]);
        assert_eq!(d.label(0), None);
    }

    #[test]
    fn disjoint_sets() {
        let mut ds = DisjointSets::new(4);
        assert!(ds.union(0, 1).is_some());
        assert!(ds.union(1, 0).is_none());
        assert_eq!(ds.find(0), ds.find(1));
        assert_eq!(ds.size_of(1), 2);
        assert_eq!(ds.size_of(3), 1);
    }
}
