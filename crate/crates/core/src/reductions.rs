//! Graph reductions applied before cut-tree construction.
//!
//! Unit-capacity bridges are removed and each remaining piece (a
//! 2-edge-connected component, possibly a single vertex) is solved on its
//! own. Inside a piece every cut has capacity at least 2, so any vertex of
//! weighted degree 2 has connectivity exactly 2 to everything else and can
//! be spliced out. The results are reassembled by [`stitch`].

use std::collections::VecDeque;

use crate::analytics::DisjointSets;
use crate::graph::{Capacity, EdgeId, UndirectedGraph, VertexId};
use crate::tree::{CutTree, TreeError};

/// Edges of capacity 1 whose removal disconnects their endpoints.
pub fn find_bridges(g: &UndirectedGraph) -> Vec<EdgeId> {
    const UNSEEN: usize = usize::MAX;
    let slots = g.vertex_slots();
    let mut disc = vec![UNSEEN; slots];
    let mut low = vec![0; slots];
    let mut time = 0;
    let mut bridges = Vec::new();
    // (vertex, edge used to enter it, next incidence position)
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, None, 0));
        while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
            let list = g.raw_incident(v);
            if *pos < list.len() {
                let e = list[*pos];
                *pos += 1;
                if g.capacity(e) == 0 || Some(e) == via {
                    continue;
                }
                let w = g.other(e, v);
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] && g.capacity(e) == 1 {
                        bridges.push(e);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

/// A connected piece of the input with its vertices (ascending) and the
/// induced graph on local ids `0..vertices.len()`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub vertices: Vec<VertexId>,
    pub graph: UndirectedGraph,
}

#[derive(Clone, Debug)]
pub struct BridgeDecomposition {
    /// Pieces with at least two vertices, ordered by smallest vertex.
    pub components: Vec<Piece>,
    pub bridges: Vec<(VertexId, VertexId)>,
    /// Vertices left without any edge once bridges are removed.
    pub isolated: Vec<VertexId>,
}

pub fn decompose(g: &UndirectedGraph) -> BridgeDecomposition {
    let bridge_ids = find_bridges(g);
    let bridges = bridge_ids
        .iter()
        .map(|&e| {
            let [u, v] = g.ends(e);
            (u.min(v), u.max(v))
        })
        .collect();
    let rest = without_edges(g, &bridge_ids);
    let mut components = Vec::new();
    let mut isolated = Vec::new();
    for comp in rest.connected_components() {
        if comp.len() == 1 {
            isolated.push(comp[0]);
        } else {
            components.push(Piece {
                graph: rest.induced(&comp),
                vertices: comp,
            });
        }
    }
    BridgeDecomposition {
        components,
        bridges,
        isolated,
    }
}

fn without_edges(g: &UndirectedGraph, drop: &[EdgeId]) -> UndirectedGraph {
    let mut skip = vec![false; g.edge_slots()];
    for &e in drop {
        skip[e] = true;
    }
    let edges = (0..g.edge_slots())
        .filter(|&e| g.capacity(e) > 0 && !skip[e])
        .map(|e| {
            let [u, v] = g.ends(e);
            (u, v, g.capacity(e))
        });
    UndirectedGraph::from_edges(g.vertex_slots(), edges)
}

/// One spliced-out vertex and the neighbour it hangs from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree2Record {
    pub removed: VertexId,
    pub attach: VertexId,
    /// Edge added between the two former neighbours, if there were two.
    pub replacement: Option<(VertexId, VertexId, Capacity)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Degree2Log {
    pub records: Vec<Degree2Record>,
}

/// A piece after degree-2 contraction. `survivors[i]` is the piece-local id
/// of reduced vertex `i`; the log uses piece-local ids.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: UndirectedGraph,
    pub survivors: Vec<VertexId>,
    pub log: Degree2Log,
}

/// Splices out weighted-degree-2 vertices until none is left or at most two
/// vertices remain. The input must have no cut of capacity below 2.
pub fn contract_degree2(component: &UndirectedGraph) -> Reduced {
    let mut g = component.clone();
    let mut log = Degree2Log::default();
    let mut queued = vec![false; g.vertex_slots()];
    let mut queue: VecDeque<VertexId> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    for &v in &queue {
        queued[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if g.vertex_count() <= 2 || !g.is_alive(v) || g.degree(v) != 2 {
            continue;
        }
        let nbrs: Vec<(VertexId, Capacity)> = g.neighbors(v).collect();
        g.remove_vertex(v);
        let record = match nbrs[..] {
            [(a, _)] => Degree2Record {
                removed: v,
                attach: a,
                replacement: None,
            },
            [(a, ca), (b, cb)] => {
                let c = ca.min(cb);
                g.add_capacity(a, b, c);
                Degree2Record {
                    removed: v,
                    attach: a,
                    replacement: Some((a, b, c)),
                }
            }
            _ => unreachable!("degree 2 means at most two neighbours"),
        };
        log.records.push(record);
        for (w, _) in nbrs {
            if g.is_alive(w) && g.degree(w) == 2 && !queued[w] {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }
    let survivors: Vec<VertexId> = g.vertices().collect();
    Reduced {
        graph: g.induced(&survivors),
        survivors,
        log,
    }
}

/// Adds weight-0 edges from vertex 0 to the smallest vertex of every other
/// connected component of the edge set.
pub(crate) fn join_components(n: usize, edges: &mut Vec<(VertexId, VertexId, Capacity)>) {
    let mut sets = DisjointSets::new(n);
    for &(u, v, _) in edges.iter() {
        sets.union(u, v);
    }
    for v in 1..n {
        if sets.union(0, v).is_some() {
            edges.push((0, v, 0));
        }
    }
}

/// Tree edges for the vertices of one piece, given the cut tree of its
/// reduced graph: reduced-tree edges plus weight-2 attachments for every
/// spliced vertex. Ids are piece-local.
pub fn expand_reduced(reduced: &Reduced, tree: &CutTree) -> Vec<(VertexId, VertexId, Capacity)> {
    assert_eq!(tree.len(), reduced.survivors.len(), "tree does not match the reduced graph");
    let mut edges: Vec<_> = tree
        .edges()
        .map(|(a, b, w)| (reduced.survivors[a], reduced.survivors[b], w))
        .collect();
    // attachments chase later removals until they land on a survivor
    let mut attach: std::collections::HashMap<VertexId, VertexId> =
        reduced.log.records.iter().map(|r| (r.removed, r.attach)).collect();
    for r in reduced.log.records.iter().rev() {
        let a = attach.get(&r.attach).copied().unwrap_or(r.attach);
        attach.insert(r.removed, a);
        edges.push((r.removed, a, 2));
    }
    edges
}

/// One cut tree over all `n` vertices: piece trees mapped back, bridges as
/// weight-1 edges, separate components joined by weight-0 edges.
pub fn stitch(
    n: usize,
    decomp: &BridgeDecomposition,
    reduced: &[Reduced],
    trees: &[CutTree],
) -> Result<CutTree, TreeError> {
    assert_eq!(decomp.components.len(), reduced.len(), "one reduction per component");
    assert_eq!(decomp.components.len(), trees.len(), "one tree per component");
    let mut edges = Vec::with_capacity(n);
    for ((piece, red), tree) in decomp.components.iter().zip(reduced).zip(trees) {
        for (a, b, w) in expand_reduced(red, tree) {
            edges.push((piece.vertices[a], piece.vertices[b], w));
        }
    }
    edges.extend(decomp.bridges.iter().map(|&(u, v)| (u, v, 1)));
    join_components(n, &mut edges);
    CutTree::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1)))
    }

    fn barbell() -> UndirectedGraph {
        UndirectedGraph::from_edges(
            6,
            [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1), (2, 3, 1)],
        )
    }

    fn complete(n: usize) -> UndirectedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1));
            }
        }
        UndirectedGraph::from_edges(n, edges)
    }

    #[test]
    fn bridges() {
        let path = UndirectedGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]);
        assert_eq!(find_bridges(&path), vec![0, 1]);
        assert!(find_bridges(&cycle(4)).is_empty());
        let g = barbell();
        assert_eq!(find_bridges(&g), vec![g.find_edge(2, 3).unwrap()]);
        // a doubled edge is not a unit cut
        let double = UndirectedGraph::from_edges(2, [(0, 1, 2)]);
        assert!(find_bridges(&double).is_empty());
    }

    #[test]
    fn decomposition_shapes() {
        let d = decompose(&barbell());
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.bridges, vec![(2, 3)]);
        assert_eq!(d.components[0].vertices, vec![0, 1, 2]);

        let tree = UndirectedGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]);
        let d = decompose(&tree);
        assert!(d.components.is_empty());
        assert_eq!(d.bridges.len(), 3);
        assert_eq!(d.isolated, vec![0, 1, 2, 3]);

        let d = decompose(&cycle(4));
        assert_eq!(d.components.len(), 1);
        assert!(d.bridges.is_empty());
    }

    #[test]
    fn degree2_cycle() {
        let r = contract_degree2(&cycle(4));
        assert_eq!(r.graph.vertex_count(), 2);
        assert_eq!(r.graph.edges().collect::<Vec<_>>(), vec![(0, 1, 2)]);
        assert_eq!(r.log.records.len(), 2);
    }

    #[test]
    fn degree2_leaves_k4_alone() {
        let r = contract_degree2(&complete(4));
        assert_eq!(r.graph.vertex_count(), 4);
        assert!(r.log.records.is_empty());
    }

    #[test]
    fn degree2_subdivided_k4_edge() {
        // K4 with edge 0-1 subdivided by vertex 4
        let mut edges: Vec<_> = complete(4).edges().filter(|&(u, v, _)| (u, v) != (0, 1)).collect();
        edges.extend([(0, 4, 1), (4, 1, 1)]);
        let g = UndirectedGraph::from_edges(5, edges);
        let r = contract_degree2(&g);
        assert_eq!(r.log.records.len(), 1);
        assert_eq!(r.log.records[0].removed, 4);
        assert_eq!(r.graph.edge_count(), 6);
    }

    #[test]
    fn stitch_barbell_and_cycle() {
        let g = barbell();
        let d = decompose(&g);
        let reduced: Vec<_> = d.components.iter().map(|p| contract_degree2(&p.graph)).collect();
        // each triangle shrinks to two vertices joined with capacity 2
        let trees: Vec<_> = reduced
            .iter()
            .map(|r| {
                assert_eq!(r.graph.vertex_count(), 2);
                CutTree::from_edges(2, &[(0, 1, 2)]).unwrap()
            })
            .collect();
        let t = stitch(6, &d, &reduced, &trees).unwrap();
        assert_eq!(t.query(0, 5), Ok(1));
        assert_eq!(t.query(0, 1), Ok(2));
        assert_eq!(t.query(4, 5), Ok(2));

        let g = cycle(5);
        let d = decompose(&g);
        let reduced: Vec<_> = d.components.iter().map(|p| contract_degree2(&p.graph)).collect();
        let trees = vec![CutTree::from_edges(2, &[(0, 1, 2)]).unwrap()];
        let t = stitch(5, &d, &reduced, &trees).unwrap();
        for s in 0..5 {
            for u in 0..5 {
                if s != u {
                    assert_eq!(t.query(s, u), Ok(2));
                }
            }
        }
    }

    #[test]
    fn stitch_joins_components_with_zero() {
        let g = UndirectedGraph::from_edges(4, [(0, 1, 1), (2, 3, 1)]);
        let d = decompose(&g);
        let t = stitch(4, &d, &[], &[]).unwrap();
        assert_eq!(t.query(0, 1), Ok(1));
        assert_eq!(t.query(1, 3), Ok(0));
    }
}
