//! Greedy edge-disjoint r-tree packing.
//!
//! Every undirected edge of capacity `c` offers `c` arc slots in each
//! direction. Trees are grown one after another by DFS from the root over
//! arcs with a free slot; a vertex joins a tree at most once and spawns at
//! most `beta` children. If some vertex `v` ends up in `d(v)` trees, those
//! trees certify `d(v)` edge-disjoint r-v paths, so `{v}` is a minimum
//! v-r cut and can be split off without running a flow.

use crate::gomory_hu::{GhState, Role};
use crate::graph::{Capacity, EdgeId, Marker, UndirectedGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub root: VertexId,
    /// Each tree as `(child, parent)` arcs in discovery order.
    pub trees: Vec<Vec<(VertexId, VertexId)>>,
    /// Number of trees containing each vertex (the root counts every tree).
    pub count: Vec<Capacity>,
    used: Vec<[Capacity; 2]>,
}

impl Packing {
    /// Slots of edge `e` consumed in the direction leaving `from`.
    pub fn used(&self, g: &UndirectedGraph, e: EdgeId, from: VertexId) -> Capacity {
        self.used[e][direction(g, e, from)]
    }
}

#[inline]
fn direction(g: &UndirectedGraph, e: EdgeId, from: VertexId) -> usize {
    usize::from(g.ends(e)[0] != from)
}

struct Frame {
    v: VertexId,
    start: usize,
    scanned: usize,
    children: usize,
}

/// Arc lists with lazy removal of exhausted arcs and a rotating start
/// position that persists across trees.
struct ArcLists {
    arcs: Vec<Vec<EdgeId>>,
    dead: Vec<usize>,
    rot: Vec<usize>,
}

impl ArcLists {
    fn compact(&mut self, g: &UndirectedGraph, used: &[[Capacity; 2]], v: VertexId) {
        let list = &mut self.arcs[v];
        if self.dead[v] * 2 > list.len() {
            let start = self.rot[v].min(list.len());
            list.rotate_left(start);
            list.retain(|&e| used[e][direction(g, e, v)] < g.capacity(e));
            self.rot[v] = 0;
            self.dead[v] = 0;
        }
    }
}

/// Packs r-trees greedily until the root cannot start another one.
/// `beta = None` leaves the out-degree unrestricted.
pub fn greedy_pack(g: &UndirectedGraph, r: VertexId, beta: Option<usize>) -> Packing {
    assert!(g.is_alive(r), "root must be a live vertex");
    let slots = g.vertex_slots();
    let beta = beta.unwrap_or(usize::MAX);
    let mut used = vec![[0; 2]; g.edge_slots()];
    let mut count = vec![0; slots];
    let mut lists = ArcLists {
        arcs: (0..slots)
            .map(|v| if g.is_alive(v) { g.incident(v).collect() } else { Vec::new() })
            .collect(),
        dead: vec![0; slots],
        rot: vec![0; slots],
    };
    let mut in_tree = Marker::default();
    let mut trees = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();
    loop {
        in_tree.reset(slots);
        in_tree.set(r, 0);
        let mut tree = Vec::new();
        stack.push(Frame {
            v: r,
            start: lists.rot[r],
            scanned: 0,
            children: 0,
        });
        while let Some(top) = stack.last_mut() {
            let u = top.v;
            let list = &lists.arcs[u];
            let mut step = None;
            while top.children < beta && top.scanned < list.len() {
                let pos = (top.start + top.scanned) % list.len();
                top.scanned += 1;
                let e = list[pos];
                let w = g.other(e, u);
                let d = direction(g, e, u);
                if used[e][d] < g.capacity(e) && !in_tree.contains(w) {
                    step = Some((pos, e, w, d));
                    break;
                }
            }
            let Some((pos, e, w, d)) = step else {
                stack.pop();
                continue;
            };
            top.children += 1;
            used[e][d] += 1;
            if used[e][d] == g.capacity(e) {
                lists.dead[u] += 1;
            }
            lists.rot[u] = pos + 1;
            in_tree.set(w, 0);
            count[w] += 1;
            tree.push((w, u));
            lists.compact(g, &used, w);
            stack.push(Frame {
                v: w,
                start: lists.rot[w],
                scanned: 0,
                children: 0,
            });
        }
        if tree.is_empty() {
            break;
        }
        count[r] += 1;
        trees.push(tree);
        lists.compact(g, &used, r);
    }
    Packing {
        root: r,
        trees,
        count,
        used,
    }
}

/// Vertices `v != root` contained in exactly `d(v)` trees.
pub fn find_trivial_cuts(packing: &Packing, g: &UndirectedGraph) -> Vec<VertexId> {
    g.vertices()
        .filter(|&v| v != packing.root && g.degree(v) > 0 && packing.count[v] == g.degree(v))
        .collect()
}

/// Packs from each of the `alpha` highest-degree vertices in turn and
/// splits off every certified singleton cut. Returns the number of cuts.
pub fn apply_packing(state: &mut GhState, alpha: usize, beta: Option<usize>) -> usize {
    let mut roots: Vec<VertexId> = (0..state.vertex_count()).collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(state.initial_degree(v)), v));
    roots.truncate(alpha);
    let mut cuts = 0;
    for r in roots {
        let x = state.node_of(r);
        if state.node_size(x) < 2 {
            continue;
        }
        let ng = state.node_graph(x).expect("open node owns a graph");
        let packing = greedy_pack(&ng.graph, state.local_of(r), beta);
        let found: Vec<VertexId> = find_trivial_cuts(&packing, &ng.graph)
            .into_iter()
            .filter_map(|v| match ng.role[v] {
                Role::Member(o) => Some(o),
                _ => None,
            })
            .collect();
        for v in found {
            state.separate_singleton(v);
            cuts += 1;
        }
    }
    cuts
}
