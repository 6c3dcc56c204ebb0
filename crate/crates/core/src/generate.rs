//! Seeded synthetic graphs. All generators return unit-capacity graphs on
//! dense ids and are deterministic for a given seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytics::DisjointSets;
use crate::graph::{UndirectedGraph, VertexId};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit(n: usize, edges: Vec<(VertexId, VertexId)>) -> UndirectedGraph {
    UndirectedGraph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
}

/// Erdos-Renyi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut r = rng(seed);
    unit(n, gnp_edges(n, p, &mut r))
}

fn gnp_edges(n: usize, p: f64, r: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Connected G(n, p) by rejection. After 100 rejected draws the last draw
/// is patched by linking consecutive components with one random edge each.
pub fn gnp_connected(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for _ in 0..100 {
        edges = gnp_edges(n, p, &mut r);
        let g = unit(n, edges.clone());
        if g.is_connected() {
            return g;
        }
    }
    let comps = unit(n, edges.clone()).connected_components();
    for pair in comps.windows(2) {
        let a = *pair[0].choose(&mut r).expect("non-empty component");
        let b = *pair[1].choose(&mut r).expect("non-empty component");
        edges.push((a, b));
    }
    unit(n, edges)
}

/// Preferential attachment: a clique on `m + 1` vertices, then each new
/// vertex links to `m` distinct earlier vertices picked with probability
/// proportional to their degree.
pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> UndirectedGraph {
    let m = m.max(1);
    let mut r = rng(seed);
    let core = (m + 1).min(n);
    let mut edges = Vec::new();
    // every edge endpoint once: sampling from it is degree-proportional
    let mut ends: Vec<VertexId> = Vec::new();
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    let mut picked = Vec::with_capacity(m);
    for v in core..n {
        picked.clear();
        while picked.len() < m.min(v) {
            let u = if ends.is_empty() { r.gen_range(0..v) } else { ends[r.gen_range(0..ends.len())] };
            if !picked.contains(&u) {
                picked.push(u);
            }
        }
        for &u in &picked {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    unit(n, edges)
}

/// `clusters` cliques of `size` vertices, consecutive ones joined by a
/// single edge.
pub fn barbell(clusters: usize, size: usize) -> UndirectedGraph {
    let mut edges = Vec::new();
    for c in 0..clusters {
        let base = c * size;
        for u in 0..size {
            for v in u + 1..size {
                edges.push((base + u, base + v));
            }
        }
        if c > 0 {
            edges.push((base - 1, base));
        }
    }
    unit(clusters * size, edges)
}

/// Random recursive tree.
pub fn random_tree(n: usize, seed: u64) -> UndirectedGraph {
    let mut r = rng(seed);
    let edges = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
    unit(n, edges)
}

pub fn cycle(n: usize) -> UndirectedGraph {
    unit(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Replaces each edge by a two-edge path through a new vertex with
/// probability `p`.
pub fn subdivide(g: &UndirectedGraph, p: f64, seed: u64) -> UndirectedGraph {
    let mut r = rng(seed);
    let mut n = g.vertex_slots();
    let mut edges = Vec::new();
    for (u, v, c) in g.edges() {
        if r.gen_bool(p) {
            edges.push((u, n, c));
            edges.push((n, v, c));
            n += 1;
        } else {
            edges.push((u, v, c));
        }
    }
    UndirectedGraph::from_edges(n, edges)
}

/// Random spanning tree edges added to `g` until it is connected.
pub fn connect(g: &UndirectedGraph, seed: u64) -> UndirectedGraph {
    let mut r = rng(seed);
    let n = g.vertex_slots();
    let mut sets = DisjointSets::new(n);
    let mut edges: Vec<_> = g.edges().collect();
    for &(u, v, _) in &edges {
        sets.union(u, v);
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut r);
    for w in order.windows(2) {
        if sets.union(w[0], w[1]).is_some() {
            edges.push((w[0], w[1], 1));
        }
    }
    UndirectedGraph::from_edges(n, edges)
}
