//! Reference implementations kept deliberately simple and independent of
//! the library's solvers.
#![allow(dead_code, clippy::needless_range_loop)]

use cuttree::UndirectedGraph;

/// Dense capacity matrix of `g`.
pub fn matrix(g: &UndirectedGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_slots();
    let mut m = vec![vec![0i64; n]; n];
    for (u, v, c) in g.edges() {
        m[u][v] += c as i64;
        m[v][u] += c as i64;
    }
    m
}

/// Edmonds-Karp on a capacity matrix (each undirected edge is a pair of
/// opposite arcs).
pub fn max_flow(cap: &[Vec<i64>], s: usize, t: usize) -> u64 {
    let n = cap.len();
    let mut res: Vec<Vec<i64>> = cap.to_vec();
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && res[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total;
        }
        let mut delta = i64::MAX;
        let mut v = t;
        while v != s {
            delta = delta.min(res[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            res[prev[v]][v] -= delta;
            res[v][prev[v]] += delta;
            v = prev[v];
        }
        total += delta as u64;
    }
}

/// All-pairs connectivity, `table[s][t]` for `s != t`.
pub fn all_pairs(g: &UndirectedGraph) -> Vec<Vec<u64>> {
    let m = matrix(g);
    let n = m.len();
    let mut table = vec![vec![0; n]; n];
    for s in 0..n {
        for t in s + 1..n {
            let f = max_flow(&m, s, t);
            table[s][t] = f;
            table[t][s] = f;
        }
    }
    table
}

/// Minimum cut by enumerating every vertex subset; only for tiny graphs.
pub fn brute_force_cut(g: &UndirectedGraph, s: usize, t: usize) -> u64 {
    let n = g.vertex_slots();
    assert!(n <= 16);
    let edges: Vec<_> = g.edges().collect();
    (0u32..1 << n)
        .filter(|mask| mask >> s & 1 == 1 && mask >> t & 1 == 0)
        .map(|mask| {
            edges
                .iter()
                .filter(|&&(u, v, _)| (mask >> u & 1) != (mask >> v & 1))
                .map(|&(_, _, c)| c)
                .sum()
        })
        .min()
        .unwrap_or(0)
}

/// Dense graph from `(u, v)` pairs with unit capacity.
pub fn graph(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
    UndirectedGraph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1)))
}

/// Copy of `g` with each capacity replaced by a seeded value in `1..=max`.
pub fn with_random_capacities(g: &UndirectedGraph, max: u64, seed: u64) -> UndirectedGraph {
    use rand::{Rng, SeedableRng};
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = g.edges().map(|(u, v, _)| (u, v, r.gen_range(1..=max))).collect();
    UndirectedGraph::from_edges(g.vertex_slots(), edges)
}
