mod common;

use std::collections::HashMap;

use cuttree::generate::{barbell, cycle, gnp_connected, preferential_attachment};
use cuttree::packing::{find_trivial_cuts, greedy_pack, Packing};
use cuttree::UndirectedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graphs() -> Vec<UndirectedGraph> {
    let mut out = vec![barbell(3, 5), cycle(12)];
    let mut r = ChaCha8Rng::seed_from_u64(11);
    while out.len() < 100 {
        let n = r.gen_range(4..40);
        let g = match out.len() % 3 {
            0 => gnp_connected(n, r.gen_range(0.1..0.6), r.gen()),
            1 => preferential_attachment(n, r.gen_range(1..5), r.gen()),
            _ => common::with_random_capacities(&gnp_connected(n, 0.3, r.gen()), 3, r.gen()),
        };
        out.push(g);
    }
    out
}

/// Checks edge-disjointness, the r-tree in-degree conditions, the out-degree
/// limit and that `count` matches tree membership.
fn check_packing(g: &UndirectedGraph, p: &Packing, beta: Option<usize>) {
    let n = g.vertex_slots();
    let mut arcs: HashMap<(usize, usize), u64> = HashMap::new();
    let mut count = vec![0u64; n];
    count[p.root] = p.trees.len() as u64;
    for tree in &p.trees {
        let mut inside = vec![false; n];
        inside[p.root] = true;
        let mut children = vec![0usize; n];
        for &(child, parent) in tree {
            assert_ne!(child, p.root, "root has in-degree 0");
            assert!(!inside[child], "vertex {child} has in-degree above 1");
            assert!(inside[parent], "arc {parent}->{child} leaves the tree");
            inside[child] = true;
            count[child] += 1;
            children[parent] += 1;
            *arcs.entry((parent, child)).or_default() += 1;
        }
        if let Some(b) = beta {
            assert!(children.iter().all(|&c| c <= b), "out-degree above beta");
        }
    }
    for (&(u, v), &k) in &arcs {
        let e = g.find_edge(u, v).expect("tree arc is a graph edge");
        assert!(k <= g.capacity(e), "arc {u}->{v} used {k} times");
        assert_eq!(p.used(g, e, u), k);
    }
    assert_eq!(count, p.count);
}

#[test]
fn packings_are_valid_and_trivial_cuts_are_exact() {
    let mut cuts = 0;
    for (i, g) in graphs().iter().enumerate() {
        let m = common::matrix(g);
        let roots = [0, i % g.vertex_slots()];
        for beta in [None, Some(1), Some(2)] {
            for &r in &roots {
                let p = greedy_pack(g, r, beta);
                check_packing(g, &p, beta);
                for v in g.vertices() {
                    assert!(p.count[v] <= g.degree(v) || v == r);
                }
                for v in find_trivial_cuts(&p, g) {
                    assert_eq!(common::max_flow(&m, r, v), g.degree(v), "graph {i} root {r} vertex {v}");
                    cuts += 1;
                }
            }
        }
    }
    assert!(cuts > 1000, "packing certified only {cuts} cuts");
}
