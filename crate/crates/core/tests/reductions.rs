mod common;

use cuttree::generate::{barbell, connect, cycle, gnp, gnp_connected, preferential_attachment, random_tree, subdivide};
use cuttree::reductions::{contract_degree2, decompose, find_bridges};
use cuttree::{construct, construct_with_stats, BuildConfig, UndirectedGraph, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graphs() -> Vec<UndirectedGraph> {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    for i in 0..50 {
        let n = r.gen_range(4..45);
        let g = match i % 6 {
            0 => random_tree(n, r.gen()),
            1 => cycle(n),
            2 => barbell(r.gen_range(2..5), r.gen_range(3..7)),
            3 => subdivide(&gnp_connected(n, 0.2, r.gen()), 0.4, r.gen()),
            4 => connect(&preferential_attachment(n, 1, r.gen()), r.gen()),
            _ => gnp(n, 2.0 / n as f64, r.gen()),
        };
        out.push(g);
    }
    out
}

fn table(g: &UndirectedGraph, cfg: &BuildConfig) -> Vec<u64> {
    let tree = construct(g, cfg);
    let n = g.vertex_slots();
    (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).map(|(s, t)| tree.query(s, t).unwrap()).collect()
}

#[test]
fn reductions_do_not_change_queries() {
    let (mut bridges, mut removed) = (0, 0);
    for g in graphs() {
        let oracle = common::all_pairs(&g);
        let n = g.vertex_slots();
        let expected: Vec<u64> = (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).map(|(s, t)| oracle[s][t]).collect();
        for v in [Variant::A0, Variant::A5] {
            let mut on = BuildConfig::variant(v);
            on.reductions = true;
            let mut off = on.clone();
            off.reductions = false;
            assert_eq!(table(&g, &on), expected);
            assert_eq!(table(&g, &off), expected);
            let (_, stats) = construct_with_stats(&g, &on);
            bridges += stats.bridges;
            removed += stats.degree2_removed;
        }
    }
    assert!(bridges > 100 && removed > 100, "reductions barely fired: {bridges} bridges, {removed} removed");
}

#[test]
fn bridges_are_exactly_the_unit_cut_edges() {
    for g in graphs() {
        let m = common::matrix(&g);
        let mut found: Vec<_> = find_bridges(&g).into_iter().map(|e| g.ends(e)).collect();
        found.sort_unstable();
        let mut expected = Vec::new();
        for (u, v, c) in g.edges() {
            if c == 1 && common::max_flow(&m, u, v) == 1 {
                expected.push(g.ends(g.find_edge(u, v).unwrap()));
            }
        }
        expected.sort_unstable();
        assert_eq!(found, expected);
    }
}

#[test]
fn degree2_contraction_preserves_connectivity() {
    for g in graphs() {
        let d = decompose(&g);
        for piece in &d.components {
            let reduced = contract_degree2(&piece.graph);
            let inner = common::all_pairs(&piece.graph);
            let outer = common::all_pairs(&reduced.graph);
            // survivors keep their pairwise connectivity
            let kept = &reduced.survivors;
            for x in 0..kept.len() {
                for y in x + 1..kept.len() {
                    assert_eq!(outer[x][y], inner[kept[x]][kept[y]]);
                }
            }
        }
    }
}
