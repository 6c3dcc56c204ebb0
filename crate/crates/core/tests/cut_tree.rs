#![allow(clippy::needless_range_loop)]

mod common;

use cuttree::generate::{barbell, cycle, gnp_connected, preferential_attachment, random_tree, subdivide};
use cuttree::gomory_hu::GhState;
use cuttree::{construct, BuildConfig, CutTree, FlowEngine, UndirectedGraph, Variant};
use proptest::prelude::*;

fn assert_valid(g: &UndirectedGraph, tree: &CutTree, what: &str) {
    let table = common::all_pairs(g);
    let n = g.vertex_slots();
    assert_eq!(tree.len(), n);
    for s in 0..n {
        for t in s + 1..n {
            assert_eq!(tree.query(s, t).unwrap(), table[s][t], "{what}: pair ({s}, {t})");
        }
    }
}

/// Each tree edge weight equals the capacity of the cut it induces.
fn assert_edge_cuts(g: &UndirectedGraph, tree: &CutTree) {
    for (child, _, w) in tree.edges() {
        let mut inside = vec![false; tree.len()];
        for v in 0..tree.len() {
            let mut x = v;
            loop {
                if x == child {
                    inside[v] = true;
                    break;
                }
                match tree.parent(x) {
                    Some(p) => x = p,
                    None => break,
                }
            }
        }
        assert_eq!(g.cut_capacity(&inside), w, "edge above {child}");
    }
}

fn families() -> Vec<(String, UndirectedGraph)> {
    let mut out = vec![
        ("barbell".to_string(), barbell(3, 4)),
        ("cycle".to_string(), cycle(9)),
        ("tree".to_string(), random_tree(15, 3)),
        ("subdivided".to_string(), subdivide(&gnp_connected(14, 0.3, 8), 0.3, 2)),
    ];
    for seed in 0..12 {
        out.push((format!("gnp{seed}"), gnp_connected(8 + seed as usize * 3, 0.25, seed)));
        out.push((format!("pa{seed}"), preferential_attachment(10 + seed as usize * 3, 2, seed)));
    }
    out
}

#[test]
fn every_variant_matches_oracle() {
    for (name, g) in families() {
        for v in Variant::ALL {
            let tree = construct(&g, &BuildConfig::variant(v));
            assert_valid(&g, &tree, &format!("{name} {v}"));
            assert_edge_cuts(&g, &tree);
        }
    }
}

#[test]
fn oracle_agrees_with_brute_force() {
    let g = gnp_connected(9, 0.4, 1);
    let m = common::matrix(&g);
    for s in 0..9 {
        for t in 0..9 {
            if s != t {
                assert_eq!(common::max_flow(&m, s, t), common::brute_force_cut(&g, s, t));
            }
        }
    }
}

#[test]
fn separate_all_exactly_n_minus_one() {
    let g = gnp_connected(25, 0.2, 4);
    let mut st = GhState::init(g.clone());
    st.separate_all_default(FlowEngine::Bidirectional);
    assert_eq!(st.counters().max_flow_calls, 24);
    assert_valid(&g, &st.finalize().unwrap(), "separate-all");
}

#[test]
fn capacitated_and_disconnected_inputs() {
    let g = UndirectedGraph::from_edges(
        9,
        [(0, 1, 3), (1, 2, 1), (2, 0, 2), (2, 3, 5), (3, 4, 1), (4, 2, 1), (6, 7, 2), (7, 8, 4)],
    );
    for v in Variant::ALL {
        let tree = construct(&g, &BuildConfig::variant(v));
        assert_valid(&g, &tree, &format!("mixed {v}"));
    }
}

#[test]
fn trees_are_deterministic() {
    let g = preferential_attachment(300, 3, 11);
    let a = construct(&g, &BuildConfig::default());
    let b = construct(&g, &BuildConfig::default());
    assert_eq!(a, b);
    let serial = BuildConfig {
        parallel: false,
        ..BuildConfig::default()
    };
    assert_eq!(a, construct(&g, &serial));
}

fn arb_graph() -> impl Strategy<Value = UndirectedGraph> {
    (2usize..14).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u64..4), 0..n * 3)
            .prop_map(move |edges| UndirectedGraph::from_edges(n, edges))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_capacitated_graphs(g in arb_graph(), variant in 0usize..6) {
        let v = Variant::ALL[variant];
        let tree = construct(&g, &BuildConfig::variant(v));
        let table = common::all_pairs(&g);
        for s in 0..g.vertex_slots() {
            for t in s + 1..g.vertex_slots() {
                prop_assert_eq!(tree.query(s, t).unwrap(), table[s][t]);
            }
        }
    }

    #[test]
    fn invariants_hold_after_each_split(g in arb_graph(), seed in 0u64..1000) {
        let mut st = GhState::init(g);
        let mut pick = seed;
        while let Some(&x) = st.open_nodes().first() {
            let m = st.members(x);
            pick = pick.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (pick >> 33) as usize % m.len();
            let j = (i + 1 + (pick >> 13) as usize % (m.len() - 1)) % m.len();
            st.separate(m[i], m[j], cuttree::CutMethod::Flow(FlowEngine::Bidirectional));
            prop_assert!(st.check_invariants().is_ok(), "{:?}", st.check_invariants());
        }
    }
}
