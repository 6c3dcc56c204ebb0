mod common;

use std::collections::BTreeMap;

use cuttree::generate::{gnp, preferential_attachment, random_tree};
use cuttree::{connectivity_dendrogram, connectivity_distribution, construct, BuildConfig, CutTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn trees() -> Vec<CutTree> {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    let mut out = Vec::new();
    for i in 0..50 {
        let n = r.gen_range(2..=200);
        let tree = match i % 3 {
            // random shape and weights, including repeated weights
            0 => {
                let shape = random_tree(n, r.gen());
                let edges: Vec<_> = shape.edges().map(|(u, v, _)| (u, v, r.gen_range(0..6))).collect();
                CutTree::from_edges(n, &edges).unwrap()
            }
            // possibly disconnected input: weight-0 stitch edges
            1 => construct(&gnp(n.min(80), 3.0 / n.min(80) as f64, r.gen()), &BuildConfig::default()),
            _ => construct(&preferential_attachment(n, r.gen_range(1..4), r.gen()), &BuildConfig::default()),
        };
        out.push(tree);
    }
    out
}

#[test]
fn distribution_is_the_pair_histogram() {
    for tree in trees() {
        let n = tree.len() as u64;
        let mut hist = BTreeMap::new();
        for s in 0..tree.len() {
            for t in s + 1..tree.len() {
                *hist.entry(tree.query(s, t).unwrap()).or_insert(0u64) += 1;
            }
        }
        let expected: Vec<_> = hist.into_iter().rev().collect();
        let dist = connectivity_distribution(&tree);
        assert_eq!(dist, expected);
        assert_eq!(dist.iter().map(|&(_, c)| c).sum::<u64>(), n * (n - 1) / 2);
    }
}

#[test]
fn dendrogram_labels_match_queries() {
    for tree in trees() {
        let n = tree.len();
        let d = connectivity_dendrogram(&tree);
        assert_eq!(d.merges.len(), n - 1);
        for (i, m) in d.merges.iter().enumerate() {
            let a = d.leaves_under(m.children[0]);
            let b = d.leaves_under(m.children[1]);
            for &s in &a {
                for &t in &b {
                    assert_eq!(tree.query(s, t).unwrap(), m.label, "merge {i}");
                }
            }
            // labels never increase towards the root
            for &c in &m.children {
                if let Some(l) = d.label(c) {
                    assert!(l >= m.label);
                }
            }
        }
    }
}
