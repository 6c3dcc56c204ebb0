//! Gomory-Hu cut trees for large undirected graphs.
//!
//! A cut tree stores, for every pair of vertices, the value of a minimum cut
//! separating them: it is the smallest edge weight on the tree path between
//! the two vertices. [`construct`] builds one with a staged pipeline (bridge
//! and degree-2 reductions, greedy tree packing, a goal-oriented sweep,
//! and bidirectional Dinitz for the remaining separations); [`analytics`]
//! derives the connectivity distribution and dendrogram from it.
//!
//! ```
//! use cuttree::{construct, BuildConfig, UndirectedGraph};
//!
//! let g = UndirectedGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1)]);
//! let tree = construct(&g, &BuildConfig::default());
//! assert_eq!(tree.query(0, 1), Ok(2));
//! assert_eq!(tree.query(0, 3), Ok(1));
//! ```

pub mod analytics;
pub mod generate;
pub mod goal;
pub mod gomory_hu;
pub mod graph;
pub mod io;
pub mod maxflow;
pub mod packing;
pub mod pipeline;
pub mod reductions;
pub mod tree;

pub use analytics::{connectivity_dendrogram, connectivity_distribution, Dendrogram, DisjointSets, Merge};
pub use gomory_hu::{BuildError, CutMethod, GhState};
pub use graph::{normalize, Capacity, EdgeId, UndirectedGraph, VertexId, VertexMapping};
pub use io::{LabeledGraph, LabeledTree, ParseError};
pub use maxflow::{FlowCounters, FlowEngine, FlowError, FlowState, MaxFlowSolver};
pub use pipeline::{construct, construct_with_stats, BuildConfig, BuildStats, Stage, Variant};
pub use tree::{CutTree, TreeError, INFINITE};
