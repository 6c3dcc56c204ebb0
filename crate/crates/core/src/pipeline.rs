//! End-to-end construction: reductions, then per piece tree packing, the
//! goal-oriented sweep and the pair-selection stages, then reassembly.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::goal::goal_oriented_sweep;
use crate::gomory_hu::{CutMethod, GhState};
use crate::graph::{Capacity, UndirectedGraph, VertexId};
use crate::maxflow::{FlowCounters, FlowEngine};
use crate::packing::apply_packing;
use crate::reductions::{contract_degree2, decompose, expand_reduced, join_components};
use crate::tree::CutTree;

/// Preset feature ladders; each adds one technique to the previous one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    A0,
    A1,
    A2,
    A3,
    A4,
    A5,
}

impl Variant {
    pub const ALL: [Variant; 6] = [Variant::A0, Variant::A1, Variant::A2, Variant::A3, Variant::A4, Variant::A5];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown variant {s:?} (expected A0..A5)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildConfig {
    pub variant: Option<Variant>,
    /// Number of packing roots.
    pub alpha: usize,
    /// Out-degree limit inside packed trees; `None` is unlimited.
    pub beta: Option<usize>,
    /// Detour budget of the goal-oriented search.
    pub gamma: usize,
    /// Number of top-degree vertices separated first.
    pub k: usize,
    pub flow_engine: FlowEngine,
    pub reductions: bool,
    pub packing: bool,
    pub goal_sweep: bool,
    pub high_degree_pairs: bool,
    pub adjacent_pairs: bool,
    /// Solve independent pieces on the rayon pool.
    pub parallel: bool,
}

impl BuildConfig {
    pub fn variant(v: Variant) -> Self {
        let at_least = |w: Variant| v >= w;
        BuildConfig {
            variant: Some(v),
            alpha: 1,
            beta: None,
            gamma: 2,
            k: 10,
            flow_engine: if at_least(Variant::A1) {
                FlowEngine::Bidirectional
            } else {
                FlowEngine::Unidirectional
            },
            reductions: at_least(Variant::A2),
            high_degree_pairs: at_least(Variant::A2),
            adjacent_pairs: at_least(Variant::A3),
            packing: at_least(Variant::A4),
            goal_sweep: at_least(Variant::A5),
            parallel: true,
        }
    }
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig::variant(Variant::A5)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Reductions,
    Packing,
    GoalSweep,
    HighDegree,
    Adjacent,
    SeparateAll,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Reductions,
        Stage::Packing,
        Stage::GoalSweep,
        Stage::HighDegree,
        Stage::Adjacent,
        Stage::SeparateAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Reductions => "reductions",
            Stage::Packing => "packing",
            Stage::GoalSweep => "goal-sweep",
            Stage::HighDegree => "high-degree",
            Stage::Adjacent => "adjacent",
            Stage::SeparateAll => "separate-all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageStats {
    /// Tree edges produced by the stage.
    pub cuts: u64,
    pub flow: FlowCounters,
    pub time: Duration,
}

impl std::ops::AddAssign for StageStats {
    fn add_assign(&mut self, o: Self) {
        self.cuts += o.cuts;
        self.flow += o.flow;
        self.time += o.time;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub stages: [StageStats; 6],
    pub bridges: u64,
    pub degree2_removed: u64,
    /// Pieces handed to the Gomory-Hu stages (including trivial ones).
    pub pieces: u64,
    pub total_time: Duration,
}

impl BuildStats {
    pub fn stage(&self, s: Stage) -> &StageStats {
        &self.stages[s as usize]
    }

    fn stage_mut(&mut self, s: Stage) -> &mut StageStats {
        &mut self.stages[s as usize]
    }

    pub fn flow_totals(&self) -> FlowCounters {
        let mut total = FlowCounters::default();
        for s in &self.stages {
            total += s.flow;
        }
        total
    }

    /// Max-flow runs of any kind, goal-oriented ones included.
    pub fn flow_invocations(&self) -> u64 {
        let t = self.flow_totals();
        t.max_flow_calls + t.goal_calls
    }

    fn merge(&mut self, o: &BuildStats) {
        for (a, b) in self.stages.iter_mut().zip(&o.stages) {
            *a += *b;
        }
        self.bridges += o.bridges;
        self.degree2_removed += o.degree2_removed;
        self.pieces += o.pieces;
    }
}

/// While some node holds two of the `k` highest-degree vertices (ranked
/// once, on entry), separates the two best-ranked such vertices.
pub fn separate_high_degree_pairs(state: &mut GhState, k: usize, engine: FlowEngine) -> usize {
    let mut top: Vec<VertexId> = (0..state.vertex_count()).collect();
    top.sort_by_key(|&v| (std::cmp::Reverse(state.initial_degree(v)), v));
    top.truncate(k);
    let mut count = 0;
    loop {
        let mut pair = None;
        'search: for (i, &a) in top.iter().enumerate() {
            for &b in &top[i + 1..] {
                if state.node_of(a) == state.node_of(b) {
                    pair = Some((a, b));
                    break 'search;
                }
            }
        }
        let Some((s, t)) = pair else {
            return count;
        };
        state.separate(s, t, CutMethod::Flow(engine));
        count += 1;
    }
}

/// Finishes every node, preferring pairs adjacent in the node graph and
/// falling back to the two smallest members.
pub fn separate_adjacent_pairs(state: &mut GhState, engine: FlowEngine) -> usize {
    state.reset_cursors();
    let mut stack = state.open_nodes();
    stack.reverse();
    let mut count = 0;
    while let Some(x) = stack.pop() {
        if state.node_size(x) < 2 {
            continue;
        }
        let (s, t) = match state.first_adjacent_pair(x) {
            Some(p) => p,
            None => {
                let m = state.members(x);
                (m[0], m[1])
            }
        };
        let xs = state.separate(s, t, CutMethod::Flow(engine));
        count += 1;
        stack.push(xs);
        stack.push(x);
    }
    count
}

/// Runs the enabled stages on one connected graph with dense ids.
fn solve_piece(g: UndirectedGraph, cfg: &BuildConfig) -> (Vec<(VertexId, VertexId, Capacity)>, BuildStats) {
    let mut stats = BuildStats {
        pieces: 1,
        ..BuildStats::default()
    };
    let mut state = GhState::init(g);
    let mut run = |stage: Stage, state: &mut GhState, f: &mut dyn FnMut(&mut GhState)| {
        let (before, edges, start) = (state.counters(), state.tree_edges().len(), Instant::now());
        f(state);
        let after = state.counters();
        let s = stats.stage_mut(stage);
        s.time += start.elapsed();
        s.cuts += (state.tree_edges().len() - edges) as u64;
        s.flow += diff(after, before);
    };
    let engine = cfg.flow_engine;
    if cfg.packing && cfg.alpha > 0 {
        run(Stage::Packing, &mut state, &mut |st| {
            apply_packing(st, cfg.alpha, cfg.beta);
        });
    }
    if cfg.goal_sweep {
        run(Stage::GoalSweep, &mut state, &mut |st| {
            goal_oriented_sweep(st, cfg.gamma);
        });
    }
    if cfg.high_degree_pairs {
        run(Stage::HighDegree, &mut state, &mut |st| {
            separate_high_degree_pairs(st, cfg.k, engine);
        });
    }
    if cfg.adjacent_pairs {
        run(Stage::Adjacent, &mut state, &mut |st| {
            separate_adjacent_pairs(st, engine);
        });
    }
    run(Stage::SeparateAll, &mut state, &mut |st| st.separate_all_default(engine));
    let edges = state.finalize_edges().expect("all nodes are singletons");
    (edges, stats)
}

fn diff(a: FlowCounters, b: FlowCounters) -> FlowCounters {
    FlowCounters {
        max_flow_calls: a.max_flow_calls - b.max_flow_calls,
        unidirectional_phases: a.unidirectional_phases - b.unidirectional_phases,
        bidirectional_phases: a.bidirectional_phases - b.bidirectional_phases,
        goal_calls: a.goal_calls - b.goal_calls,
        goal_completions: a.goal_completions - b.goal_completions,
        augmentations: a.augmentations - b.augmentations,
        arc_scans: a.arc_scans - b.arc_scans,
    }
}

/// Local piece solved to global tree edges.
type PieceResult = (Vec<(VertexId, VertexId, Capacity)>, BuildStats);

fn solve_all<T: Sync>(
    items: &[T],
    cfg: &BuildConfig,
    f: impl Fn(&T) -> PieceResult + Sync + Send,
) -> Vec<PieceResult> {
    if cfg.parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Builds a cut tree for any graph (disconnected inputs get weight-0 edges
/// between components) together with per-stage counters.
pub fn construct_with_stats(g: &UndirectedGraph, cfg: &BuildConfig) -> (CutTree, BuildStats) {
    let start = Instant::now();
    let n = g.vertex_slots();
    assert_eq!(g.vertex_count(), n, "graph ids must be dense");
    let mut stats = BuildStats::default();
    let mut edges = Vec::with_capacity(n);

    let results = if cfg.reductions {
        let t0 = Instant::now();
        let decomp = decompose(g);
        let reduced: Vec<_> = decomp.components.iter().map(|p| contract_degree2(&p.graph)).collect();
        stats.bridges = decomp.bridges.len() as u64;
        stats.degree2_removed = reduced.iter().map(|r| r.log.records.len() as u64).sum();
        stats.stage_mut(Stage::Reductions).time = t0.elapsed();
        stats.stage_mut(Stage::Reductions).cuts = stats.bridges + stats.degree2_removed;
        edges.extend(decomp.bridges.iter().map(|&(u, v)| (u, v, 1)));
        let jobs: Vec<_> = decomp.components.iter().zip(&reduced).collect();
        solve_all(&jobs, cfg, |&(piece, red)| {
            let (local, st) = solve_piece(red.graph.clone(), cfg);
            let tree = CutTree::from_edges(red.survivors.len(), &local).expect("piece tree");
            let mapped = expand_reduced(red, &tree)
                .into_iter()
                .map(|(a, b, w)| (piece.vertices[a], piece.vertices[b], w))
                .collect();
            (mapped, st)
        })
    } else {
        let comps: Vec<_> = g.connected_components().into_iter().filter(|c| c.len() > 1).collect();
        solve_all(&comps, cfg, |comp| {
            let (local, st) = solve_piece(g.induced(comp), cfg);
            let mapped = local.into_iter().map(|(a, b, w)| (comp[a], comp[b], w)).collect();
            (mapped, st)
        })
    };
    for (piece_edges, st) in &results {
        edges.extend_from_slice(piece_edges);
        stats.merge(st);
    }
    join_components(n, &mut edges);
    let tree = CutTree::from_edges(n, &edges).expect("stitched edges span the graph");
    stats.total_time = start.elapsed();
    (tree, stats)
}

pub fn construct(g: &UndirectedGraph, cfg: &BuildConfig) -> CutTree {
    construct_with_stats(g, cfg).0
}
