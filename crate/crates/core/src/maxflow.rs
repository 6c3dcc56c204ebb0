//! Dinitz blocking-flow max-flow on undirected capacitated graphs.
//!
//! Each undirected edge `e = {a, b}` (with `ends(e) == [a, b]`) carries one
//! signed flow value: positive means net flow from `a` to `b`. The residual
//! capacity is `cap - f` from `a` and `cap + f` from `b`.
//!
//! Two phase drivers share one blocking-flow routine:
//!
//! * unidirectional: a BFS from the source labels the level graph;
//! * bidirectional: BFS balls grow from both ends, always expanding the
//!   frontier with the smaller incident capacity, until they touch. The
//!   level DAG is never materialized; the DFS walks source-ball levels
//!   upward, crosses at a meeting vertex, then walks sink-ball levels down.

use thiserror::Error;

use crate::graph::{Capacity, EdgeId, Marker, UndirectedGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("sink {0} is reachable in the residual graph; flow is not maximum")]
    SinkReachable(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FlowEngine {
    Unidirectional,
    #[default]
    Bidirectional,
}

/// Work counters accumulated across all runs of one solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlowCounters {
    pub max_flow_calls: u64,
    pub unidirectional_phases: u64,
    pub bidirectional_phases: u64,
    pub goal_calls: u64,
    /// Goal-oriented runs whose relaxed search did not reach maximality.
    pub goal_completions: u64,
    pub augmentations: u64,
    pub arc_scans: u64,
}

impl std::ops::AddAssign for FlowCounters {
    fn add_assign(&mut self, o: Self) {
        self.max_flow_calls += o.max_flow_calls;
        self.unidirectional_phases += o.unidirectional_phases;
        self.bidirectional_phases += o.bidirectional_phases;
        self.goal_calls += o.goal_calls;
        self.goal_completions += o.goal_completions;
        self.augmentations += o.augmentations;
        self.arc_scans += o.arc_scans;
    }
}

/// A materialized s-t flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowState {
    pub source: VertexId,
    pub sink: VertexId,
    pub value: Capacity,
    flow: Vec<i64>,
}

impl FlowState {
    /// Signed flow on `e`, positive in the direction `ends(e)[0] -> ends(e)[1]`.
    pub fn flow(&self, e: EdgeId) -> i64 {
        self.flow.get(e).copied().unwrap_or(0)
    }

    pub fn residual(&self, g: &UndirectedGraph, e: EdgeId, from: VertexId) -> Capacity {
        residual_of(g, e, from, self.flow(e))
    }

    /// Net outflow of `v`.
    pub fn excess_out(&self, g: &UndirectedGraph, v: VertexId) -> i64 {
        g.incident(v)
            .map(|e| {
                if g.ends(e)[0] == v {
                    self.flow(e)
                } else {
                    -self.flow(e)
                }
            })
            .sum()
    }
}

#[inline]
fn residual_of(g: &UndirectedGraph, e: EdgeId, from: VertexId, f: i64) -> Capacity {
    let c = g.capacity(e) as i64;
    let r = if g.ends(e)[0] == from { c - f } else { c + f };
    r as Capacity
}

/// Flow values plus the list of edges that carry any.
#[derive(Clone, Debug, Default)]
pub(crate) struct Residual {
    flow: Vec<i64>,
    touched: Vec<EdgeId>,
}

impl Residual {
    fn clear(&mut self, edge_slots: usize) {
        for &e in &self.touched {
            self.flow[e] = 0;
        }
        self.touched.clear();
        if self.flow.len() < edge_slots {
            self.flow.resize(edge_slots, 0);
        }
    }

    #[inline]
    pub(crate) fn residual(&self, g: &UndirectedGraph, e: EdgeId, from: VertexId) -> Capacity {
        residual_of(g, e, from, self.flow[e])
    }

    #[inline]
    pub(crate) fn push(&mut self, g: &UndirectedGraph, e: EdgeId, from: VertexId, delta: Capacity) {
        if self.flow[e] == 0 {
            self.touched.push(e);
        }
        if g.ends(e)[0] == from {
            self.flow[e] += delta as i64;
        } else {
            self.flow[e] -= delta as i64;
        }
    }
}

/// Scratch for repeated max-flow runs; buffers are sized lazily and reset
/// by epoch stamps, so a solver can be reused across many graphs.
#[derive(Clone, Debug, Default)]
pub struct MaxFlowSolver {
    pub(crate) res: Residual,
    value: Capacity,
    source: VertexId,
    sink: VertexId,
    dist_s: Marker,
    dist_t: Marker,
    cursor: Marker,
    reach: Marker,
    front: Vec<VertexId>,
    next: Vec<VertexId>,
    path_v: Vec<VertexId>,
    path_e: Vec<EdgeId>,
    pub counters: FlowCounters,
}

impl MaxFlowSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> Capacity {
        self.value
    }

    /// Zeroes the flow and records the terminals of a new run.
    pub(crate) fn prepare(&mut self, g: &UndirectedGraph, s: VertexId, t: VertexId) {
        assert!(s != t, "source and sink must differ");
        assert!(g.is_alive(s) && g.is_alive(t), "terminals must be live vertices");
        self.res.clear(g.edge_slots());
        self.value = 0;
        self.source = s;
        self.sink = t;
    }

    pub(crate) fn add_value(&mut self, delta: Capacity) {
        self.value += delta;
    }

    /// Maximum s-t flow value; the flow itself stays in the solver for
    /// [`MaxFlowSolver::min_cut`] and [`MaxFlowSolver::flow_state`].
    pub fn max_flow(
        &mut self,
        g: &UndirectedGraph,
        s: VertexId,
        t: VertexId,
        engine: FlowEngine,
    ) -> Capacity {
        self.prepare(g, s, t);
        self.counters.max_flow_calls += 1;
        match engine {
            FlowEngine::Unidirectional => self.augment_unidirectional(g),
            FlowEngine::Bidirectional => self.augment_bidirectional(g),
        }
        self.value
    }

    /// Runs unidirectional Dinitz phases on top of the current flow.
    pub(crate) fn augment_unidirectional(&mut self, g: &UndirectedGraph) {
        let (s, t) = (self.source, self.sink);
        loop {
            self.counters.unidirectional_phases += 1;
            let Some(dt) = self.levels_from_source(g) else {
                break;
            };
            let dist = &self.dist_s;
            let admissible = |u: VertexId, v: VertexId| match (dist.get(u), dist.get(v)) {
                (Some(du), Some(dv)) => dv == du + 1 && (v == t || dv < dt),
                _ => false,
            };
            let (pushed, augs) = blocking_flow(
                g,
                s,
                t,
                &mut self.res,
                &mut self.cursor,
                &mut self.path_v,
                &mut self.path_e,
                admissible,
            );
            self.value += pushed;
            self.counters.augmentations += augs;
        }
    }

    /// BFS levels from the source in the residual graph; returns the sink
    /// level when reachable.
    fn levels_from_source(&mut self, g: &UndirectedGraph) -> Option<usize> {
        let (s, t) = (self.source, self.sink);
        self.dist_s.reset(g.vertex_slots());
        self.dist_s.set(s, 0);
        self.front.clear();
        self.front.push(s);
        let mut head = 0;
        while head < self.front.len() {
            let u = self.front[head];
            head += 1;
            let du = self.dist_s.get(u).unwrap_or(0);
            if let Some(dt) = self.dist_s.get(t) {
                if du >= dt {
                    break;
                }
            }
            for &e in g.raw_incident(u) {
                if g.capacity(e) == 0 {
                    continue;
                }
                self.counters.arc_scans += 1;
                let v = g.other(e, u);
                if !self.dist_s.contains(v) && self.res.residual(g, e, u) > 0 {
                    self.dist_s.set(v, du + 1);
                    self.front.push(v);
                }
            }
        }
        self.dist_s.get(t)
    }

    /// Runs bidirectional Dinitz phases on top of the current flow.
    pub(crate) fn augment_bidirectional(&mut self, g: &UndirectedGraph) {
        let (s, t) = (self.source, self.sink);
        loop {
            self.counters.bidirectional_phases += 1;
            let Some(ds) = self.bidirectional_levels(g) else {
                break;
            };
            let (dist_s, dist_t) = (&self.dist_s, &self.dist_t);
            let admissible = |u: VertexId, v: VertexId| {
                if let Some(du) = dist_t.get(u) {
                    du > 0 && dist_t.get(v) == Some(du - 1)
                } else if let Some(du) = dist_s.get(u) {
                    du < ds
                        && dist_s.get(v) == Some(du + 1)
                        && (du + 1 < ds || dist_t.contains(v))
                } else {
                    false
                }
            };
            let (pushed, augs) = blocking_flow(
                g,
                s,
                t,
                &mut self.res,
                &mut self.cursor,
                &mut self.path_v,
                &mut self.path_e,
                admissible,
            );
            debug_assert!(pushed > 0, "a meeting vertex guarantees an augmenting path");
            self.value += pushed;
            self.counters.augmentations += augs;
        }
    }

    /// Grows BFS balls around source and sink until they intersect.
    /// Returns the final source-ball radius, or `None` when one side runs
    /// out of residual arcs (the flow is maximum).
    fn bidirectional_levels(&mut self, g: &UndirectedGraph) -> Option<usize> {
        let (s, t) = (self.source, self.sink);
        let slots = g.vertex_slots();
        self.dist_s.reset(slots);
        self.dist_t.reset(slots);
        self.dist_s.set(s, 0);
        self.dist_t.set(t, 0);
        let mut front_s = vec![s];
        let mut front_t = vec![t];
        let (mut vol_s, mut vol_t) = (g.degree(s), g.degree(t));
        let (mut ds, mut dt) = (0usize, 0usize);
        loop {
            let mut met = false;
            let mut vol = 0;
            self.next.clear();
            if vol_s <= vol_t {
                for &u in &front_s {
                    for &e in g.raw_incident(u) {
                        if g.capacity(e) == 0 {
                            continue;
                        }
                        self.counters.arc_scans += 1;
                        let v = g.other(e, u);
                        if !self.dist_s.contains(v) && self.res.residual(g, e, u) > 0 {
                            self.dist_s.set(v, ds + 1);
                            self.next.push(v);
                            vol += g.degree(v);
                            met |= self.dist_t.contains(v);
                        }
                    }
                }
                ds += 1;
                std::mem::swap(&mut front_s, &mut self.next);
                vol_s = vol;
                if front_s.is_empty() {
                    return None;
                }
            } else {
                for &u in &front_t {
                    for &e in g.raw_incident(u) {
                        if g.capacity(e) == 0 {
                            continue;
                        }
                        self.counters.arc_scans += 1;
                        let v = g.other(e, u);
                        if !self.dist_t.contains(v) && self.res.residual(g, e, v) > 0 {
                            self.dist_t.set(v, dt + 1);
                            self.next.push(v);
                            vol += g.degree(v);
                            met |= self.dist_s.contains(v);
                        }
                    }
                }
                dt += 1;
                std::mem::swap(&mut front_t, &mut self.next);
                vol_t = vol;
                if front_t.is_empty() {
                    return None;
                }
            }
            if met {
                return Some(ds);
            }
        }
    }

    /// Vertices reachable from `s` in the residual graph of the current
    /// flow: the minimal minimum s-t cut when the flow is maximum.
    pub fn min_cut(&mut self, g: &UndirectedGraph, s: VertexId) -> Result<Vec<VertexId>, FlowError> {
        let res = &self.res;
        let cut = residual_reach(g, s, &mut self.reach, |e, from| res.residual(g, e, from));
        if self.reach.contains(self.sink) && self.sink != s {
            return Err(FlowError::SinkReachable(self.sink));
        }
        Ok(cut)
    }

    /// One side of a minimum cut, found by growing the residual search from
    /// the source and the reverse search from the sink in lockstep and
    /// keeping whichever completes first. Returns the side and whether it
    /// is the source side. Both sides are minimal for their terminal.
    pub(crate) fn smaller_cut_side(&mut self, g: &UndirectedGraph) -> Result<(Vec<VertexId>, bool), FlowError> {
        let (s, t) = (self.source, self.sink);
        let slots = g.vertex_slots();
        self.reach.reset(slots);
        self.dist_t.reset(slots);
        self.reach.set(s, 0);
        self.dist_t.set(t, 0);
        let mut side_s = vec![s];
        let mut side_t = vec![t];
        let (mut head_s, mut head_t) = (0, 0);
        let (mut work_s, mut work_t) = (0usize, 0usize);
        loop {
            if head_s == side_s.len() {
                return Ok((side_s, true));
            }
            if head_t == side_t.len() {
                return Ok((side_t, false));
            }
            if work_s <= work_t {
                let u = side_s[head_s];
                head_s += 1;
                for e in g.incident(u) {
                    work_s += 1;
                    let v = g.other(e, u);
                    if !self.reach.contains(v) && self.res.residual(g, e, u) > 0 {
                        if self.dist_t.contains(v) {
                            return Err(FlowError::SinkReachable(t));
                        }
                        self.reach.set(v, 0);
                        side_s.push(v);
                    }
                }
            } else {
                let u = side_t[head_t];
                head_t += 1;
                for e in g.incident(u) {
                    work_t += 1;
                    let v = g.other(e, u);
                    if !self.dist_t.contains(v) && self.res.residual(g, e, v) > 0 {
                        if self.reach.contains(v) {
                            return Err(FlowError::SinkReachable(t));
                        }
                        self.dist_t.set(v, 0);
                        side_t.push(v);
                    }
                }
            }
        }
    }

    /// Copies the current flow out of the solver.
    pub fn flow_state(&self, g: &UndirectedGraph) -> FlowState {
        let mut flow = vec![0; g.edge_slots()];
        for &e in &self.res.touched {
            flow[e] = self.res.flow[e];
        }
        FlowState {
            source: self.source,
            sink: self.sink,
            value: self.value,
            flow,
        }
    }
}

fn residual_reach(
    g: &UndirectedGraph,
    s: VertexId,
    seen: &mut Marker,
    residual: impl Fn(EdgeId, VertexId) -> Capacity,
) -> Vec<VertexId> {
    seen.reset(g.vertex_slots());
    seen.set(s, 0);
    let mut out = vec![s];
    let mut head = 0;
    while head < out.len() {
        let u = out[head];
        head += 1;
        for e in g.incident(u) {
            let v = g.other(e, u);
            if !seen.contains(v) && residual(e, u) > 0 {
                seen.set(v, 0);
                out.push(v);
            }
        }
    }
    out
}

/// Saturates every augmenting path made of admissible residual arcs using
/// an iterative DFS with per-vertex current-arc cursors. Returns the pushed
/// amount and the number of augmenting paths.
#[allow(clippy::too_many_arguments)]
pub(crate) fn blocking_flow(
    g: &UndirectedGraph,
    s: VertexId,
    t: VertexId,
    res: &mut Residual,
    cursor: &mut Marker,
    path_v: &mut Vec<VertexId>,
    path_e: &mut Vec<EdgeId>,
    admissible: impl Fn(VertexId, VertexId) -> bool,
) -> (Capacity, u64) {
    cursor.reset(g.vertex_slots());
    path_v.clear();
    path_e.clear();
    path_v.push(s);
    let mut total = 0;
    let mut paths = 0;
    loop {
        let u = *path_v.last().expect("path always holds the source");
        if u == t {
            let delta = path_e
                .iter()
                .zip(path_v.iter())
                .map(|(&e, &from)| res.residual(g, e, from))
                .min()
                .expect("non-empty path");
            for (&e, &from) in path_e.iter().zip(path_v.iter()) {
                res.push(g, e, from, delta);
            }
            total += delta;
            paths += 1;
            let k = path_e
                .iter()
                .zip(path_v.iter())
                .position(|(&e, &from)| res.residual(g, e, from) == 0)
                .expect("bottleneck arc saturates");
            path_v.truncate(k + 1);
            path_e.truncate(k);
            continue;
        }
        let list = g.raw_incident(u);
        let mut i = cursor.get(u).unwrap_or(0);
        let mut advanced = false;
        while i < list.len() {
            let e = list[i];
            if g.capacity(e) > 0 {
                let v = g.other(e, u);
                if res.residual(g, e, u) > 0 && admissible(u, v) {
                    cursor.set(u, i);
                    path_v.push(v);
                    path_e.push(e);
                    advanced = true;
                    break;
                }
            }
            i += 1;
        }
        if !advanced {
            cursor.set(u, list.len());
            if u == s {
                break;
            }
            path_v.pop();
            path_e.pop();
            let p = *path_v.last().expect("source stays on the path");
            let next = cursor.get(p).unwrap_or(0) + 1;
            cursor.set(p, next);
        }
    }
    (total, paths)
}

/// Maximum s-t flow by unidirectional Dinitz.
pub fn max_flow_unidir(g: &UndirectedGraph, s: VertexId, t: VertexId) -> FlowState {
    let mut solver = MaxFlowSolver::new();
    solver.max_flow(g, s, t, FlowEngine::Unidirectional);
    solver.flow_state(g)
}

/// Maximum s-t flow by Dinitz with bidirectional level search.
pub fn max_flow_bidir(g: &UndirectedGraph, s: VertexId, t: VertexId) -> FlowState {
    let mut solver = MaxFlowSolver::new();
    solver.max_flow(g, s, t, FlowEngine::Bidirectional);
    solver.flow_state(g)
}

/// Residual-reachable set from `s`; fails when `f` is not maximum.
pub fn min_cut_from_flow(
    g: &UndirectedGraph,
    f: &FlowState,
    s: VertexId,
) -> Result<Vec<VertexId>, FlowError> {
    let mut seen = Marker::default();
    let cut = residual_reach(g, s, &mut seen, |e, from| f.residual(g, e, from));
    if f.sink != s && seen.contains(f.sink) {
        return Err(FlowError::SinkReachable(f.sink));
    }
    Ok(cut)
}
