//! Stallings folding with rank-preserving folds first, plus homotopy inverses.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graphs::{reduce_path, Dart, Edge, GraphPath, LabeledGraph};
use crate::words::{FreeWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldStep {
    pub kept_edge: usize,
    pub removed_edge: usize,
    /// `(kept, removed)` vertex ids, present iff the fold identifies two vertices.
    pub merged: Option<(usize, usize)>,
    pub rank_preserving: bool,
}

#[derive(Debug, Clone)]
struct Reroute {
    /// From the kept vertex to the removed one, in the previous stage.
    bridge: Vec<Dart>,
    /// `(edge, source was removed vertex, target was removed vertex)`
    touched: Vec<(usize, bool, bool)>,
}

/// Edge and vertex state of the graph after some number of fold steps,
/// expressed in the ids of the initial graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    /// Representative of each initial vertex.
    pub rep: Vec<usize>,
    pub alive: Vec<bool>,
}

impl Stage {
    fn initial(g: &LabeledGraph) -> Self {
        Stage {
            rep: (0..g.num_vertices()).collect(),
            alive: vec![true; g.num_edges()],
        }
    }

    fn find(&self, v: usize) -> usize {
        let mut v = v;
        while self.rep[v] != v {
            v = self.rep[v];
        }
        v
    }

    fn normalize(&mut self) {
        for v in 0..self.rep.len() {
            self.rep[v] = self.find(v);
        }
    }

    fn apply(&mut self, step: &FoldStep) {
        self.alive[step.removed_edge] = false;
        if let Some((kept, removed)) = step.merged {
            self.rep[removed] = kept;
            self.normalize();
        }
    }

    pub fn source(&self, g: &LabeledGraph, e: usize) -> usize {
        self.rep[g.edge(e).source]
    }

    pub fn target(&self, g: &LabeledGraph, e: usize) -> usize {
        self.rep[g.edge(e).target]
    }

    pub fn head(&self, g: &LabeledGraph, d: Dart) -> usize {
        if d.forward { self.target(g, d.edge) } else { self.source(g, d.edge) }
    }

    pub fn tail(&self, g: &LabeledGraph, d: Dart) -> usize {
        if d.forward { self.source(g, d.edge) } else { self.target(g, d.edge) }
    }

    /// Compacted graph. Returns it with the initial-vertex map and the
    /// compact-edge to initial-edge map.
    pub fn compact(&self, g: &LabeledGraph) -> (LabeledGraph, Vec<usize>, Vec<usize>) {
        let mut id = vec![usize::MAX; self.rep.len()];
        let mut count = 0;
        for v in 0..self.rep.len() {
            if self.rep[v] == v {
                id[v] = count;
                count += 1;
            }
        }
        let vmap: Vec<usize> = (0..self.rep.len()).map(|v| id[self.rep[v]]).collect();
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for e in 0..g.num_edges() {
            if self.alive[e] {
                let ed = g.edge(e);
                edges.push(Edge {
                    source: vmap[ed.source],
                    target: vmap[ed.target],
                    label: ed.label,
                });
                origin.push(e);
            }
        }
        let base = g.basepoint().map(|b| vmap[b]);
        let graph = LabeledGraph::new(g.n_labels(), count, edges, base).expect("stage graph is valid");
        (graph, vmap, origin)
    }
}

#[derive(Debug, Clone)]
pub struct FoldingTrace {
    pub initial: LabeledGraph,
    pub steps: Vec<FoldStep>,
    pub final_graph: LabeledGraph,
    /// Number of leading rank-preserving steps.
    pub k: usize,
    reroutes: Vec<Option<Reroute>>,
    final_vertex: Vec<usize>,
    final_origin: Vec<usize>,
    edge_image: Vec<usize>,
}

/// A foldable pair of darts leaving the same vertex with the same letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldCandidate {
    pub first: Dart,
    pub second: Dart,
    pub rank_preserving: bool,
}

fn candidates(g: &LabeledGraph, st: &Stage) -> Vec<FoldCandidate> {
    let mut groups: BTreeMap<(usize, Letter), Vec<Dart>> = BTreeMap::new();
    for e in 0..g.num_edges() {
        if !st.alive[e] {
            continue;
        }
        for d in [Dart::new(e, true), Dart::new(e, false)] {
            groups.entry((st.tail(g, d), g.letter(d))).or_default().push(d);
        }
    }
    let mut out = Vec::new();
    for darts in groups.values() {
        for i in 0..darts.len() {
            for j in i + 1..darts.len() {
                let (a, b) = (darts[i], darts[j]);
                out.push(FoldCandidate {
                    first: a,
                    second: b,
                    rank_preserving: st.head(g, a) != st.head(g, b),
                });
            }
        }
    }
    out.sort_by_key(|c| (g.edge(c.first.edge).label, c.first.edge, c.second.edge, c.first.forward));
    out
}

/// Rank-preserving folds first, each phase in (label, edge id) order.
pub fn fold(g: &LabeledGraph) -> FoldingTrace {
    fold_with(g, true, &mut |_| 0)
}

/// Folds with a caller-chosen order. `choose(count)` picks an index among the
/// currently available candidates (restricted to rank-preserving ones while
/// any exist, when `rank_preserving_first` is set).
pub fn fold_with(
    g: &LabeledGraph,
    rank_preserving_first: bool,
    choose: &mut dyn FnMut(usize) -> usize,
) -> FoldingTrace {
    let mut st = Stage::initial(g);
    let mut steps = Vec::new();
    let mut reroutes = Vec::new();
    let mut merged_into: Vec<usize> = (0..g.num_edges()).collect();
    let base = g.basepoint();
    loop {
        let mut cands = candidates(g, &st);
        if cands.is_empty() {
            break;
        }
        if rank_preserving_first && cands.iter().any(|c| c.rank_preserving) {
            cands.retain(|c| c.rank_preserving);
        }
        let c = cands[choose(cands.len()).min(cands.len() - 1)];
        let (far1, far2) = (st.head(g, c.first), st.head(g, c.second));
        let (step, reroute) = if c.rank_preserving {
            let keep_first = if base.map(|b| st.rep[b]) == Some(far2) {
                false
            } else if base.map(|b| st.rep[b]) == Some(far1) {
                true
            } else {
                far1 < far2
            };
            let (dk, dr) = if keep_first { (c.first, c.second) } else { (c.second, c.first) };
            let (kept_v, removed_v) = (st.head(g, dk), st.head(g, dr));
            let touched = (0..g.num_edges())
                .filter(|&e| st.alive[e] && e != dr.edge)
                .filter_map(|e| {
                    let s = st.source(g, e) == removed_v;
                    let t = st.target(g, e) == removed_v;
                    (s || t).then_some((e, s, t))
                })
                .collect();
            (
                FoldStep {
                    kept_edge: dk.edge,
                    removed_edge: dr.edge,
                    merged: Some((kept_v, removed_v)),
                    rank_preserving: true,
                },
                Some(Reroute {
                    bridge: vec![dk.rev(), dr],
                    touched,
                }),
            )
        } else {
            let (ke, re) = (c.first.edge.min(c.second.edge), c.first.edge.max(c.second.edge));
            (
                FoldStep {
                    kept_edge: ke,
                    removed_edge: re,
                    merged: None,
                    rank_preserving: false,
                },
                None,
            )
        };
        merged_into[step.removed_edge] = step.kept_edge;
        st.apply(&step);
        steps.push(step);
        reroutes.push(reroute);
    }
    let k = steps.iter().position(|s| !s.rank_preserving).unwrap_or(steps.len());
    let (final_graph, final_vertex, final_origin) = st.compact(g);
    let mut origin_index = vec![usize::MAX; g.num_edges()];
    for (i, &e) in final_origin.iter().enumerate() {
        origin_index[e] = i;
    }
    let edge_image = (0..g.num_edges())
        .map(|e| {
            let mut cur = e;
            while merged_into[cur] != cur {
                cur = merged_into[cur];
            }
            origin_index[cur]
        })
        .collect();
    FoldingTrace {
        initial: g.clone(),
        steps,
        final_graph,
        k,
        reroutes,
        final_vertex,
        final_origin,
        edge_image,
    }
}

impl FoldingTrace {
    /// Graph state after `i` steps, in initial ids.
    pub fn stage(&self, i: usize) -> Stage {
        let mut st = Stage::initial(&self.initial);
        for s in &self.steps[..i] {
            st.apply(s);
        }
        st
    }

    /// Compacted graph after `i` steps.
    pub fn stage_graph(&self, i: usize) -> LabeledGraph {
        self.stage(i).compact(&self.initial).0
    }

    /// Final-graph vertex of each initial vertex.
    pub fn final_vertex(&self, v: usize) -> usize {
        self.final_vertex[v]
    }

    /// Initial edge id behind each final edge.
    pub fn final_origin(&self) -> &[usize] {
        &self.final_origin
    }

    /// Final edge that an initial edge folds onto.
    pub fn edge_image(&self, e: usize) -> usize {
        self.edge_image[e]
    }

    /// Pulls a path in the stage-`k` graph (initial edge ids) back to a reduced
    /// path in the initial graph, applying the per-step inverses lazily.
    pub fn pull_back(&self, path: &GraphPath) -> GraphPath {
        self.pull_back_from(self.k, path)
    }

    /// As [`FoldingTrace::pull_back`], from an arbitrary rank-preserving stage.
    pub fn pull_back_from(&self, stage: usize, path: &GraphPath) -> GraphPath {
        assert!(stage <= self.k, "only rank-preserving stages have inverses");
        let mut cur = path.clone();
        for i in (0..stage).rev() {
            let r = self.reroutes[i].as_ref().expect("rank-preserving step");
            let mut steps = Vec::with_capacity(cur.steps.len());
            let bridge_back: Vec<Dart> = r.bridge.iter().rev().map(|d| d.rev()).collect();
            for &d in &cur.steps {
                let (at_s, at_t) = r
                    .touched
                    .iter()
                    .find(|t| t.0 == d.edge)
                    .map_or((false, false), |t| (t.1, t.2));
                let (before, after) = if d.forward { (at_s, at_t) } else { (at_t, at_s) };
                if before {
                    steps.extend_from_slice(&r.bridge);
                }
                steps.push(d);
                if after {
                    steps.extend_from_slice(&bridge_back);
                }
            }
            cur = reduce_path(&GraphPath { start: cur.start, steps }).0;
        }
        cur
    }

    /// For each edge alive at stage `k` (initial ids), its pulled-back path.
    pub fn homotopy_inverse(&self) -> Vec<(usize, GraphPath)> {
        let st = self.stage(self.k);
        (0..self.initial.num_edges())
            .filter(|&e| st.alive[e])
            .map(|e| {
                let p = GraphPath {
                    start: st.source(&self.initial, e),
                    steps: vec![Dart::new(e, true)],
                };
                (e, self.pull_back(&p))
            })
            .collect()
    }
}

/// Folded pointed core of the subgroup generated by `gens` (identity words ignored).
pub fn subgroup_graph(n: usize, gens: &[FreeWord]) -> LabeledGraph {
    let words: Vec<FreeWord> = gens.iter().map(|w| w.reduce()).filter(|w| !w.is_empty()).collect();
    let wedge = LabeledGraph::wedge_of_words(n, &words).expect("nonempty words");
    fold(&wedge)
        .final_graph
        .pointed_core()
        .expect("folded graphs are based")
}

/// Whether the word reads a closed loop at the basepoint.
pub fn contains(h: &LabeledGraph, w: &FreeWord) -> bool {
    let Some(b) = h.basepoint() else { return false };
    let w = w.reduce();
    h.trace(b, w.letters()).is_some_and(|p| p.end(h) == b)
}

pub fn rank(h: &LabeledGraph) -> usize {
    h.rank()
}

/// Convenience: fold and canonicalize.
pub fn canonical_folded(g: &LabeledGraph) -> Result<(usize, Vec<(usize, usize, usize)>)> {
    fold(g).final_graph.canonical_form()
}
