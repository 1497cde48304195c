//! Labeled graphs over the rose, combinatorial paths and reduction processes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, FreeWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// 0-based ambient generator index.
    pub label: usize,
}

/// A directed traversal of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn new(edge: usize, forward: bool) -> Self {
        Dart { edge, forward }
    }

    pub fn rev(self) -> Self {
        Dart::new(self.edge, !self.forward)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n_labels: usize,
    num_vertices: usize,
    edges: Vec<Edge>,
    basepoint: Option<usize>,
    // darts leaving each vertex, sorted by (label, edge, backward-after-forward)
    leaving: Vec<Vec<Dart>>,
}

impl LabeledGraph {
    pub fn new(
        n_labels: usize,
        num_vertices: usize,
        edges: Vec<Edge>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        if n_labels == 0 {
            return Err(Error::InvalidGraph("label alphabet is empty".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.source >= num_vertices || e.target >= num_vertices {
                return Err(Error::InvalidGraph(format!("edge {i} has a missing endpoint")));
            }
            if e.label >= n_labels {
                return Err(Error::InvalidGraph(format!("edge {i} has label out of range")));
            }
        }
        if let Some(b) = basepoint {
            if b >= num_vertices {
                return Err(Error::InvalidGraph("basepoint is not a vertex".into()));
            }
        }
        let mut leaving = vec![Vec::new(); num_vertices];
        for (i, e) in edges.iter().enumerate() {
            leaving[e.source].push(Dart::new(i, true));
            leaving[e.target].push(Dart::new(i, false));
        }
        for darts in &mut leaving {
            darts.sort_by_key(|d| (edges[d.edge].label, d.edge, !d.forward));
        }
        Ok(LabeledGraph {
            n_labels,
            num_vertices,
            edges,
            basepoint,
            leaving,
        })
    }

    /// One vertex with one loop per generator.
    pub fn rose(n: usize) -> Self {
        let edges = (0..n).map(|label| Edge { source: 0, target: 0, label }).collect();
        LabeledGraph::new(n, 1, edges, Some(0)).expect("rose is valid")
    }

    /// Wedge at the basepoint of subdivided circles spelling each word.
    pub fn wedge_of_words(n: usize, words: &[FreeWord]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut num_vertices = 1;
        for w in words {
            if w.is_empty() {
                return Err(Error::EmptyWord);
            }
            let mut prev = 0;
            for (i, l) in w.letters().iter().enumerate() {
                let next = if i + 1 == w.len() {
                    0
                } else {
                    num_vertices += 1;
                    num_vertices - 1
                };
                let (source, target) = if l.inverse { (next, prev) } else { (prev, next) };
                edges.push(Edge { source, target, label: l.symbol });
                prev = next;
            }
        }
        LabeledGraph::new(n, num_vertices, edges, Some(0))
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::ambient(self.n_labels)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn with_basepoint(&self, basepoint: Option<usize>) -> Result<Self> {
        LabeledGraph::new(self.n_labels, self.num_vertices, self.edges.clone(), basepoint)
    }

    fn base(&self) -> Result<usize> {
        self.basepoint.ok_or(Error::NoBasepoint)
    }

    pub fn leaving(&self, v: usize) -> &[Dart] {
        &self.leaving[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.leaving[v].len()
    }

    pub fn tail(&self, d: Dart) -> usize {
        let e = self.edges[d.edge];
        if d.forward { e.source } else { e.target }
    }

    pub fn head(&self, d: Dart) -> usize {
        let e = self.edges[d.edge];
        if d.forward { e.target } else { e.source }
    }

    pub fn letter(&self, d: Dart) -> Letter {
        Letter::new(self.edges[d.edge].label, !d.forward)
    }

    /// First dart leaving `v` reading `l` (the only one when folded).
    pub fn step(&self, v: usize, l: Letter) -> Option<Dart> {
        self.leaving[v].iter().copied().find(|&d| self.letter(d) == l)
    }

    /// Follows `letters` from `v`; `None` if the walk falls off the graph.
    pub fn trace(&self, v: usize, letters: &[Letter]) -> Option<GraphPath> {
        let mut steps = Vec::with_capacity(letters.len());
        let mut cur = v;
        for &l in letters {
            let d = self.step(cur, l)?;
            cur = self.head(d);
            steps.push(d);
        }
        Some(GraphPath { start: v, steps })
    }

    pub fn is_folded(&self) -> bool {
        self.leaving.iter().all(|darts| {
            let mut seen = BTreeSet::new();
            darts.iter().all(|&d| seen.insert(self.letter(d)))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        self.reachable_from(self.basepoint.unwrap_or(0)).iter().all(|&r| r)
    }

    fn reachable_from(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &d in &self.leaving[u] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// First Betti number of a connected graph.
    pub fn rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.num_vertices)
    }

    /// Keeps the listed vertices and edges, renumbering both in increasing order.
    /// Returns the new graph, the old-to-new vertex map and the new-to-old edge map.
    pub fn subgraph(
        &self,
        keep_vertex: &[bool],
        keep_edge: &[bool],
    ) -> (LabeledGraph, Vec<Option<usize>>, Vec<usize>) {
        let mut vmap = vec![None; self.num_vertices];
        let mut count = 0;
        for v in 0..self.num_vertices {
            if keep_vertex[v] {
                vmap[v] = Some(count);
                count += 1;
            }
        }
        let mut edges = Vec::new();
        let mut emap = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep_edge[i] {
                let (Some(s), Some(t)) = (vmap[e.source], vmap[e.target]) else {
                    panic!("kept edge with dropped endpoint");
                };
                edges.push(Edge { source: s, target: t, label: e.label });
                emap.push(i);
            }
        }
        let base = self.basepoint.and_then(|b| vmap[b]);
        let g = LabeledGraph::new(self.n_labels, count, edges, base).expect("subgraph is valid");
        (g, vmap, emap)
    }

    fn prune(&self, protect: Option<usize>) -> (Vec<bool>, Vec<bool>) {
        let mut alive_v = vec![true; self.num_vertices];
        let mut alive_e = vec![true; self.edges.len()];
        let mut val: Vec<usize> = (0..self.num_vertices).map(|v| self.valence(v)).collect();
        let mut stack: Vec<usize> = (0..self.num_vertices).filter(|&v| val[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive_v[v] || Some(v) == protect || val[v] > 1 {
                continue;
            }
            alive_v[v] = false;
            for &d in &self.leaving[v] {
                if alive_e[d.edge] {
                    alive_e[d.edge] = false;
                    let w = self.head(d);
                    val[w] -= 1;
                    val[v] -= 1;
                    if alive_v[w] && val[w] <= 1 {
                        stack.push(w);
                    }
                }
            }
        }
        (alive_v, alive_e)
    }

    /// Core with maps (see [`LabeledGraph::subgraph`]). Drops the basepoint if it is pruned.
    pub fn core_with_maps(&self) -> Result<(LabeledGraph, Vec<Option<usize>>, Vec<usize>)> {
        let (v, e) = self.prune(None);
        if !e.iter().any(|&x| x) {
            return Err(Error::TreeGraph);
        }
        Ok(self.subgraph(&v, &e))
    }

    pub fn core(&self) -> Result<LabeledGraph> {
        Ok(self.core_with_maps()?.0)
    }

    pub fn pointed_core_with_maps(&self) -> Result<(LabeledGraph, Vec<Option<usize>>, Vec<usize>)> {
        let b = self.base()?;
        let (v, e) = self.prune(Some(b));
        Ok(self.subgraph(&v, &e))
    }

    pub fn pointed_core(&self) -> Result<LabeledGraph> {
        Ok(self.pointed_core_with_maps()?.0)
    }

    /// Breadth-first tree from the basepoint, exploring darts in (label, edge) order.
    pub fn spanning_tree(&self) -> Result<BTreeSet<usize>> {
        let parents = self.bfs_parents()?;
        Ok(parents.iter().flatten().map(|d| d.edge).collect())
    }

    fn bfs_parents(&self) -> Result<Vec<Option<Dart>>> {
        let b = self.base()?;
        let mut parent = vec![None; self.num_vertices];
        let mut seen = vec![false; self.num_vertices];
        seen[b] = true;
        let mut queue = VecDeque::from([b]);
        while let Some(u) = queue.pop_front() {
            for &d in &self.leaving[u] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Disconnected);
        }
        Ok(parent)
    }

    /// Tree parent darts (pointing away from the basepoint) for a given spanning tree.
    fn tree_parents(&self, tree: &BTreeSet<usize>) -> Result<Vec<Option<Dart>>> {
        let b = self.base()?;
        if tree.iter().any(|&e| e >= self.edges.len()) {
            return Err(Error::InvalidTree("unknown edge".into()));
        }
        if tree.len() + 1 != self.num_vertices {
            return Err(Error::InvalidTree("wrong number of edges".into()));
        }
        let mut parent = vec![None; self.num_vertices];
        let mut seen = vec![false; self.num_vertices];
        seen[b] = true;
        let mut queue = VecDeque::from([b]);
        while let Some(u) = queue.pop_front() {
            for &d in &self.leaving[u] {
                if !tree.contains(&d.edge) || parent[u] == Some(d.rev()) {
                    continue;
                }
                let w = self.head(d);
                if seen[w] {
                    return Err(Error::InvalidTree("contains a cycle".into()));
                }
                seen[w] = true;
                parent[w] = Some(d);
                queue.push_back(w);
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidTree("does not span".into()));
        }
        Ok(parent)
    }

    /// Non-tree edges in (label, id) order.
    pub fn non_tree_edges(&self, tree: &BTreeSet<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.edges.len()).filter(|e| !tree.contains(e)).collect();
        out.sort_by_key(|&e| (self.edges[e].label, e));
        out
    }

    fn tree_path_to(&self, parent: &[Option<Dart>], v: usize) -> Vec<Dart> {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some(d) = parent[cur] {
            steps.push(d);
            cur = self.tail(d);
        }
        steps.reverse();
        steps
    }

    /// One loop per non-tree edge: tree path, the edge, tree path back.
    pub fn fundamental_basis(&self, tree: &BTreeSet<usize>) -> Result<Vec<GraphPath>> {
        let parent = self.tree_parents(tree)?;
        let b = self.base()?;
        Ok(self
            .non_tree_edges(tree)
            .into_iter()
            .map(|e| {
                let edge = self.edges[e];
                let mut steps = self.tree_path_to(&parent, edge.source);
                steps.push(Dart::new(e, true));
                let back = self.tree_path_to(&parent, edge.target);
                steps.extend(back.iter().rev().map(|d| d.rev()));
                GraphPath { start: b, steps }
            })
            .collect())
    }

    /// Canonical description of a folded based graph: vertices renumbered in
    /// BFS order from the basepoint, edges as sorted (source, label, target).
    pub fn canonical_form(&self) -> Result<(usize, Vec<(usize, usize, usize)>)> {
        let b = self.base()?;
        let mut order = vec![usize::MAX; self.num_vertices];
        order[b] = 0;
        let mut next = 1;
        let mut queue = VecDeque::from([b]);
        while let Some(u) = queue.pop_front() {
            let mut darts = self.leaving[u].clone();
            darts.sort_by_key(|&d| self.letter(d));
            for d in darts {
                let w = self.head(d);
                if order[w] == usize::MAX {
                    order[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        if next != self.num_vertices {
            return Err(Error::Disconnected);
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| (order[e.source], e.label, order[e.target]))
            .collect();
        edges.sort();
        Ok((self.num_vertices, edges))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  node [shape=circle];");
        for v in 0..self.num_vertices {
            if Some(v) == self.basepoint {
                let _ = writeln!(out, "  v{v} [shape=doublecircle, label=\"*\"];");
            } else {
                let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.source,
                e.target,
                label_name(self.n_labels, e.label)
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn label_name(n: usize, label: usize) -> String {
    if n <= 26 {
        ((b'a' + label as u8) as char).to_string()
    } else {
        format!("a{}", label + 1)
    }
}

/// A combinatorial path: a start vertex and a sequence of edge traversals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphPath {
    pub start: usize,
    pub steps: Vec<Dart>,
}

impl GraphPath {
    pub fn empty(start: usize) -> Self {
        GraphPath { start, steps: Vec::new() }
    }

    /// Validates endpoint compatibility.
    pub fn new(g: &LabeledGraph, start: usize, steps: Vec<Dart>) -> Result<Self> {
        if start >= g.num_vertices() {
            return Err(Error::InvalidPath("start vertex missing".into()));
        }
        let mut cur = start;
        for (i, &d) in steps.iter().enumerate() {
            if d.edge >= g.num_edges() || g.tail(d) != cur {
                return Err(Error::InvalidPath(format!("step {i} is not attached")));
            }
            cur = g.head(d);
        }
        Ok(GraphPath { start, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, g: &LabeledGraph) -> usize {
        self.steps.last().map_or(self.start, |&d| g.head(d))
    }

    pub fn is_loop(&self, g: &LabeledGraph) -> bool {
        self.end(g) == self.start
    }

    pub fn is_reduced(&self) -> bool {
        self.steps.windows(2).all(|p| p[1] != p[0].rev())
    }

    pub fn is_cyclically_reduced(&self, g: &LabeledGraph) -> bool {
        self.is_reduced()
            && self.is_loop(g)
            && match (self.steps.first(), self.steps.last()) {
                (Some(&a), Some(&b)) => a != b.rev(),
                _ => true,
            }
    }

    pub fn inverse(&self, g: &LabeledGraph) -> GraphPath {
        GraphPath {
            start: self.end(g),
            steps: self.steps.iter().rev().map(|d| d.rev()).collect(),
        }
    }

    pub fn concat(&self, other: &GraphPath) -> GraphPath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        GraphPath { start: self.start, steps }
    }

    pub fn letters(&self, g: &LabeledGraph) -> Vec<Letter> {
        self.steps.iter().map(|&d| g.letter(d)).collect()
    }

    /// The word read along the path, unreduced.
    pub fn label_word(&self, g: &LabeledGraph) -> FreeWord {
        FreeWord::raw(g.alphabet(), self.letters(g))
    }

    /// Vertex visited before step `i` (`i == len` gives the end).
    pub fn vertex_at(&self, g: &LabeledGraph, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            g.head(self.steps[i - 1])
        }
    }
}

/// Ordered cancellation couples `(s, t)` of step indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReductionProcess {
    pub couples: Vec<(usize, usize)>,
}

impl ReductionProcess {
    /// Checks ordering, distinctness, nesting, and that each couple becomes
    /// adjacent once its predecessors are collapsed.
    pub fn is_valid(&self, len: usize) -> bool {
        let mut used = vec![false; len];
        for &(s, t) in &self.couples {
            if s >= t || t >= len || used[s] || used[t] {
                return false;
            }
            // everything strictly between must already be collapsed
            if !(s + 1..t).all(|i| used[i]) {
                return false;
            }
            used[s] = true;
            used[t] = true;
        }
        true
    }

    pub fn is_nested(&self) -> bool {
        let c = &self.couples;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let (a, b) = (c[i], c[j]);
                let disjoint = a.1 < b.0 || b.1 < a.0;
                let a_in_b = b.0 < a.0 && a.1 < b.1;
                let b_in_a = a.0 < b.0 && b.1 < a.1;
                if !(disjoint || a_in_b || b_in_a) {
                    return false;
                }
            }
        }
        true
    }

    /// Every step index is covered.
    pub fn is_maximal(&self, len: usize) -> bool {
        2 * self.couples.len() == len && self.is_valid(len)
    }
}

/// Free reduction of a path, with the stack-discovered couples.
pub fn reduce_path(sigma: &GraphPath) -> (GraphPath, ReductionProcess) {
    let mut stack: Vec<usize> = Vec::new();
    let mut couples = Vec::new();
    for (i, &d) in sigma.steps.iter().enumerate() {
        match stack.last() {
            Some(&j) if sigma.steps[j] == d.rev() => {
                stack.pop();
                couples.push((j, i));
            }
            _ => stack.push(i),
        }
    }
    let steps = stack.iter().map(|&i| sigma.steps[i]).collect();
    (GraphPath { start: sigma.start, steps }, ReductionProcess { couples })
}

/// Stack-built reduction process for the label word of a path.
/// `None` if the label word does not reduce to the identity.
pub fn label_reduction(g: &LabeledGraph, sigma: &GraphPath) -> Option<ReductionProcess> {
    let letters = sigma.letters(g);
    let mut stack: Vec<usize> = Vec::new();
    let mut couples = Vec::new();
    for (i, &l) in letters.iter().enumerate() {
        match stack.last() {
            Some(&j) if letters[j] == l.inv() => {
                stack.pop();
                couples.push((j, i));
            }
            _ => stack.push(i),
        }
    }
    stack.is_empty().then_some(ReductionProcess { couples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(Alphabet::ambient(2), s).unwrap()
    }

    #[test]
    fn wedges() {
        let g = LabeledGraph::wedge_of_words(2, &[w("a")]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 1));
        let g = LabeledGraph::wedge_of_words(2, &[w("ba"), w("abbA")]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (5, 6));
        let g = LabeledGraph::wedge_of_words(2, &[w("ababa")]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (5, 5));
        let b = g.fundamental_basis(&g.spanning_tree().unwrap()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].label_word(&g).to_string(), "ababa");
        assert!(matches!(
            LabeledGraph::wedge_of_words(2, &[w("")]),
            Err(Error::EmptyWord)
        ));
    }

    #[test]
    fn pentagon_tree_skips_closing_edge() {
        let g = LabeledGraph::wedge_of_words(2, &[w("ababa")]).unwrap();
        let t = g.spanning_tree().unwrap();
        assert_eq!(t.len(), 4);
        assert!(!t.contains(&2));
    }

    #[test]
    fn rose_tree_and_basis() {
        let g = LabeledGraph::rose(2);
        let t = g.spanning_tree().unwrap();
        assert!(t.is_empty());
        let b: Vec<String> = g
            .fundamental_basis(&t)
            .unwrap()
            .iter()
            .map(|p| p.label_word(&g).to_string())
            .collect();
        assert_eq!(b, vec!["a", "b"]);
    }

    #[test]
    fn cores() {
        // loop at * plus a dangling edge
        let g = LabeledGraph::new(
            2,
            2,
            vec![Edge { source: 0, target: 0, label: 0 }, Edge { source: 0, target: 1, label: 1 }],
            Some(0),
        )
        .unwrap();
        assert_eq!(g.core().unwrap().num_edges(), 1);
        assert_eq!(g.pointed_core().unwrap().num_edges(), 1);
        // tether: * -b-> v with a-loop at v
        let g = LabeledGraph::new(
            2,
            2,
            vec![Edge { source: 0, target: 1, label: 1 }, Edge { source: 1, target: 1, label: 0 }],
            Some(0),
        )
        .unwrap();
        assert_eq!(g.core().unwrap().num_edges(), 1);
        assert_eq!(g.core().unwrap().basepoint(), None);
        assert_eq!(g.pointed_core().unwrap().num_edges(), 2);
        let tree = LabeledGraph::new(2, 2, vec![Edge { source: 0, target: 1, label: 0 }], Some(0))
            .unwrap();
        assert!(matches!(tree.core(), Err(Error::TreeGraph)));
    }

    #[test]
    fn path_reduction() {
        let g = LabeledGraph::rose(2);
        let p = GraphPath::new(&g, 0, vec![Dart::new(0, true), Dart::new(0, false)]).unwrap();
        let (r, proc) = reduce_path(&p);
        assert!(r.is_empty());
        assert_eq!(proc.couples, vec![(0, 1)]);
        let raw = FreeWord::parse_raw(Alphabet::ambient(2), "abBA").unwrap();
        let p = g.trace(0, raw.letters()).unwrap();
        let (r, proc) = reduce_path(&p);
        assert!(r.is_empty());
        assert_eq!(proc.couples, vec![(1, 2), (0, 3)]);
        assert!(proc.is_maximal(4) && proc.is_nested());
        let p = g.trace(0, w("ab").letters()).unwrap();
        let (r, proc) = reduce_path(&p);
        assert_eq!(r, p);
        assert!(proc.couples.is_empty());
    }

    #[test]
    fn labels() {
        let g = LabeledGraph::wedge_of_words(2, &[w("ababa")]).unwrap();
        let p = g.trace(0, w("ababa").letters()).unwrap();
        assert_eq!(p.label_word(&g).to_string(), "ababa");
        assert_eq!(p.inverse(&g).label_word(&g).to_string(), "ABABA");
        assert!(GraphPath::empty(0).label_word(&g).is_empty());
    }

    #[test]
    fn dot_is_deterministic() {
        let g = LabeledGraph::wedge_of_words(2, &[w("ab")]).unwrap();
        let dot = g.to_dot("g");
        assert!(dot.contains("doublecircle"));
        assert_eq!(dot, g.to_dot("g"));
    }
}
