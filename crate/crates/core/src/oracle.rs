//! Brute-force enumeration of kernel loops, used to cross-check the
//! automaton-based decisions at small path lengths.

use std::collections::{BTreeMap, VecDeque};

use crate::graphs::{Dart, GraphPath, LabeledGraph};
use crate::ideal::EquationGraph;
use crate::words::{Equation, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLoop {
    pub path: GraphPath,
    pub equation: Equation,
    pub degree: usize,
}

pub(crate) struct LoopSearch<'a> {
    eg: &'a EquationGraph,
    max_len: usize,
    /// Upper bound on petal crossings, if any.
    max_crossings: Option<usize>,
    /// Only report cyclically reduced paths.
    cyclic_only: bool,
    max_nodes: u64,
    pub(crate) nodes: u64,
    dist: Vec<usize>,
    marker: Vec<bool>,
    steps: Vec<Dart>,
    stack: Vec<Letter>,
    crossings: usize,
}

impl<'a> LoopSearch<'a> {
    pub(crate) fn new(eg: &'a EquationGraph, max_len: usize) -> Self {
        let mut marker = vec![false; eg.graph.num_edges()];
        for m in &eg.markers {
            marker[m.edge] = true;
        }
        LoopSearch {
            eg,
            max_len,
            max_crossings: None,
            cyclic_only: false,
            max_nodes: u64::MAX,
            nodes: 0,
            dist: distances_to_base(&eg.graph),
            marker,
            steps: Vec::new(),
            stack: Vec::new(),
            crossings: 0,
        }
    }

    pub(crate) fn max_crossings(mut self, c: usize) -> Self {
        self.max_crossings = Some(c);
        self
    }

    pub(crate) fn cyclic_only(mut self) -> Self {
        self.cyclic_only = true;
        self
    }

    pub(crate) fn max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub(crate) fn truncated(&self) -> bool {
        self.nodes > self.max_nodes
    }

    /// Calls `visit` on every nonempty reduced kernel loop at the basepoint;
    /// `visit` returns false to stop the search, which then counts as truncated.
    pub(crate) fn run(&mut self, visit: &mut dyn FnMut(&[Dart], usize) -> bool) {
        let base = self.eg.basepoint();
        self.extend(base, visit);
    }

    fn extend(&mut self, v: usize, visit: &mut dyn FnMut(&[Dart], usize) -> bool) {
        self.nodes = self.nodes.saturating_add(1);
        if self.nodes > self.max_nodes {
            return;
        }
        let g = &self.eg.graph;
        let base = self.eg.basepoint();
        let len = self.steps.len();
        if len > 0 && v == base && self.stack.is_empty() {
            let cyclic = self.steps[len - 1] != self.steps[0].rev();
            if (cyclic || !self.cyclic_only) && !visit(&self.steps, self.crossings) {
                self.nodes = u64::MAX;
                return;
            }
        }
        let left = self.max_len - len;
        for &dart in g.leaving(v) {
            if self.steps.last() == Some(&dart.rev()) {
                continue;
            }
            let w = g.head(dart);
            if self.dist[w] + 1 > left {
                continue;
            }
            let l = g.letter(dart);
            let cancels = self.stack.last() == Some(&l.inv());
            let depth = if cancels { self.stack.len() - 1 } else { self.stack.len() + 1 };
            if depth + 1 > left {
                continue;
            }
            let crosses = self.marker[dart.edge] as usize;
            if self.max_crossings.is_some_and(|c| self.crossings + crosses > c) {
                continue;
            }
            if cancels {
                self.stack.pop();
            } else {
                self.stack.push(l);
            }
            self.crossings += crosses;
            self.steps.push(dart);
            self.extend(w, visit);
            self.steps.pop();
            self.crossings -= crosses;
            if cancels {
                self.stack.push(l.inv());
            } else {
                self.stack.pop();
            }
        }
    }
}

pub(crate) fn distances_to_base(g: &LabeledGraph) -> Vec<usize> {
    let base = g.basepoint().expect("based graph");
    let mut dist = vec![usize::MAX; g.num_vertices()];
    dist[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &dart in g.leaving(u) {
            let w = g.head(dart);
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All reduced kernel loops at the basepoint of length at most `max_len`,
/// one per equation class up to rotation and inversion (the shortest path
/// found, ties broken by step order).
pub fn enumerate_kernel_loops(eg: &EquationGraph, max_len: usize) -> Vec<KernelLoop> {
    enumerate_kernel_loops_capped(eg, max_len, u64::MAX).0
}

/// As [`enumerate_kernel_loops`], giving up after `budget` search nodes or
/// `budget / 64` loops. The flag reports whether the search was cut short;
/// the loops found are valid either way.
pub fn enumerate_kernel_loops_capped(eg: &EquationGraph, max_len: usize, budget: u64) -> (Vec<KernelLoop>, bool) {
    let base = eg.basepoint();
    let mut best: BTreeMap<Vec<Letter>, KernelLoop> = BTreeMap::new();
    let mut search = LoopSearch::new(eg, max_len).max_nodes(budget);
    let mut visits = 0u64;
    search.run(&mut |steps, _| {
        visits += 1;
        if visits > budget / 64 {
            return false;
        }
        let path = GraphPath { start: base, steps: steps.to_vec() };
        let equation = eg.equation_of(&path);
        let key = equation.cyclic_key();
        let better = match best.get(&key) {
            None => true,
            Some(old) => (path.len(), &path.steps) < (old.path.len(), &old.path.steps),
        };
        if better {
            let degree = equation.degree();
            best.insert(key, KernelLoop { path, equation, degree });
        }
        true
    });
    let truncated = search.truncated();
    let mut out: Vec<KernelLoop> = best.into_values().collect();
    out.sort_by(|a, b| (a.path.len(), &a.equation).cmp(&(b.path.len(), &b.equation)));
    (out, truncated)
}

pub fn naive_min_degree(eg: &EquationGraph, max_len: usize) -> Option<usize> {
    enumerate_kernel_loops(eg, max_len).iter().map(|k| k.degree).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Problem;

    fn eg(n: usize, h: &[&str], g: &[&str]) -> EquationGraph {
        EquationGraph::new(&Problem::parse(n, h, g).unwrap()).unwrap()
    }

    #[test]
    fn degree_one_relation() {
        let e = eg(1, &["a"], &["a"]);
        let loops = enumerate_kernel_loops(&e, 2);
        let want = Equation::parse(1, 1, "h1 ~x").unwrap();
        assert!(loops.iter().any(|k| k.equation.equivalent(&want)));
        assert_eq!(naive_min_degree(&e, 2), Some(1));
    }

    #[test]
    fn below_girth_is_empty() {
        let e = eg(2, &["ba", "abbA"], &["a"]);
        assert!(enumerate_kernel_loops(&e, 3).is_empty());
        assert_eq!(naive_min_degree(&e, 3), None);
    }

    #[test]
    fn odd_generator_found() {
        let e = eg(2, &["b", "ababa"], &["a"]);
        let want = Equation::parse(2, 1, "~h2 x h1 x h1 x").unwrap();
        let loops = enumerate_kernel_loops(&e, 14);
        assert!(loops.iter().any(|k| k.equation.equivalent(&want)));
        assert_eq!(naive_min_degree(&e, 14), Some(2));
        for k in &loops {
            let p = Problem::parse(2, &["b", "ababa"], &["a"]).unwrap();
            let v = crate::words::evaluate(&k.equation, &p.h_generators, &p.g_values).unwrap();
            assert!(v.is_empty());
        }
    }
}
