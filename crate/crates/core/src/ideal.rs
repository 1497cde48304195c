//! The graph G = Γ(H) ∨ petals, the correspondence between its loops and
//! equations, and normal generators of the kernel of the evaluation map.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::{fold, subgroup_graph, FoldingTrace};
use crate::graphs::{reduce_path, Dart, Edge, GraphPath, LabeledGraph};
use crate::words::{evaluate, free_reduce, Alphabet, Equation, FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub n: usize,
    pub h_generators: Vec<FreeWord>,
    pub g_values: Vec<FreeWord>,
}

impl Problem {
    pub fn new(n: usize, h_generators: Vec<FreeWord>, g_values: Vec<FreeWord>) -> Result<Self> {
        let alphabet = Alphabet::ambient(n);
        if g_values.is_empty() {
            return Err(Error::Arity {
                what: "target values",
                expected: 1,
                got: 0,
            });
        }
        for w in h_generators.iter().chain(&g_values) {
            if w.alphabet() != alphabet {
                return Err(Error::Parse {
                    token: w.to_string(),
                    reason: format!("word is not over an ambient alphabet of rank {n}"),
                });
            }
        }
        Ok(Problem {
            n,
            h_generators: h_generators.iter().map(|w| w.reduce()).collect(),
            g_values: g_values.iter().map(|w| w.reduce()).collect(),
        })
    }

    /// Parses comma-free lists of ambient words.
    pub fn parse(n: usize, h: &[&str], g: &[&str]) -> Result<Self> {
        let a = Alphabet::ambient(n);
        let h = h.iter().map(|s| FreeWord::parse(a, s)).collect::<Result<Vec<_>>>()?;
        let g = g.iter().map(|s| FreeWord::parse(a, s)).collect::<Result<Vec<_>>>()?;
        Problem::new(n, h, g)
    }

    pub fn num_vars(&self) -> usize {
        self.g_values.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::ambient(self.n)
    }
}

#[derive(Debug, Clone)]
enum Translator {
    /// The given generators form a basis; loops are pulled back into their wedge.
    Given {
        trace: FoldingTrace,
        markers: Vec<Dart>,
    },
    /// Basis read off a spanning tree.
    Fundamental { index: Vec<Option<usize>> },
}

/// A free basis of H together with its folded graph and a way to write loops
/// of that graph in the basis.
#[derive(Debug, Clone)]
pub struct HBasis {
    graph: LabeledGraph,
    words: Vec<FreeWord>,
    translator: Translator,
}

impl HBasis {
    pub fn new(n: usize, gens: &[FreeWord]) -> Self {
        let gens: Vec<FreeWord> = gens.iter().map(|w| w.reduce()).collect();
        if !gens.is_empty() && gens.iter().all(|w| !w.is_empty()) {
            let wedge = LabeledGraph::wedge_of_words(n, &gens).expect("nonempty words");
            let trace = fold(&wedge);
            let g = &trace.final_graph;
            let hairless = g.pointed_core().map(|c| c.num_edges() == g.num_edges()).unwrap_or(false);
            if trace.k == trace.steps.len() && g.rank() == gens.len() && hairless {
                let mut markers = Vec::new();
                let mut first = 0;
                for w in &gens {
                    markers.push(Dart::new(first, !w.letters()[0].inverse));
                    first += w.len();
                }
                return HBasis {
                    graph: trace.final_graph.clone(),
                    words: gens,
                    translator: Translator::Given { trace, markers },
                };
            }
        }
        let graph = subgroup_graph(n, &gens);
        let tree = graph.spanning_tree().expect("folded graphs are connected");
        let mut index = vec![None; graph.num_edges()];
        for (i, e) in graph.non_tree_edges(&tree).into_iter().enumerate() {
            index[e] = Some(i);
        }
        let words = graph
            .fundamental_basis(&tree)
            .expect("tree is valid")
            .iter()
            .map(|p| p.label_word(&graph).reduce())
            .collect();
        HBasis {
            graph,
            words,
            translator: Translator::Fundamental { index },
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn words(&self) -> &[FreeWord] {
        &self.words
    }

    pub fn rank(&self) -> usize {
        self.words.len()
    }

    /// Whether the basis is the caller's generating list.
    pub fn is_given(&self) -> bool {
        matches!(self.translator, Translator::Given { .. })
    }

    /// Writes a loop at the basepoint of the subgroup graph in the basis
    /// (letters index basis elements).
    pub fn translate_loop(&self, path: &GraphPath) -> Vec<Letter> {
        match &self.translator {
            Translator::Fundamental { index } => free_reduce(
                &path
                    .steps
                    .iter()
                    .filter_map(|d| index[d.edge].map(|i| Letter::new(i, !d.forward)))
                    .collect::<Vec<_>>(),
            ),
            Translator::Given { trace, markers } => {
                let origin = trace.final_origin();
                let lifted = GraphPath {
                    start: trace.initial.basepoint().expect("wedge is based"),
                    steps: path.steps.iter().map(|d| Dart::new(origin[d.edge], d.forward)).collect(),
                };
                let back = trace.pull_back(&lifted);
                let mut out = Vec::new();
                for d in &back.steps {
                    for (i, m) in markers.iter().enumerate() {
                        if d.edge == m.edge {
                            out.push(Letter::new(i, d.forward != m.forward));
                        }
                    }
                }
                free_reduce(&out)
            }
        }
    }

    /// Basis expression of an ambient word, if it lies in H.
    pub fn translate_word(&self, w: &FreeWord) -> Option<Vec<Letter>> {
        let b = self.graph.basepoint()?;
        let w = w.reduce();
        let p = self.graph.trace(b, w.letters())?;
        (p.end(&self.graph) == b).then(|| self.translate_loop(&p))
    }
}

/// Which part of G an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    H,
    Petal(usize),
}

/// G with the data realizing the correspondence between loops and equations.
#[derive(Debug, Clone)]
pub struct EquationGraph {
    pub graph: LabeledGraph,
    pub hbasis: HBasis,
    pub parts: Vec<Part>,
    /// Per variable: the first cycle edge, oriented as read along g.
    pub markers: Vec<Dart>,
    /// Per variable: the loop spelling g at the basepoint.
    pub petal_loops: Vec<GraphPath>,
}

impl EquationGraph {
    pub fn new(p: &Problem) -> Result<Self> {
        Self::with_basis(p, HBasis::new(p.n, &p.h_generators))
    }

    pub fn with_basis(p: &Problem, hbasis: HBasis) -> Result<Self> {
        if let Some(j) = p.g_values.iter().position(|g| g.is_empty()) {
            return Err(Error::TrivialTarget(j + 1));
        }
        let hg = hbasis.graph();
        let base = hg.basepoint().expect("subgroup graphs are based");
        let mut edges: Vec<Edge> = hg.edges().to_vec();
        let mut parts = vec![Part::H; edges.len()];
        let mut num_vertices = hg.num_vertices();
        let mut markers = Vec::new();
        let mut petal_loops = Vec::new();
        for (j, g) in p.g_values.iter().enumerate() {
            let (core, conj) = g.cyclic_reduce();
            let mut steps = Vec::new();
            let mut cur = base;
            let mut add = |from: usize, to: usize, l: Letter, edges: &mut Vec<Edge>| {
                let (source, target) = if l.inverse { (to, from) } else { (from, to) };
                edges.push(Edge { source, target, label: l.symbol });
                parts.push(Part::Petal(j));
                Dart::new(edges.len() - 1, !l.inverse)
            };
            for &l in conj.letters() {
                num_vertices += 1;
                let v = num_vertices - 1;
                steps.push(add(cur, v, l, &mut edges));
                cur = v;
            }
            let anchor = cur;
            let tether = steps.clone();
            for (i, &l) in core.letters().iter().enumerate() {
                let next = if i + 1 == core.len() {
                    anchor
                } else {
                    num_vertices += 1;
                    num_vertices - 1
                };
                let d = add(cur, next, l, &mut edges);
                if i == 0 {
                    markers.push(d);
                }
                steps.push(d);
                cur = next;
            }
            steps.extend(tether.iter().rev().map(|d| d.rev()));
            petal_loops.push(GraphPath { start: base, steps });
        }
        let graph = LabeledGraph::new(p.n, num_vertices, edges, Some(base))?;
        Ok(EquationGraph {
            graph,
            hbasis,
            parts,
            markers,
            petal_loops,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.markers.len()
    }

    pub fn equation_alphabet(&self) -> Alphabet {
        Alphabet::equation(self.hbasis.rank(), self.num_vars())
    }

    pub fn basepoint(&self) -> usize {
        self.graph.basepoint().expect("G is based")
    }

    /// Loop of G realizing an equation (unreduced concatenation).
    pub fn path_of(&self, e: &Equation) -> GraphPath {
        let r = self.hbasis.rank();
        let base = self.basepoint();
        let hg = self.hbasis.graph();
        let mut steps = Vec::new();
        for l in e.word().letters() {
            let piece = if l.symbol < r {
                let w = &self.hbasis.words()[l.symbol];
                hg.trace(base, w.letters()).expect("basis words are loops").steps
            } else {
                self.petal_loops[l.symbol - r].steps.clone()
            };
            if l.inverse {
                steps.extend(piece.iter().rev().map(|d| d.rev()));
            } else {
                steps.extend(piece);
            }
        }
        GraphPath { start: base, steps }
    }

    /// Equation read along a loop at the basepoint.
    pub fn equation_of(&self, path: &GraphPath) -> Equation {
        let (path, _) = reduce_path(path);
        let r = self.hbasis.rank();
        let base = self.basepoint();
        let mut letters = Vec::new();
        let mut h_run: Vec<Dart> = Vec::new();
        let flush = |run: &mut Vec<Dart>, letters: &mut Vec<Letter>| {
            if !run.is_empty() {
                let p = GraphPath { start: base, steps: std::mem::take(run) };
                letters.extend(self.hbasis.translate_loop(&p));
            }
        };
        for &d in &path.steps {
            match self.parts[d.edge] {
                Part::H => h_run.push(d),
                Part::Petal(j) => {
                    flush(&mut h_run, &mut letters);
                    let m = self.markers[j];
                    if d == m {
                        letters.push(Letter::pos(r + j));
                    } else if d == m.rev() {
                        letters.push(Letter::neg(r + j));
                    }
                }
            }
        }
        flush(&mut h_run, &mut letters);
        Equation::new(FreeWord::new(self.equation_alphabet(), letters))
    }

    /// Edges of the core of the subgroup graph, as a membership table over G's edges.
    pub fn h_core_edges(&self) -> Vec<bool> {
        let mut out = vec![false; self.graph.num_edges()];
        if let Ok((_, _, emap)) = self.hbasis.graph().core_with_maps() {
            for e in emap {
                out[e] = true;
            }
        }
        out
    }
}

/// G as a plain labeled graph.
pub fn build_g(p: &Problem) -> Result<LabeledGraph> {
    Ok(EquationGraph::new(p)?.graph)
}

/// rank <H, g1..gm> <= rank H.
pub fn depends(p: &Problem) -> bool {
    let h = subgroup_graph(p.n, &p.h_generators);
    let mut all = p.h_generators.clone();
    all.extend(p.g_values.iter().cloned());
    let hg = subgroup_graph(p.n, &all);
    hg.rank() <= h.rank()
}

/// Rewrites a problem over a free basis of <H, g1..gm>, read off a spanning
/// tree of its folded graph. Returns the new problem; `h_basis` must be a basis of H.
pub fn relative_problem(p: &Problem, h_basis: &[FreeWord]) -> Problem {
    let mut all: Vec<FreeWord> = h_basis.to_vec();
    all.extend(p.g_values.iter().cloned());
    let j = subgroup_graph(p.n, &all);
    let tree = j.spanning_tree().expect("folded graphs are connected");
    let mut index = vec![None; j.num_edges()];
    for (i, e) in j.non_tree_edges(&tree).into_iter().enumerate() {
        index[e] = Some(i);
    }
    let n2 = j.rank().max(1);
    let a2 = Alphabet::ambient(n2);
    let base = j.basepoint().expect("based");
    let translate = |w: &FreeWord| {
        let path = j.trace(base, w.letters()).expect("word lies in the join");
        FreeWord::new(
            a2,
            path.steps
                .iter()
                .filter_map(|d| index[d.edge].map(|i| Letter::new(i, !d.forward)))
                .collect(),
        )
    };
    Problem {
        n: n2,
        h_generators: h_basis.iter().map(translate).collect(),
        g_values: p.g_values.iter().map(translate).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealOptions {
    /// Work inside <H, g> instead of the ambient free group.
    pub relative_ambient: bool,
}

impl Default for IdealOptions {
    fn default() -> Self {
        IdealOptions { relative_ambient: true }
    }
}

#[derive(Debug, Clone)]
pub struct IdealPresentation {
    /// Free basis of H in the caller's ambient group.
    pub h_basis: Vec<FreeWord>,
    pub g_values: Vec<FreeWord>,
    pub generators: Vec<Equation>,
    /// Edge count of G (0 when some target value is trivial and G is not built).
    pub edge_count: usize,
    pub rank_h: usize,
    pub rank_join: usize,
    /// The problem actually computed with (possibly rewritten over <H, g>).
    pub working: Problem,
    pub working_basis: HBasis,
}

impl IdealPresentation {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::equation(self.h_basis.len(), self.g_values.len())
    }

    pub fn num_vars(&self) -> usize {
        self.g_values.len()
    }

    pub fn evaluate(&self, e: &Equation) -> Result<FreeWord> {
        evaluate(e, &self.h_basis, &self.g_values)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// The equation graph of the working problem.
    pub fn equation_graph(&self) -> Result<EquationGraph> {
        EquationGraph::with_basis(&self.working, self.working_basis.clone())
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            h_basis: self.h_basis.iter().map(|w| w.to_string()).collect(),
            generators: self.generators.iter().map(|e| e.to_string()).collect(),
            l: self.edge_count,
            ranks: Ranks { h: self.rank_h, hg: self.rank_join },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Ranks {
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(rename = "Hg")]
    pub hg: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IdealJson {
    pub h_basis: Vec<String>,
    pub generators: Vec<String>,
    #[serde(rename = "L")]
    pub l: usize,
    pub ranks: Ranks,
}

pub fn normal_generators(p: &Problem) -> Result<IdealPresentation> {
    normal_generators_with(p, IdealOptions::default())
}

pub fn normal_generators_with(p: &Problem, opts: IdealOptions) -> Result<IdealPresentation> {
    let basis = HBasis::new(p.n, &p.h_generators);
    let h_basis = basis.words().to_vec();
    let (working, working_basis) = if opts.relative_ambient {
        let w = relative_problem(p, &h_basis);
        let b = HBasis::new(w.n, &w.h_generators);
        (w, b)
    } else {
        (p.clone(), basis.clone())
    };
    let r = h_basis.len();
    let m = p.num_vars();
    let alphabet = Alphabet::equation(r, m);
    let mut all = h_basis.clone();
    all.extend(p.g_values.iter().cloned());
    let rank_join = subgroup_graph(p.n, &all).rank();

    // trivial targets contribute their variable; the rest is a smaller problem
    let live: Vec<usize> = (0..m).filter(|&j| !p.g_values[j].is_empty()).collect();
    let mut generators = Vec::new();
    let mut edge_count = 0;
    if !live.is_empty() {
        let sub = Problem {
            n: working.n,
            h_generators: working.h_generators.clone(),
            g_values: live.iter().map(|&j| working.g_values[j].clone()).collect(),
        };
        let eg = EquationGraph::with_basis(&sub, working_basis.clone())?;
        edge_count = eg.graph.num_edges();
        for e in kernel_basis(&eg) {
            let letters = e
                .word()
                .letters()
                .iter()
                .map(|l| {
                    if l.symbol < r {
                        *l
                    } else {
                        Letter::new(r + live[l.symbol - r], l.inverse)
                    }
                })
                .collect();
            generators.push(Equation::new(FreeWord::new(alphabet, letters)));
        }
    }
    for j in 0..m {
        if p.g_values[j].is_empty() {
            generators.push(Equation::new(FreeWord::new(alphabet, vec![Letter::pos(r + j)])));
        }
    }
    for e in &generators {
        debug_assert!(evaluate(e, &h_basis, &p.g_values)?.is_empty());
    }
    Ok(IdealPresentation {
        rank_h: h_basis.len(),
        h_basis,
        g_values: p.g_values.clone(),
        generators,
        edge_count,
        rank_join,
        working,
        working_basis,
    })
}

/// Loops of G spanning the kernel of G -> fold(G), turned into equations.
fn kernel_basis(eg: &EquationGraph) -> Vec<Equation> {
    let g = &eg.graph;
    let trace = fold(g);
    let stage = trace.stage(trace.k);
    let (gk, _, origin) = stage.compact(g);
    let tree = gk.spanning_tree().expect("stage graphs are connected");
    let non_tree = gk.non_tree_edges(&tree);
    let loops = gk.fundamental_basis(&tree).expect("tree is valid");
    let loop_of: BTreeMap<usize, &GraphPath> = non_tree.iter().copied().zip(loops.iter()).collect();

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..gk.num_edges() {
        classes.entry(trace.edge_image(origin[e])).or_default().push(e);
    }
    let mut kernel_loops = Vec::new();
    for members in classes.values() {
        let has_tree_edge = members.iter().any(|e| tree.contains(e));
        let mut others: Vec<usize> = members.iter().copied().filter(|e| !tree.contains(e)).collect();
        others.sort_by_key(|&e| (gk.edge(e).label, e));
        if has_tree_edge {
            kernel_loops.extend(others.iter().map(|e| loop_of[e].clone()));
        } else if let Some((&rep, rest)) = others.split_first() {
            let back = loop_of[&rep].inverse(&gk);
            kernel_loops.extend(rest.iter().map(|e| loop_of[e].concat(&back)));
        }
    }
    let base = g.basepoint().expect("G is based");
    kernel_loops
        .into_iter()
        .map(|l| {
            let lifted = GraphPath {
                start: base,
                steps: l.steps.iter().map(|d| Dart::new(origin[d.edge], d.forward)).collect(),
            };
            let back = trace.pull_back(&lifted);
            let e = eg.equation_of(&back);
            Equation::new(e.word().cyclic_reduce().0)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    #[serde(rename = "all-even")]
    AllEven,
    #[serde(rename = "has-odd")]
    HasOdd,
}

pub fn parity_class(pres: &IdealPresentation) -> Result<Parity> {
    if pres.generators.is_empty() {
        return Err(Error::TrivialIdeal);
    }
    Ok(if pres.generators.iter().all(|e| e.degree() % 2 == 0) {
        Parity::AllEven
    } else {
        Parity::HasOdd
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Generator of the kernel for H = <a^m>, g = a^k in the free group of rank one,
/// over the letters h, x.
pub fn cyclic_generator(m: u32, k: u32) -> Result<Equation> {
    if m == 0 || gcd(m, k) != 1 {
        return Err(Error::NotCoprime(m, k));
    }
    let alphabet = Alphabet::equation(1, 1);
    let h = vec![Letter::pos(0)];
    let x = vec![Letter::pos(1)];
    let word = cyclic_word(m, k, &h, &x);
    Ok(Equation::new(FreeWord::new(alphabet, word)))
}

fn cyclic_word(m: u32, k: u32, h: &[Letter], x: &[Letter]) -> Vec<Letter> {
    let inv = |w: &[Letter]| crate::words::invert_letters(w);
    if m == 1 && k == 0 {
        return inv(x);
    }
    if m > k {
        let mut hx = h.to_vec();
        hx.extend(inv(x));
        cyclic_word(m - k, k, &hx, x)
    } else {
        let mut xh = x.to_vec();
        xh.extend(inv(h));
        cyclic_word(m, k - m, h, &xh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(h: &[&str], g: &str) -> Problem {
        Problem::parse(2, h, &[g]).unwrap()
    }

    #[test]
    fn g_graphs() {
        let g = build_g(&prob(&["ba", "abbA"], "a")).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (4, 6));
        let g = build_g(&prob(&["b", "ababa"], "a")).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (5, 7));
        let g = build_g(&Problem::parse(1, &["a"], &["a"]).unwrap()).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 2));
        let g = build_g(&prob(&["aaBA", "aaa", "baB"], "aaB")).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 9));
        assert!(matches!(build_g(&prob(&["a"], "")), Err(Error::TrivialTarget(1))));
    }

    #[test]
    fn dependence() {
        assert!(depends(&prob(&["ba", "abbA"], "a")));
        assert!(!depends(&prob(&["a"], "b")));
        assert!(depends(&Problem::parse(1, &["aaaaa"], &["aa"]).unwrap()));
    }

    #[test]
    fn theta_roundtrip() {
        let p = prob(&["ba", "abbA"], "a");
        let eg = EquationGraph::new(&p).unwrap();
        let e = Equation::parse(2, 1, "~x h2 x x ~h1 x ~h1").unwrap();
        assert_eq!(eg.equation_of(&eg.path_of(&e)), e);
        let (red, _) = reduce_path(&eg.path_of(&e));
        assert_eq!(red.len(), 12);
    }

    #[test]
    fn generators_of_worked_examples() {
        let p = prob(&["ba", "abbA"], "a");
        let pres = normal_generators(&p).unwrap();
        assert_eq!(pres.generators.len(), 1);
        let expect = Equation::parse(2, 1, "~x h2 x x ~h1 x ~h1").unwrap();
        assert!(pres.generators[0].equivalent(&expect), "{}", pres.generators[0]);

        let p = prob(&["b", "ababa"], "a");
        let pres = normal_generators(&p).unwrap();
        assert_eq!(pres.generators.len(), 1);
        let expect = Equation::parse(2, 1, "~h2 x h1 x h1 x").unwrap();
        assert!(pres.generators[0].equivalent(&expect), "{}", pres.generators[0]);
        assert_eq!(parity_class(&pres).unwrap(), Parity::HasOdd);

        let p = prob(&["aaBA", "aaa", "baB"], "aaB");
        let pres = normal_generators(&p).unwrap();
        assert_eq!(pres.generators.len(), 2);
        for e in &pres.generators {
            assert!(pres.evaluate(e).unwrap().is_empty());
        }
    }

    #[test]
    fn independent_problem_has_no_generators() {
        let pres = normal_generators(&prob(&["a"], "b")).unwrap();
        assert!(pres.generators.is_empty());
        assert!(matches!(parity_class(&pres), Err(Error::TrivialIdeal)));
    }

    #[test]
    fn degenerate_inputs() {
        let pres = normal_generators(&prob(&["a"], "")).unwrap();
        assert_eq!(pres.generators.len(), 1);
        assert_eq!(pres.generators[0].to_string(), "x");
        let pres = normal_generators(&prob(&[], "ab")).unwrap();
        assert!(pres.generators.is_empty());
        let pres = normal_generators(&prob(&["a", ""], "a")).unwrap();
        assert_eq!(pres.h_basis.len(), 1);
        assert_eq!(pres.generators.len(), 1);
    }

    #[test]
    fn relative_and_absolute_agree_on_counts() {
        for (h, g) in [(&["ba", "abbA"][..], "a"), (&["aaBA", "aaa", "baB"][..], "aaB"), (&["ab"][..], "abab")] {
            let p = prob(h, g);
            let a = normal_generators_with(&p, IdealOptions { relative_ambient: true }).unwrap();
            let b = normal_generators_with(&p, IdealOptions { relative_ambient: false }).unwrap();
            assert_eq!(a.generators.len(), b.generators.len());
            for e in a.generators.iter().chain(&b.generators) {
                assert!(a.evaluate(e).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn cyclic_generators() {
        assert_eq!(cyclic_generator(5, 2).unwrap().to_string(), "h ~x ~x h ~x ~x ~x");
        assert_eq!(cyclic_generator(1, 0).unwrap().to_string(), "~x");
        assert_eq!(cyclic_generator(1, 3).unwrap().to_string(), "h h h ~x");
        assert!(matches!(cyclic_generator(4, 2), Err(Error::NotCoprime(4, 2))));
    }
}
