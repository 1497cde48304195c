//! Cancellation and insertion moves on kernel loops of the equation graph.
//!
//! A kernel loop is a reduced loop at the basepoint whose label word is
//! trivial; it comes with a maximal reduction process pairing its steps.
//! Couples are referred to by their index in that process.

use crate::error::{Error, InsertionViolation, Result};
use crate::graphs::{label_reduction, reduce_path, Dart, GraphPath, ReductionProcess};
use crate::ideal::EquationGraph;
use crate::words::{Equation, FreeWord, Letter};

/// Two couples `alpha < beta` of a reduction process with
/// `s_beta < s_alpha < t_alpha < t_beta` and matching darts on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParallelCouple {
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionSpec {
    pub couple: usize,
    pub word: FreeWord,
}

/// A kernel loop together with a maximal reduction process of its labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPath {
    pub path: GraphPath,
    pub process: ReductionProcess,
}

impl KernelPath {
    /// The reduced path of `e` with the stack-built process.
    /// `None` unless `e` is nontrivial and lies in the kernel.
    pub fn of_equation(eg: &EquationGraph, e: &Equation) -> Option<Self> {
        let (path, _) = reduce_path(&eg.path_of(e));
        if path.steps.is_empty() {
            return None;
        }
        let process = label_reduction(&eg.graph, &path)?;
        Some(KernelPath { path, process })
    }

    pub fn from_path(eg: &EquationGraph, path: GraphPath) -> Option<Self> {
        let process = label_reduction(&eg.graph, &path)?;
        Some(KernelPath { path, process })
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.steps.is_empty()
    }

    pub fn equation(&self, eg: &EquationGraph) -> Equation {
        eg.equation_of(&self.path)
    }

    pub fn degree(&self, eg: &EquationGraph) -> usize {
        self.equation(eg).degree()
    }
}

fn check(eg: &EquationGraph, kp: &KernelPath) -> Result<()> {
    let g = &eg.graph;
    let len = kp.path.len();
    if !kp.process.is_maximal(len) {
        return Err(Error::InvalidCouple("reduction process is not maximal".into()));
    }
    for &(s, t) in &kp.process.couples {
        if g.letter(kp.path.steps[s]) != g.letter(kp.path.steps[t]).inv() {
            return Err(Error::InvalidCouple(format!("couple ({s}, {t}) does not cancel")));
        }
    }
    Ok(())
}

/// All parallel couples, ordered by `(alpha, beta)`.
pub fn find_parallel_couples(eg: &EquationGraph, kp: &KernelPath) -> Result<Vec<ParallelCouple>> {
    check(eg, kp)?;
    let c = &kp.process.couples;
    let steps = &kp.path.steps;
    let mut out = Vec::new();
    for alpha in 0..c.len() {
        let (sa, ta) = c[alpha];
        for beta in alpha + 1..c.len() {
            let (sb, tb) = c[beta];
            if sb < sa && ta < tb && steps[sa] == steps[sb] && steps[ta] == steps[tb] {
                out.push(ParallelCouple { alpha, beta });
            }
        }
    }
    Ok(out)
}

fn check_parallel(kp: &KernelPath, pc: ParallelCouple) -> Result<()> {
    let c = &kp.process.couples;
    let ok = pc.alpha < pc.beta && pc.beta < c.len() && {
        let ((sa, ta), (sb, tb)) = (c[pc.alpha], c[pc.beta]);
        let st = &kp.path.steps;
        sb < sa && ta < tb && st[sa] == st[sb] && st[ta] == st[tb]
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidCouple(format!("{pc:?} is not a parallel pair")))
    }
}

/// Collapses the steps `s_beta..s_alpha` and `t_alpha+1..=t_beta`.
pub fn cancel(eg: &EquationGraph, kp: &KernelPath, pc: ParallelCouple) -> Result<KernelPath> {
    check(eg, kp)?;
    check_parallel(kp, pc)?;
    let c = &kp.process.couples;
    let ((sa, ta), (sb, tb)) = (c[pc.alpha], c[pc.beta]);
    let len = kp.path.len();
    let removed = |i: usize| (sb..sa).contains(&i) || (ta + 1..=tb).contains(&i);
    let mut new_index = vec![usize::MAX; len];
    let mut steps = Vec::with_capacity(len);
    for i in 0..len {
        if !removed(i) {
            new_index[i] = steps.len();
            steps.push(kp.path.steps[i]);
        }
    }
    let couples = c
        .iter()
        .filter(|&&(s, t)| !removed(s) && !removed(t))
        .map(|&(s, t)| (new_index[s], new_index[t]))
        .collect();
    Ok(KernelPath {
        path: GraphPath { start: kp.path.start, steps },
        process: ReductionProcess { couples },
    })
}

/// The label word of the collapsed left interval.
pub fn cancelled_word(eg: &EquationGraph, kp: &KernelPath, pc: ParallelCouple) -> Result<FreeWord> {
    check_parallel(kp, pc)?;
    let c = &kp.process.couples;
    let (sa, sb) = (c[pc.alpha].0, c[pc.beta].0);
    let letters = kp.path.steps[sb..sa].iter().map(|&d| eg.graph.letter(d)).collect();
    Ok(FreeWord::raw(eg.graph.alphabet(), letters))
}

/// Whether the cancellation keeps the degree of the (cyclically reduced)
/// equation unchanged.
pub fn is_degree_preserving(eg: &EquationGraph, kp: &KernelPath, pc: ParallelCouple) -> Result<bool> {
    let after = cancel(eg, kp, pc)?;
    Ok(kp.degree(eg) == after.degree(eg))
}

/// Walks `letters` from `v` using only darts of core(H).
fn trace_in_core(eg: &EquationGraph, core: &[bool], v: usize, letters: &[Letter]) -> Option<Vec<Dart>> {
    let g = &eg.graph;
    let mut cur = v;
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        let d = g.leaving(cur).iter().copied().find(|d| core[d.edge] && g.letter(*d) == l)?;
        cur = g.head(d);
        out.push(d);
    }
    (cur == v).then_some(out)
}

struct Inserted {
    kp: KernelPath,
    /// Position of the first inserted step on each side, in the new path.
    left_at: usize,
    right_at: usize,
}

fn insert_raw(eg: &EquationGraph, kp: &KernelPath, spec: &InsertionSpec) -> Result<Inserted> {
    check(eg, kp)?;
    let g = &eg.graph;
    let c = &kp.process.couples;
    let alpha = spec.couple;
    if alpha >= c.len() {
        return Err(Error::InvalidCouple(format!("no couple {alpha}")));
    }
    let (sa, ta) = c[alpha];
    let steps = &kp.path.steps;
    let core = eg.h_core_edges();
    if !core[steps[sa].edge] || !core[steps[ta].edge] {
        return Err(Error::InvalidInsertion(InsertionViolation::CoupleOutsideCore));
    }
    let u = spec.word.letters();
    if u.is_empty() || !spec.word.is_cyclically_reduced() {
        return Err(Error::InvalidInsertion(InsertionViolation::NotCyclicallyReduced));
    }
    if u[0] != g.letter(steps[sa]) {
        return Err(Error::InvalidInsertion(InsertionViolation::WrongFirstLetter));
    }
    let left = trace_in_core(eg, &core, g.tail(steps[sa]), u)
        .ok_or(Error::InvalidInsertion(InsertionViolation::NotLoopAtLeft))?;
    let ubar: Vec<Letter> = u.iter().rev().map(|l| l.inv()).collect();
    let right = trace_in_core(eg, &core, g.head(steps[ta]), &ubar)
        .ok_or(Error::InvalidInsertion(InsertionViolation::NotLoopAtRight))?;
    let r = u.len();

    let mut new_steps = Vec::with_capacity(steps.len() + 2 * r);
    new_steps.extend_from_slice(&steps[..sa]);
    new_steps.extend_from_slice(&left);
    new_steps.extend_from_slice(&steps[sa..=ta]);
    new_steps.extend_from_slice(&right);
    new_steps.extend_from_slice(&steps[ta + 1..]);
    let shift = |i: usize| {
        if i < sa {
            i
        } else if i <= ta {
            i + r
        } else {
            i + 2 * r
        }
    };
    let left_at = sa;
    let right_at = ta + r + 1;
    let mut couples: Vec<(usize, usize)> = Vec::with_capacity(c.len() + r);
    for (i, &(s, t)) in c.iter().enumerate() {
        couples.push((shift(s), shift(t)));
        if i == alpha {
            for k in 1..=r {
                couples.push((left_at + r - k, right_at + k - 1));
            }
        }
    }
    Ok(Inserted {
        kp: KernelPath {
            path: GraphPath { start: kp.path.start, steps: new_steps },
            process: ReductionProcess { couples },
        },
        left_at,
        right_at,
    })
}

/// Inserts `u` before `s_alpha` and its inverse after `t_alpha`; the new
/// couples follow `alpha` in the process.
pub fn insert(eg: &EquationGraph, kp: &KernelPath, spec: &InsertionSpec) -> Result<KernelPath> {
    Ok(insert_raw(eg, kp, spec)?.kp)
}

/// Index of a couple after inserting a word of length `r` at `at`.
pub fn shifted_couple(index: usize, at: usize, r: usize) -> usize {
    if index > at {
        index + r
    } else {
        index
    }
}

/// The parallel pair whose cancellation undoes an insertion of length `r`
/// at `alpha`.
pub fn insertion_pair(alpha: usize, r: usize) -> ParallelCouple {
    ParallelCouple { alpha, beta: alpha + r }
}

/// Valid insertion words at a couple of length at most `max_len`, in
/// shortlex order.
pub fn insertion_words(eg: &EquationGraph, kp: &KernelPath, couple: usize, max_len: usize) -> Result<Vec<FreeWord>> {
    check(eg, kp)?;
    let g = &eg.graph;
    let c = &kp.process.couples;
    if couple >= c.len() {
        return Err(Error::InvalidCouple(format!("no couple {couple}")));
    }
    let (sa, ta) = c[couple];
    let core = eg.h_core_edges();
    let first = kp.path.steps[sa];
    if !core[first.edge] || !core[kp.path.steps[ta].edge] {
        return Ok(Vec::new());
    }
    let (vl, vr) = (g.tail(first), g.head(kp.path.steps[ta]));
    let mut out = Vec::new();
    let mut darts = vec![first];
    let mut letters = vec![g.letter(first)];
    enumerate_loops(eg, &core, vl, vr, max_len, &mut darts, &mut letters, &mut out);
    out.sort_by(|a: &FreeWord, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_loops(
    eg: &EquationGraph,
    core: &[bool],
    vl: usize,
    vr: usize,
    max_len: usize,
    darts: &mut Vec<Dart>,
    letters: &mut Vec<Letter>,
    out: &mut Vec<FreeWord>,
) {
    let g = &eg.graph;
    let last = *darts.last().expect("nonempty");
    let v = g.head(last);
    if v == vl && g.letter(last) != letters[0].inv() {
        let ubar: Vec<Letter> = letters.iter().rev().map(|l| l.inv()).collect();
        if trace_in_core(eg, core, vr, &ubar).is_some() {
            out.push(FreeWord::raw(g.alphabet(), letters.clone()));
        }
    }
    if darts.len() == max_len {
        return;
    }
    for &d in g.leaving(v) {
        if !core[d.edge] || d == last.rev() {
            continue;
        }
        darts.push(d);
        letters.push(g.letter(d));
        enumerate_loops(eg, core, vl, vr, max_len, darts, letters, out);
        darts.pop();
        letters.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tag {
    Original(usize),
    Left(usize),
    Right(usize),
}

/// Rewrites a sequence of insertions (each indexing the process current at
/// its time) as at most one insertion per original couple. The result is
/// ordered by decreasing couple index, so each entry indexes the original
/// process when applied in order.
pub fn consolidate(eg: &EquationGraph, kp: &KernelPath, specs: &[InsertionSpec]) -> Result<Vec<InsertionSpec>> {
    let mut cur = kp.clone();
    let mut tags: Vec<Tag> = (0..kp.len()).map(Tag::Original).collect();
    let mut roots: Vec<usize> = (0..kp.process.couples.len()).collect();
    for spec in specs {
        let r = spec.word.len();
        let root = *roots
            .get(spec.couple)
            .ok_or_else(|| Error::InvalidCouple(format!("no couple {}", spec.couple)))?;
        let ins = insert_raw(eg, &cur, spec)?;
        let mut t = tags;
        t.splice(ins.right_at - r..ins.right_at - r, std::iter::repeat(Tag::Right(root)).take(r));
        t.splice(ins.left_at..ins.left_at, std::iter::repeat(Tag::Left(root)).take(r));
        tags = t;
        roots.splice(spec.couple + 1..spec.couple + 1, std::iter::repeat(root).take(r));
        cur = ins.kp;
    }
    debug_assert_eq!(tags.len(), cur.len());
    let g = &eg.graph;
    let mut out = Vec::new();
    for (c, &(s, _)) in kp.process.couples.iter().enumerate().rev() {
        let pos = tags.iter().position(|&t| t == Tag::Original(s)).expect("original step kept");
        let mut start = pos;
        while start > 0 && tags[start - 1] == Tag::Left(c) {
            start -= 1;
        }
        if start < pos {
            let letters = cur.path.steps[start..pos].iter().map(|&d| g.letter(d)).collect();
            out.push(InsertionSpec { couple: c, word: FreeWord::raw(g.alphabet(), letters) });
        }
    }
    let mut check_path = kp.clone();
    for spec in &out {
        check_path = insert(eg, &check_path, spec)?;
    }
    if check_path.path != cur.path {
        return Err(Error::InvalidCouple("insertion sequence does not consolidate".into()));
    }
    Ok(out)
}

/// Applies a list of insertions in order.
pub fn apply_all(eg: &EquationGraph, kp: &KernelPath, specs: &[InsertionSpec]) -> Result<KernelPath> {
    let mut cur = kp.clone();
    for s in specs {
        cur = insert(eg, &cur, s)?;
    }
    Ok(cur)
}

/// One step of a cancellation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub pair: ParallelCouple,
    pub word: FreeWord,
    pub degree_preserving: bool,
    pub len_before: usize,
    pub len_after: usize,
    pub degree_after: usize,
}

/// Greedily cancels parallel pairs until none remain, preferring
/// degree-preserving ones, then the first in `(alpha, beta)` order.
pub fn cancellation_trace(eg: &EquationGraph, start: &KernelPath) -> Result<(Vec<TraceStep>, KernelPath)> {
    let mut cur = start.clone();
    let mut out = Vec::new();
    loop {
        let pairs = find_parallel_couples(eg, &cur)?;
        if pairs.is_empty() {
            return Ok((out, cur));
        }
        let before = cur.degree(eg);
        let mut chosen = None;
        for &pc in &pairs {
            let next = cancel(eg, &cur, pc)?;
            let keeps = next.degree(eg) == before;
            if chosen.is_none() || keeps {
                chosen = Some((pc, next, keeps));
            }
            if keeps {
                break;
            }
        }
        let (pc, next, keeps) = chosen.expect("nonempty");
        out.push(TraceStep {
            pair: pc,
            word: cancelled_word(eg, &cur, pc)?,
            degree_preserving: keeps,
            len_before: cur.len(),
            len_after: next.len(),
            degree_after: next.degree(eg),
        });
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Problem;

    fn setup() -> EquationGraph {
        EquationGraph::new(&Problem::parse(2, &["b", "ababa"], &["a"]).unwrap()).unwrap()
    }

    fn family(i: usize) -> Equation {
        let hh = "h2 h1 ".repeat(i);
        let inv = "~h1 ~h2 ".repeat(i);
        Equation::parse(2, 1, &format!("{hh} x h1 {inv} ~h1 ~x")).unwrap()
    }

    #[test]
    fn short_paths_have_no_pairs() {
        let eg = EquationGraph::new(&Problem::parse(1, &["a"], &["a"]).unwrap()).unwrap();
        let e = Equation::parse(1, 1, "h1 ~x").unwrap();
        let kp = KernelPath::of_equation(&eg, &e).unwrap();
        assert!(kp.len() < 4);
        assert!(find_parallel_couples(&eg, &kp).unwrap().is_empty());
    }

    #[test]
    fn family_member_cancels_to_previous() {
        let eg = setup();
        let two = KernelPath::of_equation(&eg, &family(2)).unwrap();
        let one = KernelPath::of_equation(&eg, &family(1)).unwrap();
        let pairs = find_parallel_couples(&eg, &two).unwrap();
        assert!(!pairs.is_empty());
        let hit = pairs.iter().any(|&pc| cancel(&eg, &two, pc).unwrap().path == one.path);
        assert!(hit);
    }

    #[test]
    fn insert_then_cancel() {
        let eg = setup();
        let kp = KernelPath::of_equation(&eg, &family(1)).unwrap();
        let mut tried = 0;
        for c in 0..kp.process.couples.len() {
            for u in insertion_words(&eg, &kp, c, 6).unwrap() {
                let spec = InsertionSpec { couple: c, word: u.clone() };
                let big = insert(&eg, &kp, &spec).unwrap();
                assert_eq!(big.len(), kp.len() + 2 * u.len());
                assert!(big.path.is_reduced());
                assert!(big.process.is_maximal(big.len()));
                let pc = insertion_pair(c, u.len());
                assert!(is_degree_preserving(&eg, &big, pc).unwrap());
                assert_eq!(cancel(&eg, &big, pc).unwrap(), kp);
                tried += 1;
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn violations_are_distinct() {
        let eg = setup();
        let kp = KernelPath::of_equation(&eg, &family(1)).unwrap();
        let g = &eg.graph;
        let core = eg.h_core_edges();
        let c = (0..kp.process.couples.len())
            .find(|&c| !insertion_words(&eg, &kp, c, 6).unwrap().is_empty())
            .unwrap();
        let u = insertion_words(&eg, &kp, c, 6).unwrap().remove(0);
        let bad = |w: FreeWord| match insert(&eg, &kp, &InsertionSpec { couple: c, word: w }) {
            Err(Error::InvalidInsertion(v)) => v,
            other => panic!("{other:?}"),
        };
        let sq = FreeWord::raw(g.alphabet(), [u.letters(), u.inverse().letters()].concat());
        assert_eq!(bad(sq), InsertionViolation::NotCyclicallyReduced);
        assert_eq!(bad(u.inverse()), InsertionViolation::WrongFirstLetter);
        let outside = (0..kp.process.couples.len())
            .find(|&i| !core[kp.path.steps[kp.process.couples[i].0].edge]);
        if let Some(o) = outside {
            let r = insert(&eg, &kp, &InsertionSpec { couple: o, word: u.clone() });
            assert!(matches!(r, Err(Error::InvalidInsertion(InsertionViolation::CoupleOutsideCore))));
        }
    }

    #[test]
    fn consolidation_of_nested_and_repeated() {
        let eg = setup();
        let kp = KernelPath::of_equation(&eg, &family(1)).unwrap();
        assert!(consolidate(&eg, &kp, &[]).unwrap().is_empty());
        let c = (0..kp.process.couples.len())
            .find(|&c| !insertion_words(&eg, &kp, c, 6).unwrap().is_empty())
            .unwrap();
        let u = insertion_words(&eg, &kp, c, 6).unwrap().remove(0);
        let specs = vec![
            InsertionSpec { couple: c, word: u.clone() },
            InsertionSpec { couple: c, word: u.clone() },
        ];
        let out = consolidate(&eg, &kp, &specs).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].word.letters(), u.pow(2).letters());

        let once = insert(&eg, &kp, &specs[0]).unwrap();
        let fresh = (c + 1..=c + u.len())
            .find(|&k| !insertion_words(&eg, &once, k, 6).unwrap().is_empty());
        if let Some(k) = fresh {
            let u2 = insertion_words(&eg, &once, k, 6).unwrap().remove(0);
            let specs = vec![specs[0].clone(), InsertionSpec { couple: k, word: u2 }];
            let out = consolidate(&eg, &kp, &specs).unwrap();
            assert_eq!(out.len(), 1);
            assert_eq!(apply_all(&eg, &kp, &out).unwrap().path, apply_all(&eg, &kp, &specs).unwrap().path);
        }
    }
}
