//! Finite automata recognizing subsets of a free group by their reduced words.
//!
//! Every automaton here accepts reduced words only, so a language is the same
//! thing as a subset of the group. Products cancel across the junction.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graphs::LabeledGraph;
use crate::words::{Alphabet, FreeWord, Letter};

const NONE: u32 = u32::MAX;

/// Deterministic automaton over the `2n` signed letters (see [`Letter::code`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    n: usize,
    trans: Vec<u32>,
    accept: Vec<bool>,
    start: u32,
}

/// Upper bound on intermediate automaton sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 400_000 }
    }
}

struct Nfa {
    trans: Vec<Vec<(usize, u32)>>,
    eps: Vec<Vec<u32>>,
    starts: Vec<u32>,
    accept: Vec<bool>,
}

impl Dfa {
    fn letters(&self) -> usize {
        2 * self.n
    }

    pub fn num_states(&self) -> usize {
        self.accept.len()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn next(&self, s: u32, c: usize) -> u32 {
        self.trans[s as usize * self.letters() + c]
    }

    /// The empty subset.
    pub fn empty(n: usize) -> Self {
        Dfa {
            n,
            trans: vec![NONE; 2 * n],
            accept: vec![false],
            start: 0,
        }
    }

    /// The subset containing one element.
    pub fn singleton(w: &FreeWord) -> Self {
        let n = w.alphabet().size();
        let w = w.reduce();
        let len = w.len();
        let mut trans = vec![NONE; (len + 1) * 2 * n];
        for (i, l) in w.letters().iter().enumerate() {
            trans[i * 2 * n + l.code()] = (i + 1) as u32;
        }
        let mut accept = vec![false; len + 1];
        accept[len] = true;
        Dfa { n, trans, accept, start: 0 }
    }

    /// Reduced words reading closed loops at the basepoint of a folded graph;
    /// with `nontrivial`, the empty word is excluded.
    pub fn from_subgroup_graph(g: &LabeledGraph, nontrivial: bool) -> Self {
        let n = g.n_labels();
        let k = 2 * n;
        let base = g.basepoint().expect("subgroup graph is based");
        // state = (vertex, last letter code or k for none)
        let mut ids: HashMap<(usize, usize), u32> = HashMap::new();
        let mut order = vec![(base, k)];
        ids.insert((base, k), 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (v, last) = order[i];
            let row_start = trans.len();
            trans.resize(row_start + k, NONE);
            for c in 0..k {
                if last < k && c == (last ^ 1) {
                    continue;
                }
                if let Some(d) = g.step(v, Letter::from_code(c)) {
                    let key = (g.head(d), c);
                    let next = order.len() as u32;
                    let id = *ids.entry(key).or_insert_with(|| {
                        order.push(key);
                        next
                    });
                    trans[row_start + c] = id;
                }
            }
            i += 1;
        }
        let accept = order
            .iter()
            .map(|&(v, last)| v == base && (!nontrivial || last < k))
            .collect();
        Dfa { n, trans, accept, start: 0 }.minimize()
    }

    pub fn accepts(&self, w: &FreeWord) -> bool {
        let mut s = self.start;
        for l in w.letters() {
            s = self.next(s, l.code());
            if s == NONE {
                return false;
            }
        }
        self.accept[s as usize]
    }

    pub fn contains_identity(&self) -> bool {
        self.accept[self.start as usize]
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// A shortest accepted word, ties broken by letter code.
    pub fn shortest_word(&self) -> Option<FreeWord> {
        let alphabet = Alphabet::ambient(self.n.max(1));
        let mut prev: Vec<Option<(u32, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[self.start as usize] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(s) = queue.pop_front() {
            if self.accept[s as usize] {
                let mut letters = Vec::new();
                let mut cur = s;
                while let Some((p, c)) = prev[cur as usize] {
                    letters.push(Letter::from_code(c));
                    cur = p;
                }
                letters.reverse();
                return Some(FreeWord::raw(alphabet, letters));
            }
            for c in 0..self.letters() {
                let t = self.next(s, c);
                if t != NONE && !seen[t as usize] {
                    seen[t as usize] = true;
                    prev[t as usize] = Some((s, c));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Accepted words of length at most `max_len`, for tests.
    pub fn words_up_to(&self, max_len: usize) -> Vec<FreeWord> {
        let alphabet = Alphabet::ambient(self.n.max(1));
        let mut out = Vec::new();
        let mut stack = vec![(self.start, Vec::new())];
        while let Some((s, w)) = stack.pop() {
            if self.accept[s as usize] {
                out.push(FreeWord::raw(alphabet, w.clone()));
            }
            if w.len() < max_len {
                for c in 0..self.letters() {
                    let t = self.next(s, c);
                    if t != NONE {
                        let mut w2 = w.clone();
                        w2.push(Letter::from_code(c));
                        stack.push((t, w2));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Removes states that cannot reach acceptance, then merges equivalent states.
    pub fn minimize(&self) -> Dfa {
        let k = self.letters();
        let ns = self.num_states();
        // co-reachability
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); ns];
        for s in 0..ns {
            for c in 0..k {
                let t = self.next(s as u32, c);
                if t != NONE {
                    rev[t as usize].push(s as u32);
                }
            }
        }
        let mut live = self.accept.clone();
        let mut queue: Vec<u32> = (0..ns as u32).filter(|&s| live[s as usize]).collect();
        while let Some(s) = queue.pop() {
            for &p in &rev[s as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    queue.push(p);
                }
            }
        }
        if !live[self.start as usize] {
            return Dfa::empty(self.n);
        }
        // reachable live states in BFS order
        let mut index = vec![NONE; ns];
        let mut order = vec![self.start];
        index[self.start as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for c in 0..k {
                let t = self.next(s, c);
                if t != NONE && live[t as usize] && index[t as usize] == NONE {
                    index[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        let m = order.len();
        let succ = |s: usize, c: usize| -> u32 {
            let t = self.next(order[s], c);
            if t == NONE || !live[t as usize] { NONE } else { index[t as usize] }
        };
        // Moore refinement
        let mut class: Vec<u32> = (0..m).map(|s| self.accept[order[s] as usize] as u32).collect();
        let mut num_classes = 0;
        loop {
            let mut sigs: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next_class = vec![0u32; m];
            for s in 0..m {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                for c in 0..k {
                    let t = succ(s, c);
                    sig.push(if t == NONE { NONE } else { class[t as usize] });
                }
                let len = sigs.len() as u32;
                next_class[s] = *sigs.entry(sig).or_insert(len);
            }
            let count = sigs.len();
            class = next_class;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }
        // renumber classes in BFS order from start
        let mut cid = vec![NONE; num_classes];
        let mut rep = Vec::new();
        for s in 0..m {
            let c = class[s] as usize;
            if cid[c] == NONE {
                cid[c] = rep.len() as u32;
                rep.push(s);
            }
        }
        let mut trans = vec![NONE; rep.len() * k];
        let mut accept = vec![false; rep.len()];
        for (i, &s) in rep.iter().enumerate() {
            accept[i] = self.accept[order[s] as usize];
            for c in 0..k {
                let t = succ(s, c);
                if t != NONE {
                    trans[i * k + c] = cid[class[t as usize] as usize];
                }
            }
        }
        Dfa {
            n: self.n,
            trans,
            accept,
            start: cid[class[0] as usize],
        }
    }

    fn determinize(nfa: &Nfa, n: usize, track_last: bool, limits: Limits) -> Result<Dfa> {
        let k = 2 * n;
        let closure = |set: &mut Vec<u32>| {
            let mut i = 0;
            while i < set.len() {
                for &t in &nfa.eps[set[i] as usize] {
                    if !set.contains(&t) {
                        set.push(t);
                    }
                }
                i += 1;
            }
            set.sort_unstable();
            set.dedup();
        };
        let mut start = nfa.starts.clone();
        closure(&mut start);
        let mut ids: HashMap<(Vec<u32>, usize), u32> = HashMap::new();
        let mut order: Vec<(Vec<u32>, usize)> = vec![(start.clone(), k)];
        ids.insert((start, k), 0);
        let mut trans = Vec::new();
        let mut accept = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (set, last) = order[i].clone();
            accept.push(set.iter().any(|&s| nfa.accept[s as usize]));
            let row = trans.len();
            trans.resize(row + k, NONE);
            let mut moves: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for &s in &set {
                for &(c, t) in &nfa.trans[s as usize] {
                    if track_last && last < k && c == (last ^ 1) {
                        continue;
                    }
                    moves.entry(c).or_default().push(t);
                }
            }
            for (c, mut targets) in moves {
                closure(&mut targets);
                let key = (targets, if track_last { c } else { k });
                let next = order.len() as u32;
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        if order.len() >= limits.max_states {
                            return Err(Error::ResourceCap(format!(
                                "automaton exceeded {} states",
                                limits.max_states
                            )));
                        }
                        ids.insert(key.clone(), next);
                        order.push(key);
                        next
                    }
                };
                trans[row + c] = id;
            }
            i += 1;
        }
        Ok(Dfa { n, trans, accept, start: 0 }.minimize())
    }

    fn to_nfa(&self, offset: u32, nfa: &mut Nfa) {
        let k = self.letters();
        for s in 0..self.num_states() {
            let mut row = Vec::new();
            for c in 0..k {
                let t = self.next(s as u32, c);
                if t != NONE {
                    row.push((c, t + offset));
                }
            }
            nfa.trans.push(row);
            nfa.eps.push(Vec::new());
            nfa.accept.push(false);
        }
    }

    /// `{ reduce(uv) : u in self, v in other }`.
    pub fn concat(&self, other: &Dfa, limits: Limits) -> Result<Dfa> {
        assert_eq!(self.n, other.n, "rank mismatch");
        let k = self.letters();
        let na = self.num_states();
        // predecessors in self
        let mut pred: Vec<Vec<(usize, u32)>> = vec![Vec::new(); na];
        for p in 0..na {
            for c in 0..k {
                let t = self.next(p as u32, c);
                if t != NONE {
                    pred[t as usize].push((c, p as u32));
                }
            }
        }
        // pairs (p, q): from p, some word s leads self into acceptance while
        // s^-1 leads other from its start to q
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
        for f in 0..na {
            if self.accept[f] {
                let pr = (f as u32, other.start);
                seen.insert(pr, ());
                pairs.push(pr);
            }
        }
        let mut i = 0;
        while i < pairs.len() {
            let (p1, q1) = pairs[i];
            for &(c, p) in &pred[p1 as usize] {
                let q = other.next(q1, c ^ 1);
                if q != NONE && seen.insert((p, q), ()).is_none() {
                    pairs.push((p, q));
                }
            }
            i += 1;
        }
        let mut nfa = Nfa {
            trans: Vec::new(),
            eps: Vec::new(),
            starts: vec![self.start],
            accept: Vec::new(),
        };
        self.to_nfa(0, &mut nfa);
        other.to_nfa(na as u32, &mut nfa);
        for (q, acc) in other.accept.iter().enumerate() {
            nfa.accept[na + q] = *acc;
        }
        for (p, q) in pairs {
            nfa.eps[p as usize].push(q + na as u32);
        }
        Dfa::determinize(&nfa, self.n, true, limits)
    }

    fn product(&self, other: &Dfa, both: bool) -> Dfa {
        assert_eq!(self.n, other.n, "rank mismatch");
        let k = self.letters();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut order = vec![(self.start, other.start)];
        ids.insert(order[0], 0);
        let mut trans = Vec::new();
        let mut accept = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (a, b) = order[i];
            let acc_a = a != NONE && self.accept[a as usize];
            let acc_b = b != NONE && other.accept[b as usize];
            accept.push(if both { acc_a && acc_b } else { acc_a || acc_b });
            let row = trans.len();
            trans.resize(row + k, NONE);
            for c in 0..k {
                let ta = if a == NONE { NONE } else { self.next(a, c) };
                let tb = if b == NONE { NONE } else { other.next(b, c) };
                let ok = if both { ta != NONE && tb != NONE } else { ta != NONE || tb != NONE };
                if ok {
                    let key = (ta, tb);
                    let next = order.len() as u32;
                    let id = *ids.entry(key).or_insert_with(|| {
                        order.push(key);
                        next
                    });
                    trans[row + c] = id;
                }
            }
            i += 1;
        }
        Dfa {
            n: self.n,
            trans,
            accept,
            start: 0,
        }
        .minimize()
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, false)
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, true)
    }

    /// `{ w^-1 : w in self }`.
    pub fn inverse(&self, limits: Limits) -> Result<Dfa> {
        let k = self.letters();
        let ns = self.num_states();
        let mut nfa = Nfa {
            trans: vec![Vec::new(); ns],
            eps: vec![Vec::new(); ns],
            starts: (0..ns as u32).filter(|&s| self.accept[s as usize]).collect(),
            accept: vec![false; ns],
        };
        nfa.accept[self.start as usize] = true;
        for s in 0..ns {
            for c in 0..k {
                let t = self.next(s as u32, c);
                if t != NONE {
                    nfa.trans[t as usize].push((c ^ 1, s as u32));
                }
            }
        }
        Dfa::determinize(&nfa, self.n, false, limits)
    }
}
