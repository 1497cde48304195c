//! Minimum degree, fixed-degree existence, and the set of realized degrees.
//!
//! A cyclically reduced equation of multi-degree `dvec` can be rotated and
//! inverted so that it reads `c1 x^s1 c2 x^s2 ... cD x^sD` with the last slot
//! a positive occurrence of the first variable that occurs. Each `ci` lies in
//! H, and must be nontrivial exactly when its neighbours would cancel. The
//! equation lies in the kernel iff the identity lies in the product of the
//! subsets `H'·g^s`, which we track as automata slot by slot, grouping partial
//! products by (letters used so far, previous slot).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::automata::{Dfa, Limits};
use crate::error::{Error, Result};
use crate::graphs::GraphPath;
use crate::ideal::{parity_class, IdealPresentation, Parity};
use crate::oracle::LoopSearch;
use crate::words::{Equation, FreeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// With a verified witness of the requested degree.
    Yes(Equation),
    No,
    /// A resource cap was hit before the answer was certain.
    Unknown(String),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Decision::Yes(_) => Some(true),
            Decision::No => Some(false),
            Decision::Unknown(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeOptions {
    pub limits: Limits,
    /// Worker threads used within one layer of the product computation.
    pub jobs: usize,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            limits: Limits::default(),
            jobs: 1,
        }
    }
}

/// `(variable, inverted)`
type Slot = (usize, bool);
type Key = (Vec<usize>, Slot);

/// Decides existence of equations of given (multi-)degrees for one presentation.
pub struct DegreeSolver<'a> {
    pres: &'a IdealPresentation,
    opts: DegreeOptions,
    factors: HashMap<(Slot, bool), Dfa>,
    inverse_factors: HashMap<(Slot, bool), Dfa>,
}

impl<'a> DegreeSolver<'a> {
    pub fn new(pres: &'a IdealPresentation, opts: DegreeOptions) -> Result<Self> {
        let hg = pres.working_basis.graph();
        let h_any = Dfa::from_subgroup_graph(hg, false);
        let h_nontrivial = Dfa::from_subgroup_graph(hg, true);
        let mut factors = HashMap::new();
        let mut inverse_factors = HashMap::new();
        for (j, g) in pres.working.g_values.iter().enumerate() {
            for neg in [false, true] {
                let gs = if neg { g.inverse() } else { g.clone() };
                let single = Dfa::singleton(&gs);
                for nontrivial in [false, true] {
                    let h = if nontrivial { &h_nontrivial } else { &h_any };
                    let t = h.concat(&single, opts.limits)?;
                    inverse_factors.insert(((j, neg), nontrivial), t.inverse(opts.limits)?);
                    factors.insert(((j, neg), nontrivial), t);
                }
            }
        }
        Ok(DegreeSolver {
            pres,
            opts,
            factors,
            inverse_factors,
        })
    }

    pub fn degree_exists(&self, d: usize) -> Decision {
        if self.pres.num_vars() != 1 {
            return Decision::Unknown("degree_exists needs a single variable".into());
        }
        self.multi_degree_exists(&[d])
    }

    pub fn multi_degree_exists(&self, dvec: &[usize]) -> Decision {
        match self.decide(dvec) {
            Ok(d) => d,
            Err(e) => Decision::Unknown(e.to_string()),
        }
    }

    fn decide(&self, dvec: &[usize]) -> Result<Decision> {
        let m = self.pres.num_vars();
        if dvec.len() != m {
            return Err(Error::Arity {
                what: "degree entries",
                expected: m,
                got: dvec.len(),
            });
        }
        let total: usize = dvec.iter().sum();
        let Some(first) = dvec.iter().position(|&x| x > 0) else {
            return Ok(Decision::No);
        };
        let last_slot: Slot = (first, false);
        let n = self.pres.working.n;
        let identity = Dfa::singleton(&FreeWord::identity(crate::words::Alphabet::ambient(n)));
        let mut layers: Vec<BTreeMap<Key, Dfa>> = vec![BTreeMap::from([((vec![0; m], last_slot), identity)])];
        for i in 0..total {
            let mut tasks: Vec<(Key, Slot, bool)> = Vec::new();
            for (counts, prev) in layers[i].keys() {
                for j in 0..m {
                    if counts[j] >= dvec[j] {
                        continue;
                    }
                    for neg in [false, true] {
                        let slot = (j, neg);
                        if i + 1 == total && slot != last_slot {
                            continue;
                        }
                        let nontrivial = *prev == (j, !neg);
                        tasks.push(((counts.clone(), *prev), slot, nontrivial));
                    }
                }
            }
            let results = self.run_tasks(&layers[i], &tasks)?;
            let mut next: BTreeMap<Key, Dfa> = BTreeMap::new();
            for ((key, slot, _), dfa) in tasks.iter().zip(results) {
                if dfa.is_empty() {
                    continue;
                }
                let mut counts = key.0.clone();
                counts[slot.0] += 1;
                let nk = (counts, *slot);
                let merged = match next.remove(&nk) {
                    Some(prev) => prev.union(&dfa),
                    None => dfa,
                };
                if merged.num_states() > self.opts.limits.max_states {
                    return Err(Error::ResourceCap("partial product too large".into()));
                }
                next.insert(nk, merged);
            }
            layers.push(next);
        }
        let final_key = (dvec.to_vec(), last_slot);
        match layers[total].get(&final_key) {
            Some(dfa) if dfa.contains_identity() => {
                let w = self.witness(&layers, final_key)?;
                let ok = self.pres.evaluate(&w)?.is_empty() && w.multi_degree() == dvec;
                if ok {
                    Ok(Decision::Yes(w))
                } else {
                    Err(Error::ResourceCap("witness recovery failed verification".into()))
                }
            }
            _ => Ok(Decision::No),
        }
    }

    fn run_tasks(&self, layer: &BTreeMap<Key, Dfa>, tasks: &[(Key, Slot, bool)]) -> Result<Vec<Dfa>> {
        let run = |t: &(Key, Slot, bool)| -> Result<Dfa> {
            layer[&t.0].concat(&self.factors[&(t.1, t.2)], self.opts.limits)
        };
        if self.opts.jobs <= 1 || tasks.len() <= 1 {
            return tasks.iter().map(run).collect();
        }
        let chunk = tasks.len().div_ceil(self.opts.jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = tasks
                .chunks(chunk)
                .map(|c| scope.spawn(move || c.iter().map(run).collect::<Result<Vec<_>>>()))
                .collect();
            let mut out = Vec::with_capacity(tasks.len());
            for h in handles {
                out.extend(h.join().expect("worker panicked")?);
            }
            Ok(out)
        })
    }

    /// Walks the layers backwards, peeling off one factor `c x^s` at a time.
    fn witness(&self, layers: &[BTreeMap<Key, Dfa>], final_key: Key) -> Result<Equation> {
        let pres = self.pres;
        let n = pres.working.n;
        let ambient = crate::words::Alphabet::ambient(n);
        let mut x = FreeWord::identity(ambient);
        let mut key = final_key;
        let mut pieces: Vec<(FreeWord, Slot)> = Vec::new();
        for i in (1..layers.len()).rev() {
            let (counts, slot) = key.clone();
            let mut pc = counts.clone();
            pc[slot.0] -= 1;
            let mut found = None;
            for ((c2, prev), s_pred) in layers[i - 1].range((pc.clone(), (0, false))..) {
                if *c2 != pc {
                    break;
                }
                let nontrivial = *prev == (slot.0, !slot.1);
                let tinv = &self.inverse_factors[&(slot, nontrivial)];
                let cand = Dfa::singleton(&x).concat(tinv, self.opts.limits)?;
                if let Some(y) = s_pred.intersect(&cand).shortest_word() {
                    found = Some(((c2.clone(), *prev), y));
                    break;
                }
            }
            let (pred_key, y) =
                found.ok_or_else(|| Error::ResourceCap("witness recovery lost track".into()))?;
            let g = &pres.working.g_values[slot.0];
            let gs = if slot.1 { g.clone() } else { g.inverse() };
            let c = y.inverse().mul(&x).mul(&gs);
            pieces.push((c, slot));
            x = y;
            key = pred_key;
        }
        pieces.reverse();
        let r = pres.h_basis.len();
        let mut letters = Vec::new();
        for (c, (j, neg)) in pieces {
            let h = pres
                .working_basis
                .translate_word(&c)
                .ok_or_else(|| Error::ResourceCap("witness factor outside H".into()))?;
            letters.extend(h);
            letters.push(Letter::new(r + j, neg));
        }
        Ok(Equation::new(FreeWord::new(pres.alphabet(), letters)))
    }
}

pub fn degree_exists(pres: &IdealPresentation, d: usize) -> Result<Decision> {
    Ok(DegreeSolver::new(pres, DegreeOptions::default())?.degree_exists(d))
}

pub fn multi_degree_exists(pres: &IdealPresentation, dvec: &[usize]) -> Result<Decision> {
    Ok(DegreeSolver::new(pres, DegreeOptions::default())?.multi_degree_exists(dvec))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinDegree {
    pub d_min: usize,
    pub witness: Equation,
}

pub fn min_degree(pres: &IdealPresentation) -> Result<MinDegree> {
    min_degree_with(pres, DegreeOptions::default())
}

pub fn min_degree_with(pres: &IdealPresentation, opts: DegreeOptions) -> Result<MinDegree> {
    let upper = pres.generators.iter().map(|e| e.degree()).min().ok_or(Error::TrivialIdeal)?;
    let solver = DegreeSolver::new(pres, opts)?;
    for d in 1..=upper {
        match solver.degree_exists(d) {
            Decision::Yes(witness) => return Ok(MinDegree { d_min: d, witness }),
            Decision::No => {}
            Decision::Unknown(why) => return Err(Error::ResourceCap(why)),
        }
    }
    Err(Error::ResourceCap(format!(
        "no equation found up to generator degree {upper}"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DegreeCase {
    #[serde(rename = "odd-present")]
    OddPresent,
    #[serde(rename = "even-only")]
    EvenOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeBase {
    #[serde(rename = "N")]
    Naturals,
    #[serde(rename = "2N")]
    Evens,
}

/// The realized degrees: `base` minus `exceptional` minus zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSetDescriptor {
    pub case: DegreeCase,
    pub base: DegreeBase,
    pub exceptional: BTreeSet<usize>,
    pub verified_up_to: usize,
}

impl DegreeSetDescriptor {
    pub fn contains(&self, d: usize) -> bool {
        d > 0
            && !self.exceptional.contains(&d)
            && (self.base == DegreeBase::Naturals || d % 2 == 0)
    }

    pub fn min(&self) -> usize {
        (1..).find(|&d| self.contains(d)).expect("the complement is finite")
    }
}

pub fn degree_set(pres: &IdealPresentation) -> Result<DegreeSetDescriptor> {
    degree_set_with(pres, DegreeOptions::default())
}

pub fn degree_set_with(pres: &IdealPresentation, opts: DegreeOptions) -> Result<DegreeSetDescriptor> {
    let parity = parity_class(pres)?;
    let solver = DegreeSolver::new(pres, opts)?;
    let degrees: Vec<usize> = pres.generators.iter().map(|e| e.degree()).collect();
    let (case, base, candidates, top) = match parity {
        Parity::HasOdd => {
            let d = *degrees.iter().filter(|&&d| d % 2 == 1).min().expect("odd generator");
            (DegreeCase::OddPresent, DegreeBase::Naturals, (1..=3 * d).collect::<Vec<_>>(), 3 * d)
        }
        Parity::AllEven => {
            let d = *degrees.iter().min().expect("nonempty");
            (DegreeCase::EvenOnly, DegreeBase::Evens, (1..d).map(|i| 2 * i).collect(), 2 * d)
        }
    };
    let mut exceptional = BTreeSet::new();
    for d in candidates {
        match solver.degree_exists(d) {
            Decision::Yes(_) => {}
            Decision::No => {
                exceptional.insert(d);
            }
            Decision::Unknown(why) => return Err(Error::ResourceCap(why)),
        }
    }
    Ok(DegreeSetDescriptor {
        case,
        base,
        exceptional,
        verified_up_to: top,
    })
}

/// `(16 L^2 d, 32 L^4 d^2 + 16 L^3 d)`: the length bounds beyond which a
/// kernel path always admits a cancellation, resp. a degree-preserving one.
pub fn theoretical_bounds(l: usize, d: usize) -> (u128, u128) {
    let (l, d) = (l as u128, d as u128);
    (16 * l * l * d, 32 * l.pow(4) * d * d + 16 * l.pow(3) * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchCaps {
    pub path_len: usize,
    /// Abort after visiting this many search nodes.
    pub max_nodes: u64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            path_len: 16,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationsOfDegree {
    /// Cyclically reduced kernel equations of the degree, one per class up to
    /// rotation and inversion, shortest paths first.
    pub bases: Vec<Equation>,
    pub path_len_cap: usize,
    pub theoretical_bound: u128,
    /// Whether the cap reaches the theoretical bound.
    pub exhaustive: bool,
    /// Whether the node budget ran out before the cap was covered.
    pub truncated: bool,
}

/// Kernel loops of G that are cyclically reduced and cross the variable
/// petals exactly `d` times, up to a path length cap.
pub fn equations_of_degree(pres: &IdealPresentation, d: usize, caps: SearchCaps) -> Result<EquationsOfDegree> {
    let eg = pres.equation_graph()?;
    let bound = theoretical_bounds(eg.graph.num_edges(), d).1;
    let base = eg.basepoint();
    let mut found: BTreeMap<Vec<Letter>, (usize, Equation)> = BTreeMap::new();
    let mut search = LoopSearch::new(&eg, caps.path_len)
        .max_crossings(d)
        .cyclic_only()
        .max_nodes(caps.max_nodes);
    search.run(&mut |steps, crossings| {
        if crossings != d {
            return true;
        }
        let path = GraphPath { start: base, steps: steps.to_vec() };
        let e = eg.equation_of(&path);
        if e.degree() == d {
            found
                .entry(e.cyclic_key())
                .or_insert_with(|| (steps.len(), Equation::new(e.word().cyclic_reduce().0)));
        }
        true
    });
    let truncated = search.truncated();
    let mut found: Vec<(usize, Equation)> = found.into_values().collect();
    found.sort();
    Ok(EquationsOfDegree {
        bases: found.into_iter().map(|(_, e)| e).collect(),
        path_len_cap: caps.path_len,
        theoretical_bound: bound,
        exhaustive: !truncated && caps.path_len as u128 >= bound,
        truncated,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeSetJson {
    pub case: DegreeCase,
    pub base: DegreeBase,
    pub exceptional: Vec<usize>,
    pub verified_up_to: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreesJson {
    pub d_min: usize,
    pub witness: String,
    pub degree_set: DegreeSetJson,
}

impl DegreesJson {
    pub fn new(min: &MinDegree, set: &DegreeSetDescriptor) -> Self {
        DegreesJson {
            d_min: min.d_min,
            witness: min.witness.to_string(),
            degree_set: DegreeSetJson {
                case: set.case,
                base: set.base,
                exceptional: set.exceptional.iter().copied().collect(),
                verified_up_to: set.verified_up_to,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{normal_generators, Problem};

    fn pres(h: &[&str], g: &str) -> IdealPresentation {
        normal_generators(&Problem::parse(2, h, &[g]).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_degrees() {
        let p = pres(&["ba", "abbA"], "a");
        let s = DegreeSolver::new(&p, DegreeOptions::default()).unwrap();
        assert_eq!(s.degree_exists(2), Decision::No);
        assert!(s.degree_exists(4).is_yes());
        assert_eq!(s.degree_exists(0), Decision::No);
        let p = pres(&["b", "ababa"], "a");
        let s = DegreeSolver::new(&p, DegreeOptions::default()).unwrap();
        assert_eq!(s.degree_exists(1), Decision::No);
        let m = min_degree(&p).unwrap();
        assert_eq!(m.d_min, 2);
        assert!(p.evaluate(&m.witness).unwrap().is_empty());
    }

    #[test]
    fn multi_variable() {
        let p = normal_generators(&Problem::parse(2, &["a"], &["a", "b"]).unwrap()).unwrap();
        let d = multi_degree_exists(&p, &[1, 0]).unwrap();
        assert!(d.is_yes());
        assert_eq!(multi_degree_exists(&p, &[0, 0]).unwrap(), Decision::No);
        assert_eq!(multi_degree_exists(&p, &[0, 1]).unwrap(), Decision::No);
    }

    #[test]
    fn descriptor_membership() {
        let d = DegreeSetDescriptor {
            case: DegreeCase::EvenOnly,
            base: DegreeBase::Evens,
            exceptional: BTreeSet::from([2]),
            verified_up_to: 8,
        };
        assert!(!d.contains(0) && !d.contains(2) && !d.contains(5) && d.contains(4));
        assert_eq!(d.min(), 4);
    }

    #[test]
    fn bounds() {
        assert_eq!(theoretical_bounds(7, 4), (16 * 49 * 4, 32 * 2401 * 16 + 16 * 343 * 4));
    }
}
