use std::collections::BTreeSet;

use eqideal::degrees::*;
use eqideal::ideal::{normal_generators, IdealPresentation, Problem};
use eqideal::words::Equation;

fn pres(n: usize, h: &[&str], g: &[&str]) -> IdealPresentation {
    normal_generators(&Problem::parse(n, h, g).unwrap()).unwrap()
}

fn power(m: usize) -> String {
    "a".repeat(m)
}

#[test]
fn two_generator_even_example() {
    let p = pres(2, &["ba", "abbA"], &["a"]);
    let s = DegreeSolver::new(&p, DegreeOptions::default()).unwrap();
    assert_eq!(s.degree_exists(2), Decision::No);
    assert!(s.degree_exists(4).is_yes());
    assert!(s.degree_exists(6).is_yes());
    let m = min_degree(&p).unwrap();
    assert_eq!(m.d_min, 4);
    assert_eq!(m.witness.degree(), 4);
    assert!(p.evaluate(&m.witness).unwrap().is_empty());
    let set = degree_set(&p).unwrap();
    assert_eq!(set.case, DegreeCase::EvenOnly);
    assert_eq!(set.exceptional, BTreeSet::from([2]));
}

#[test]
fn odd_example_family() {
    let p = pres(2, &["b", "ababa"], &["a"]);
    let m = min_degree(&p).unwrap();
    assert_eq!(m.d_min, 2);
    let fam: Vec<Equation> = (1..=4)
        .flat_map(|i| {
            let hh = "h2 h1 ".repeat(i);
            let inv = "~h1 ~h2 ".repeat(i);
            [Equation::parse(2, 1, &format!("{hh} x h1 {inv} ~h1 ~x")).unwrap()]
        })
        .collect();
    assert!(fam.iter().any(|f| f.equivalent(&m.witness)), "{}", m.witness);
    let set = degree_set(&p).unwrap();
    assert_eq!(set.case, DegreeCase::OddPresent);
    assert_eq!(set.exceptional, BTreeSet::from([1]));

    let found = equations_of_degree(&p, 2, SearchCaps { path_len: 16, ..Default::default() }).unwrap();
    assert!(!found.bases.is_empty());
    for e in &found.bases {
        assert!(fam.iter().any(|f| f.equivalent(e)), "{e}");
    }
    assert!(!found.exhaustive);
}

#[test]
fn three_generator_example() {
    let p = pres(2, &["aaBA", "aaa", "baB"], &["aaB"]);
    assert_eq!(min_degree(&p).unwrap().d_min, 2);
    let set = degree_set(&p).unwrap();
    assert_eq!(set.case, DegreeCase::OddPresent);
    assert_eq!(set.exceptional, BTreeSet::from([1]));
}

#[test]
fn cyclic_family() {
    for m in 1..=7usize {
        for k in 0..=7usize {
            if num_gcd(m, k) != 1 {
                continue;
            }
            let p = pres(1, &[&power(m)], &[&power(k)]);
            let md = min_degree(&p).unwrap();
            assert_eq!(md.d_min, if m == 1 { 1 } else { 2 }, "m={m} k={k}");
            let set = degree_set(&p).unwrap();
            let expect = |d: usize| match m {
                1 => d >= 1,
                _ if m % 2 == 0 => d >= 2 && d % 2 == 0,
                _ => d >= 2 && (d % 2 == 0 || d >= m),
            };
            for d in 1..=3 * m {
                assert_eq!(set.contains(d), expect(d), "m={m} k={k} d={d}");
            }
        }
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { num_gcd(b, a % b) }
}
