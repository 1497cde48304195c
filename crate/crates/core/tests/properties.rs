use proptest::prelude::*;

use eqideal::automata::{Dfa, Limits};
use eqideal::degrees::{Decision, DegreeOptions, DegreeSolver};
use eqideal::folding::{contains, subgroup_graph};
use eqideal::graphs::{reduce_path, GraphPath};
use eqideal::ideal::{build_g, depends, normal_generators, EquationGraph, Problem};
use eqideal::moves::{cancel, find_parallel_couples, KernelPath};
use eqideal::words::{Alphabet, Equation, FreeWord, Letter};

fn word(n: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        FreeWord::new(
            Alphabet::ambient(n),
            ls.into_iter().map(|(s, i)| Letter::new(s, i)).collect(),
        )
    })
}

fn nonempty_word(n: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    word(n, max_len).prop_filter("nonempty", |w| !w.is_empty())
}

fn problem(max_h: usize, h_len: usize, g_len: usize) -> impl Strategy<Value = Problem> {
    (prop::collection::vec(nonempty_word(2, h_len), 1..=max_h), nonempty_word(2, g_len))
        .prop_map(|(h, g)| Problem::new(2, h, vec![g]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_idempotent_and_inverse_cancels(w in word(3, 12)) {
        prop_assert!(w.is_reduced());
        prop_assert_eq!(w.reduce(), w.clone());
        prop_assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn cyclic_reduction_is_a_conjugate(w in word(2, 12)) {
        let (core, conj) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.mul(&core).mul(&conj.inverse()), w);
    }

    #[test]
    fn cyclic_key_ignores_rotation_and_inversion(w in nonempty_word(2, 10), k in 0usize..10) {
        let (core, _) = w.cyclic_reduce();
        let r = core.rotate(k % core.len());
        prop_assert_eq!(r.cyclic_key(), core.cyclic_key());
        prop_assert_eq!(r.inverse().cyclic_key(), core.cyclic_key());
    }

    #[test]
    fn display_parses_back(w in word(3, 10)) {
        let back = FreeWord::parse(Alphabet::ambient(3), &w.to_string()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn subgroup_graph_contains_generators(gens in prop::collection::vec(nonempty_word(2, 6), 1..=3),
                                          extra in word(2, 6)) {
        let h = subgroup_graph(2, &gens);
        prop_assert!(h.is_folded());
        for g in &gens {
            prop_assert!(contains(&h, g));
        }
        let product = gens.iter().fold(FreeWord::identity(Alphabet::ambient(2)), |a, g| a.mul(g));
        prop_assert!(contains(&h, &product));
        let dfa = Dfa::from_subgroup_graph(&h, false);
        prop_assert_eq!(dfa.accepts(&extra), contains(&h, &extra));
        prop_assert!(dfa.accepts(&product.inverse()));
    }

    #[test]
    fn concatenation_contains_products(gens in prop::collection::vec(nonempty_word(2, 4), 1..=2),
                                       a in word(2, 3), b in word(2, 3)) {
        let h = subgroup_graph(2, &gens);
        let hd = Dfa::from_subgroup_graph(&h, false);
        let left = Dfa::singleton(&a).concat(&hd, Limits::default()).unwrap();
        let prod = left.concat(&Dfa::singleton(&b), Limits::default()).unwrap();
        for g in &gens {
            prop_assert!(prod.accepts(&a.mul(g).mul(&b)));
        }
        prop_assert!(prod.accepts(&a.mul(&b)));
    }

    #[test]
    fn generators_lie_in_the_kernel(p in problem(3, 5, 4)) {
        let pres = normal_generators(&p).unwrap();
        let g = build_g(&p).unwrap();
        let rank_g = g.num_edges() + 1 - g.num_vertices();
        prop_assert_eq!(depends(&p), !pres.generators.is_empty());
        prop_assert_eq!(pres.generators.len(), rank_g - pres.rank_join);
        for e in &pres.generators {
            prop_assert!(pres.evaluate(e).unwrap().is_empty());
            prop_assert!(e.word().is_cyclically_reduced());
        }
    }

    #[test]
    fn theta_roundtrip(p in problem(2, 4, 3), letters in prop::collection::vec((0usize..3, any::<bool>()), 0..10)) {
        let eg = EquationGraph::new(&p).unwrap();
        let r = eg.hbasis.words().len();
        let alph = eg.equation_alphabet();
        let ls = letters.into_iter().map(|(s, i)| Letter::new(s % (r + 1), i)).collect();
        let e = Equation::new(FreeWord::new(alph, ls));
        let (path, _) = reduce_path(&eg.path_of(&e));
        prop_assert_eq!(eg.equation_of(&path), e);
    }

    #[test]
    fn witnesses_are_valid(p in problem(2, 4, 3), d in 1usize..6) {
        let pres = normal_generators(&p).unwrap();
        let s = DegreeSolver::new(&pres, DegreeOptions::default()).unwrap();
        match s.degree_exists(d) {
            Decision::Yes(w) => {
                prop_assert!(pres.evaluate(&w).unwrap().is_empty());
                prop_assert_eq!(w.degree(), d);
            }
            Decision::No => {}
            Decision::Unknown(why) => prop_assert!(false, "unknown: {}", why),
        }
    }

    #[test]
    fn projection_of_multi_degree(h in nonempty_word(2, 4), g1 in nonempty_word(2, 3),
                                  g2 in nonempty_word(2, 3), d in 1usize..5) {
        let single = normal_generators(&Problem::new(2, vec![h.clone()], vec![g1.clone()]).unwrap()).unwrap();
        let multi = normal_generators(&Problem::new(2, vec![h], vec![g1, g2]).unwrap()).unwrap();
        let a = DegreeSolver::new(&single, DegreeOptions::default()).unwrap().degree_exists(d);
        let b = DegreeSolver::new(&multi, DegreeOptions::default()).unwrap().multi_degree_exists(&[d, 0]);
        prop_assert_eq!(a.as_bool(), b.as_bool());
    }

    #[test]
    fn cancellation_shortens_within_the_kernel(h in 0usize..4, i in 1usize..4) {
        let (hs, g): (&[&str], &str) = match h {
            0 => (&["b", "ababa"], "a"),
            1 => (&["ba", "abbA"], "a"),
            2 => (&["aa"], "a"),
            _ => (&["aaBA", "aaa", "baB"], "aaB"),
        };
        let p = Problem::parse(2, hs, &[g]).unwrap();
        let pres = normal_generators(&p).unwrap();
        let eg = EquationGraph::new(&p).unwrap();
        let Some(gen) = pres.generators.first() else { return Ok(()) };
        let w = Equation::new(gen.word().pow(i as i64 + 1));
        let kp = KernelPath::of_equation(&eg, &w).unwrap();
        for pc in find_parallel_couples(&eg, &kp).unwrap() {
            let short = cancel(&eg, &kp, pc).unwrap();
            prop_assert!(short.path.is_reduced());
            prop_assert!(short.len() + 2 <= kp.len());
            prop_assert!(short.process.is_maximal(short.len()));
            let e = eg.equation_of(&short.path);
            prop_assert!(!e.is_trivial());
            prop_assert!(eqideal::words::evaluate(&e, eg.hbasis.words(), &p.g_values).unwrap().is_empty());
            let before = eg.equation_of(&kp.path);
            if before.word().is_cyclically_reduced() && e.word().is_cyclically_reduced() {
                prop_assert!(e.degree() <= before.degree());
            }
            prop_assert_eq!(short.path.start, GraphPath::empty(eg.basepoint()).start);
        }
    }
}
