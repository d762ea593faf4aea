use std::collections::BTreeSet;

use htceq::linear::complement;
use htceq::program::{
    answer_sets, stable_of_answer, theory_stable_models_def3, theory_stable_models_def3_traced,
    theory_stable_models_def4,
};
use htceq::search::equilibrium_models;
use htceq::translate::tau_program;
use htceq::{Limits, TAtom};
use htceq_testkit::{corpus, oracle, Generator};

const SEED: u64 = 0x5eed_0001;

#[test]
fn definitions_match_reference() {
    let l = Limits::default();
    for p in corpus(SEED, 80) {
        let d3: BTreeSet<_> = theory_stable_models_def3(&p, l)
            .unwrap()
            .into_iter()
            .collect();
        let d4: BTreeSet<_> = theory_stable_models_def4(&p, l)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(d3, oracle::def3(&p), "def3 on {p:?}");
        assert_eq!(d4, oracle::def4(&p), "def4 on {p:?}");
    }
}

#[test]
fn answer_sets_match_reference() {
    let l = Limits::default();
    for p in corpus(SEED + 1, 80) {
        let got: BTreeSet<_> = answer_sets(&p, l).unwrap().into_iter().collect();
        assert_eq!(got, oracle::answer_sets(&p), "{p:?}");
    }
}

#[test]
fn equilibrium_search_matches_reference_on_translations() {
    let l = Limits::default();
    for p in corpus(SEED + 2, 40) {
        let t = tau_program(&p).unwrap();
        let got: BTreeSet<_> = equilibrium_models(&t.theory, &t.space(), l)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(
            got,
            oracle::equilibrium_models(&t.theory, &t.space()),
            "{p:?}"
        );
    }
}

#[test]
fn answer_sets_round_trip_through_stable_models() {
    let l = Limits::default();
    for p in corpus(SEED + 3, 80) {
        let stable = theory_stable_models_def4(&p, l).unwrap();
        for a in answer_sets(&p, l).unwrap() {
            let x = stable_of_answer(&p, &a, l).unwrap();
            assert!(stable.contains(&x), "{a} of {p:?} maps to {x:?}");
            let back = htceq::program::answer_sets_of(&[x], p.bounds(), l).unwrap();
            assert!(back.contains(&a));
        }
    }
}

#[test]
fn stable_models_have_no_complementary_pair() {
    let l = Limits::default();
    for p in corpus(SEED + 4, 80) {
        for x in theory_stable_models_def4(&p, l).unwrap() {
            for a in &x {
                if let TAtom::Th(s) = a {
                    assert!(!x.contains(&TAtom::Th(complement(s))), "{x:?}");
                }
            }
        }
    }
}

#[test]
fn solutions_are_complete_for_externals() {
    let l = Limits::default();
    for p in corpus(SEED + 5, 60) {
        let trace = theory_stable_models_def3_traced(&p, l).unwrap();
        for s in &trace.solutions {
            for e in p.externals() {
                assert!(s.contains(e) || s.contains(&complement(e)));
            }
        }
    }
}

#[test]
fn programs_with_contexts_stay_within_budget() {
    let mut g = Generator::new(SEED + 6);
    let l = Limits::default();
    for _ in 0..20 {
        let p = g.program().union(&g.context()).unwrap();
        let t = tau_program(&p).unwrap();
        assert!(equilibrium_models(&t.theory, &t.space(), l).is_ok());
    }
}
