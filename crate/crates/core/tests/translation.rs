use std::collections::BTreeSet;

use htceq::htc::satisfies;
use htceq::linear::complement;
use htceq::program::answer_sets;
use htceq::search::{equilibrium_models, models};
use htceq::translate::{project_props, tau2_program, tau_atom, tau_program, Provenance};
use htceq::{
    Comparator, ConstraintAtom, Formula, Limits, LinearAtom, TAtom, TProgram, Valuation, Var,
};
use htceq_testkit::{corpus, oracle};

const SEED: u64 = 0x5eed_0100;

fn tau_eq(p: &TProgram) -> BTreeSet<Valuation> {
    let t = tau_program(p).unwrap();
    equilibrium_models(&t.theory, &t.space(), Limits::default())
        .unwrap()
        .into_iter()
        .collect()
}

#[test]
fn answer_sets_correspond_to_equilibrium_models() {
    for p in corpus(SEED, 80) {
        let eq = tau_eq(&p);
        let mapped: BTreeSet<_> = eq.iter().map(oracle::answer_of_valuation).collect();
        let got: BTreeSet<_> = answer_sets(&p, Limits::default())
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(mapped.len(), eq.len());
        assert_eq!(got, mapped, "{p:?}");
        for a in &got {
            assert!(eq.contains(&a.to_valuation()));
        }
    }
}

#[test]
fn translations_satisfy_strong_excluded_middle() {
    for p in corpus(SEED + 1, 60) {
        let t = tau_program(&p).unwrap();
        let sig = t.signature.clone();
        let ms = models(&t.theory, &t.space(), Limits::default()).unwrap();
        for s in p.externals() {
            let phi = Formula::or(
                Formula::atom(tau_atom(&TAtom::Th(s.clone()))),
                Formula::atom(tau_atom(&TAtom::Th(complement(s)))),
            );
            for i in &ms {
                assert!(satisfies(i, &phi, &sig).unwrap(), "{s} at {i}");
            }
        }
    }
}

fn fresh_external(p: &TProgram) -> Option<LinearAtom> {
    let x: Var = p.external_vars().into_iter().next()?;
    let universe = p.theory_universe();
    (0..6)
        .flat_map(|k| Comparator::ALL.map(|c| LinearAtom::new(vec![(3, x.clone())], c, k).unwrap()))
        .find(|s| !universe.contains(s))
}

#[test]
fn fresh_atoms_over_external_variables_are_implicitly_external() {
    let mut checked = 0;
    for p in corpus(SEED + 2, 200) {
        let Some(s) = fresh_external(&p) else {
            continue;
        };
        let q = p.with_externals([s]).unwrap();
        assert!(q.externals().len() > p.externals().len());
        let l = Limits::default();
        assert_eq!(
            answer_sets(&p, l).unwrap(),
            answer_sets(&q, l).unwrap(),
            "{p:?}"
        );
        checked += 1;
    }
    assert!(
        checked >= 20,
        "only {checked} programs had external variables"
    );
}

#[test]
fn tau2_projects_onto_tau() {
    for p in corpus(SEED + 3, 60) {
        let t2 = tau2_program(&p).unwrap();
        let eq2: BTreeSet<Valuation> =
            equilibrium_models(&t2.theory, &t2.space(), Limits::default())
                .unwrap()
                .iter()
                .map(project_props)
                .collect();
        assert_eq!(eq2, tau_eq(&p), "{p:?}");
    }
}

#[test]
fn provenance_tags_cover_every_formula() {
    for p in corpus(SEED + 4, 40) {
        let t = tau_program(&p).unwrap();
        assert_eq!(t.provenance.len(), t.theory.len());
        let sem: BTreeSet<Var> = t
            .entries()
            .filter(|(_, tag)| *tag == Provenance::Sem)
            .filter_map(|(f, _)| match f {
                Formula::Atom(ConstraintAtom::Def(x)) => Some(x.clone()),
                _ => None,
            })
            .collect();
        assert!(sem.is_subset(&p.external_vars()));
    }
}
