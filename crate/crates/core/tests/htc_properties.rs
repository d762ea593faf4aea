use htceq::htc::{den_member, is_model, satisfies, substitute};
use htceq::linear::den_member_linear;
use htceq::search::models;
use htceq::{
    Bounds, Comparator, ConstraintAtom, DomainValue, Formula, Interpretation, Limits, LinearAtom,
    Sort, Subdomain, Theory, Valuation, ValuationSpace, Var,
};
use htceq_testkit::Generator;

fn space() -> ValuationSpace {
    ValuationSpace::new(
        [
            (Var::new("a"), Sort::Boolean),
            (Var::new("b"), Sort::Boolean),
            (Var::new("x"), Sort::Integer),
            (Var::new("y"), Sort::Integer),
        ],
        Bounds::new(0, 3).unwrap(),
    )
}

fn valuations() -> Vec<Valuation> {
    space().iter().collect()
}

#[test]
fn denotations_are_monotone_in_definedness() {
    let sp = space();
    let sig = sp.signature();
    let mut g = Generator::new(11);
    let all = valuations();
    for _ in 0..60 {
        let phi = g.formula(0);
        let Formula::Atom(c) = phi else { continue };
        for v in &all {
            if !den_member(&c, v, &sig).unwrap() {
                continue;
            }
            for w in all.iter().filter(|w| v.is_subset(w)) {
                assert!(den_member(&c, w, &sig).unwrap(), "{c} at {v} but not {w}");
            }
        }
    }
}

#[test]
fn denotations_depend_only_on_their_variables() {
    let sp = space();
    let sig = sp.signature();
    let mut g = Generator::new(12);
    let all = valuations();
    for _ in 0..60 {
        let Formula::Atom(c) = g.formula(0) else {
            continue;
        };
        let vars = c.vars();
        for v in &all {
            for w in &all {
                if v.restrict(&vars) == w.restrict(&vars) {
                    assert_eq!(
                        den_member(&c, v, &sig).unwrap(),
                        den_member(&c, w, &sig).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn fixing_a_value_matches_substituting_it() {
    let bounds = Bounds::new(0, 3).unwrap();
    let mut g = Generator::new(13);
    for _ in 0..200 {
        let c = g.theory_atom();
        let x = Var::new("x");
        for d in bounds.values() {
            let rest: Vec<(i64, Var)> =
                c.terms().iter().filter(|(_, v)| *v != x).cloned().collect();
            if rest.is_empty() || rest.len() == c.terms().len() {
                continue;
            }
            let shift: i64 = c
                .terms()
                .iter()
                .filter(|(_, v)| *v == x)
                .map(|(k, _)| k * d)
                .sum();
            let fixed = LinearAtom::new(rest, c.comparator(), c.bound() - shift).unwrap();
            for y in bounds.values() {
                let v = Valuation::new().with("y", DomainValue::Int(y));
                let vd = v.clone().with("x", DomainValue::Int(d));
                assert_eq!(
                    den_member_linear(&fixed, &v, bounds).unwrap(),
                    den_member_linear(&c, &vd, bounds).unwrap(),
                    "{c} with x={d}"
                );
            }
        }
    }
}

#[test]
fn regular_atoms_are_defined_and_def_is_full_domain() {
    let sp = space();
    let sig = sp.signature();
    for v in valuations() {
        for name in ["a", "b"] {
            if den_member(&ConstraintAtom::regular(name), &v, &sig).unwrap() {
                assert!(den_member(&ConstraintAtom::def(name), &v, &sig).unwrap());
            }
        }
        for name in ["x", "y"] {
            let full = ConstraintAtom::Dom(Var::new(name), Subdomain::Range { lo: 0, hi: 3 });
            assert_eq!(
                den_member(&ConstraintAtom::def(name), &v, &sig).unwrap(),
                den_member(&full, &v, &sig).unwrap()
            );
            let part = ConstraintAtom::Dom(Var::new(name), Subdomain::Range { lo: 1, hi: 2 });
            if den_member(&part, &v, &sig).unwrap() {
                assert!(den_member(&ConstraintAtom::def(name), &v, &sig).unwrap());
            }
        }
    }
}

fn is_tautology(phi: &Formula, sp: &ValuationSpace) -> bool {
    let th: Theory = [phi.clone()].into_iter().collect();
    models(&th, sp, Limits::default()).unwrap().len() as u128 == sp.interpretation_count()
}

fn p(n: &str) -> Formula {
    Formula::atom(ConstraintAtom::regular(n))
}

fn schemata() -> Vec<Formula> {
    let (a, b, c) = (p("a"), p("b"), p("c"));
    vec![
        Formula::implies(a.clone(), a.clone()),
        Formula::implies(Formula::and(a.clone(), b.clone()), a.clone()),
        Formula::implies(a.clone(), Formula::implies(b.clone(), a.clone())),
        Formula::negation(Formula::and(a.clone(), Formula::negation(a.clone()))),
        Formula::implies(
            Formula::negation(Formula::negation(Formula::negation(a.clone()))),
            Formula::negation(a.clone()),
        ),
        Formula::implies(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(
                Formula::implies(b.clone(), c.clone()),
                Formula::negation(Formula::and(Formula::negation(c.clone()), a.clone())),
            ),
        ),
        Formula::or(
            Formula::negation(a.clone()),
            Formula::negation(Formula::negation(a.clone())),
        ),
    ]
}

#[test]
fn uniform_substitution_preserves_tautologies() {
    let prop_space = ValuationSpace::new(
        ["a", "b", "c"].map(|n| (Var::new(n), Sort::Boolean)),
        Bounds::new(0, 0).unwrap(),
    );
    let mut sp_vars: Vec<(Var, Sort)> = space().vars().to_vec();
    sp_vars.push((Var::new("c"), Sort::Boolean));
    let big = ValuationSpace::new(sp_vars, Bounds::new(0, 3).unwrap());
    let mut g = Generator::new(14);
    for schema in schemata() {
        assert!(is_tautology(&schema, &prop_space), "{schema}");
        for _ in 0..8 {
            let mut phi = schema.clone();
            for n in ["a", "b", "c"] {
                phi = substitute(&phi, &ConstraintAtom::regular(n), &g.formula(2));
            }
            assert!(is_tautology(&phi, &big), "{phi}");
        }
    }
    assert!(!is_tautology(
        &Formula::or(p("a"), Formula::negation(p("a"))),
        &prop_space
    ));
}

#[test]
fn running_example_tautology_instance() {
    let s = |c, k| Formula::atom(ConstraintAtom::Linear(LinearAtom::single("s", c, k)));
    let alpha = s(Comparator::Ge, 120);
    let beta = s(Comparator::Gt, 100);
    let gamma = p("a");
    let schema = &schemata()[5];
    let inst = substitute(
        &substitute(
            &substitute(schema, &ConstraintAtom::regular("a"), &alpha),
            &ConstraintAtom::regular("b"),
            &beta,
        ),
        &ConstraintAtom::regular("c"),
        &gamma,
    );
    let sp = ValuationSpace::new(
        [
            (Var::new("a"), Sort::Boolean),
            (Var::new("s"), Sort::Integer),
        ],
        Bounds::default(),
    );
    assert!(is_tautology(&inst, &sp));
    assert!(is_tautology(&Formula::implies(alpha, beta), &sp));
}

#[test]
fn persistence_and_negation_on_random_pairs() {
    let sp = space();
    let sig = sp.signature();
    let mut g = Generator::new(15);
    for _ in 0..2000 {
        let phi = g.formula(3);
        let i = g.interpretation(&sp);
        let tt = Interpretation::total(i.there().clone());
        let at_t = satisfies(&tt, &phi, &sig).unwrap();
        if satisfies(&i, &phi, &sig).unwrap() {
            assert!(at_t);
        }
        assert_eq!(
            satisfies(&i, &Formula::negation(phi.clone()), &sig).unwrap(),
            !at_t
        );
        let th: Theory = [phi].into_iter().collect();
        assert_eq!(is_model(&tt, &th, &sig).unwrap(), at_t);
    }
}
