//! Naive reference implementations. They follow the definitions literally
//! and share no search code with the library.

use std::collections::BTreeSet;

use htceq::htc::is_model;
use htceq::linear::complement;
use htceq::{
    AnswerSet, Bounds, DomainValue, Interpretation, LinearAtom, TAtom, TProgram, Theory, Valuation,
    ValuationSpace, Var,
};

/// A propositional rule: disjunctive head (empty is `⊥`), positive and
/// negative body.
pub type NaiveRule<A> = (Vec<A>, Vec<A>, Vec<A>);

fn subsets<A: Clone + Ord>(items: &[A]) -> Vec<BTreeSet<A>> {
    let mut out = vec![BTreeSet::new()];
    for a in items {
        let with: Vec<BTreeSet<A>> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.insert(a.clone());
                s
            })
            .collect();
        out.extend(with);
    }
    out
}

fn satisfies_rule<A: Ord>(x: &BTreeSet<A>, r: &NaiveRule<A>) -> bool {
    let body = r.1.iter().all(|a| x.contains(a)) && r.2.iter().all(|a| !x.contains(a));
    !body || r.0.iter().any(|a| x.contains(a))
}

fn reduct<A: Clone + Ord>(rules: &[NaiveRule<A>], x: &BTreeSet<A>) -> Vec<NaiveRule<A>> {
    rules
        .iter()
        .filter(|r| r.2.iter().all(|a| !x.contains(a)))
        .map(|r| (r.0.clone(), r.1.clone(), Vec::new()))
        .collect()
}

/// Stable models: models `X` such that no proper subset of `X` is a model
/// of the reduct relative to `X`.
pub fn stable_models<A: Clone + Ord>(rules: &[NaiveRule<A>]) -> BTreeSet<BTreeSet<A>> {
    let atoms: Vec<A> = rules
        .iter()
        .flat_map(|r| r.0.iter().chain(&r.1).chain(&r.2))
        .cloned()
        .collect::<BTreeSet<A>>()
        .into_iter()
        .collect();
    let mut out = BTreeSet::new();
    for x in subsets(&atoms) {
        if !rules.iter().all(|r| satisfies_rule(&x, r)) {
            continue;
        }
        let red = reduct(rules, &x);
        let xs: Vec<A> = x.iter().cloned().collect();
        let minimal = subsets(&xs)
            .into_iter()
            .filter(|y| y.len() < x.len())
            .all(|y| !red.iter().all(|r| satisfies_rule(&y, r)));
        if minimal {
            out.insert(x);
        }
    }
    out
}

fn assignments(vars: &[Var], bounds: Bounds) -> Vec<Vec<(Var, i64)>> {
    let mut out = vec![Vec::new()];
    for v in vars {
        let mut next = Vec::new();
        for partial in &out {
            for i in bounds.lo()..=bounds.hi() {
                let mut p: Vec<(Var, i64)> = partial.clone();
                p.push((v.clone(), i));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn holds(s: &LinearAtom, w: &[(Var, i64)]) -> bool {
    let value = |x: &Var| {
        w.iter()
            .find(|(v, _)| v == x)
            .map(|(_, i)| *i as i128)
            .unwrap()
    };
    let sum: i128 = s.terms().iter().map(|(k, x)| *k as i128 * value(x)).sum();
    let k = s.bound() as i128;
    match s.comparator().symbol() {
        "<=" => sum <= k,
        "=" => sum == k,
        "!=" => sum != k,
        "<" => sum < k,
        ">" => sum > k,
        ">=" => sum >= k,
        other => unreachable!("comparator {other}"),
    }
}

fn vars_of(atoms: &BTreeSet<LinearAtom>) -> Vec<Var> {
    atoms
        .iter()
        .flat_map(|s| s.vars())
        .collect::<BTreeSet<Var>>()
        .into_iter()
        .collect()
}

/// Satisfiability by listing every assignment.
pub fn sat(atoms: &BTreeSet<LinearAtom>, bounds: Bounds) -> bool {
    assignments(&vars_of(atoms), bounds)
        .iter()
        .any(|w| atoms.iter().all(|s| holds(s, w)))
}

fn theory_part(x: &BTreeSet<TAtom>) -> BTreeSet<LinearAtom> {
    x.iter().filter_map(|a| a.theory().cloned()).collect()
}

fn program_rules(p: &TProgram) -> Vec<NaiveRule<TAtom>> {
    p.rules()
        .iter()
        .map(|r| {
            (
                r.head.iter().cloned().collect(),
                r.pos.clone(),
                r.neg.clone(),
            )
        })
        .collect()
}

/// Stable models through solutions, by direct enumeration.
pub fn def3(p: &TProgram) -> BTreeSet<BTreeSet<TAtom>> {
    let universe: Vec<LinearAtom> = p.theory_universe().into_iter().collect();
    let heads = p.head_theory_atoms();
    let mut out = BTreeSet::new();
    for s in subsets(&universe) {
        let completion: BTreeSet<LinearAtom> = s
            .iter()
            .cloned()
            .chain(
                p.externals()
                    .iter()
                    .filter(|e| !s.contains(*e))
                    .map(complement),
            )
            .collect();
        if !sat(&s, p.bounds()) || !sat(&completion, p.bounds()) {
            continue;
        }
        let mut rules = program_rules(p);
        for e in s.iter().filter(|e| p.externals().contains(*e)) {
            rules.push((vec![TAtom::Th(e.clone())], vec![], vec![]));
        }
        for h in heads.iter().filter(|h| !s.contains(*h)) {
            rules.push((vec![], vec![TAtom::Th(h.clone())], vec![]));
        }
        out.extend(stable_models(&rules));
    }
    out
}

/// Stable models with a choice per external atom, by direct enumeration.
pub fn def4(p: &TProgram) -> BTreeSet<BTreeSet<TAtom>> {
    let mut rules = program_rules(p);
    for e in p.externals() {
        rules.push((
            vec![TAtom::Th(e.clone()), TAtom::Th(complement(e))],
            vec![],
            vec![],
        ));
    }
    stable_models(&rules)
        .into_iter()
        .filter(|x| sat(&theory_part(x), p.bounds()))
        .collect()
}

/// Answer sets from stable models, listing denotations directly.
pub fn answer_sets(p: &TProgram) -> BTreeSet<AnswerSet> {
    let mut out = BTreeSet::new();
    for x in def4(p) {
        let t = theory_part(&x);
        let regular: BTreeSet<Var> = x
            .iter()
            .filter_map(|a| match a {
                TAtom::Reg(v) => Some(v.clone()),
                TAtom::Th(_) => None,
            })
            .collect();
        for w in assignments(&vars_of(&t), p.bounds()) {
            if t.iter().all(|s| holds(s, &w)) {
                let valuation: Valuation = w
                    .into_iter()
                    .map(|(v, i)| (v, DomainValue::Int(i)))
                    .collect();
                out.insert(AnswerSet {
                    regular: regular.clone(),
                    valuation,
                });
            }
        }
    }
    out
}

/// All HTc models, checking every pair of valuations with the reference
/// satisfaction relation.
pub fn models(theory: &Theory, space: &ValuationSpace) -> BTreeSet<Interpretation> {
    let sig = space.signature();
    let all: Vec<Valuation> = space.iter().collect();
    let mut out = BTreeSet::new();
    for t in &all {
        for h in all.iter().filter(|h| h.is_subset(t)) {
            let i = Interpretation::new(h.clone(), t.clone()).unwrap();
            if is_model(&i, theory, &sig).unwrap() {
                out.insert(i);
            }
        }
    }
    out
}

/// Equilibrium models read off the full model set.
pub fn equilibrium_models(theory: &Theory, space: &ValuationSpace) -> BTreeSet<Valuation> {
    let ms = models(theory, space);
    ms.iter()
        .filter(|i| i.is_total())
        .filter(|i| !ms.iter().any(|j| j.there() == i.there() && !j.is_total()))
        .map(|i| i.there().clone())
        .collect()
}

/// The answer set a total valuation corresponds to.
pub fn answer_of_valuation(t: &Valuation) -> AnswerSet {
    let regular = t
        .iter()
        .filter(|(_, d)| *d == DomainValue::Truth)
        .map(|(v, _)| v.clone());
    let valuation = t
        .iter()
        .filter(|(_, d)| matches!(d, DomainValue::Int(_)))
        .map(|(v, d)| (v.clone(), d))
        .collect();
    AnswerSet::new(regular, valuation)
}
