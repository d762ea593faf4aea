//! Translations of programs into HTc theories.
//!
//! [`tau_program`] maps each rule to an implication and adds definedness
//! facts for the variables of external atoms plus typing axioms.
//! [`tau2_program`] first reads the program propositionally, with a fresh
//! variable per theory atom, and links those variables to the constraints
//! they stand for; its stable models agree with those of `tau_program`
//! once the fresh variables are dropped.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::htc::{ConstraintAtom, Formula, Signature, Sort, Subdomain, Theory, Valuation, Var};
use crate::linear::LinearAtom;
use crate::program::{external_pairs, Rule, TAtom, TProgram};
use crate::search::{PropProgram, ValuationSpace};

/// Prefix reserved for generated variables.
pub const RESERVED_PREFIX: &str = "__";

/// Why a formula is part of a translation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Provenance {
    /// Translation of the rule with this zero-based index.
    Rule(usize),
    Sem,
    Dom,
    Phi,
    Choice,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Rule(i) => write!(f, "rule {}", i + 1),
            Provenance::Sem => f.write_str("sem"),
            Provenance::Dom => f.write_str("dom"),
            Provenance::Phi => f.write_str("phi"),
            Provenance::Choice => f.write_str("choice"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationOutput {
    pub theory: Theory,
    pub signature: Signature,
    pub provenance: BTreeMap<Formula, Provenance>,
}

impl TranslationOutput {
    fn new(signature: Signature) -> Self {
        TranslationOutput {
            theory: Theory::new(),
            signature,
            provenance: BTreeMap::new(),
        }
    }

    /// Adds a formula; a formula already present keeps its first tag.
    fn push(&mut self, phi: Formula, tag: Provenance) {
        for atom in phi.atoms() {
            self.signature.add_atom(atom);
        }
        if self.theory.insert(phi.clone()) {
            self.provenance.insert(phi, tag);
        }
    }

    pub fn space(&self) -> ValuationSpace {
        ValuationSpace::of_signature(&self.signature)
    }

    /// Formulas in canonical order with their tags.
    pub fn entries(&self) -> impl Iterator<Item = (&Formula, Provenance)> + '_ {
        self.theory.iter().map(|f| (f, self.provenance[f]))
    }
}

pub fn tau_atom(b: &TAtom) -> ConstraintAtom {
    match b {
        TAtom::Reg(a) => ConstraintAtom::Regular(a.clone()),
        TAtom::Th(s) => ConstraintAtom::Linear(s.clone()),
    }
}

fn rule_formula(
    head: Option<ConstraintAtom>,
    pos: impl IntoIterator<Item = ConstraintAtom>,
    neg: impl IntoIterator<Item = ConstraintAtom>,
) -> Formula {
    let body = Formula::conjunction(
        pos.into_iter()
            .map(Formula::Atom)
            .chain(neg.into_iter().map(|c| Formula::negation(Formula::Atom(c)))),
    );
    Formula::implies(body, head.map_or(Formula::Bot, Formula::Atom))
}

/// `body → head`, where the body conjoins the positive atoms and then the
/// negated negative atoms.
pub fn tau_rule(r: &Rule) -> Formula {
    rule_formula(
        r.head.as_ref().map(tau_atom),
        r.pos.iter().map(tau_atom),
        r.neg.iter().map(tau_atom),
    )
}

fn dom_axioms(
    out: &mut TranslationOutput,
    propositions: impl IntoIterator<Item = Var>,
    theory_vars: impl IntoIterator<Item = Var>,
) -> Result<()> {
    let range = Subdomain::of_bounds(out.signature.bounds());
    for a in propositions {
        out.signature.add_var(a.clone(), Sort::Boolean)?;
        out.push(
            Formula::implies(
                Formula::atom(ConstraintAtom::Def(a.clone())),
                Formula::atom(ConstraintAtom::Regular(a)),
            ),
            Provenance::Dom,
        );
    }
    for x in theory_vars {
        out.signature.add_var(x.clone(), Sort::Integer)?;
        out.push(
            Formula::implies(
                Formula::atom(ConstraintAtom::Def(x.clone())),
                Formula::atom(ConstraintAtom::Dom(x, range.clone())),
            ),
            Provenance::Dom,
        );
    }
    Ok(())
}

/// The complete translation: rules, definedness of external variables and
/// typing axioms.
pub fn tau_program(p: &TProgram) -> Result<TranslationOutput> {
    let mut out = TranslationOutput::new(Signature::new(p.bounds()));
    dom_axioms(&mut out, p.regular_atoms(), p.theory_vars())?;
    for (i, r) in p.rules().iter().enumerate() {
        out.push(tau_rule(r), Provenance::Rule(i));
    }
    for x in p.external_vars() {
        out.push(Formula::atom(ConstraintAtom::Def(x)), Provenance::Sem);
    }
    Ok(out)
}

/// The propositional variable standing for a theory atom.
pub fn prop_var(s: &LinearAtom) -> Var {
    Var::new(format!("{RESERVED_PREFIX}prop[{s}]"))
}

pub fn is_prop_var(v: &Var) -> bool {
    v.as_str().starts_with(RESERVED_PREFIX)
}

/// Drops the propositional variables of theory atoms.
pub fn project_props(v: &Valuation) -> Valuation {
    v.iter()
        .filter(|(x, _)| !is_prop_var(x))
        .map(|(x, d)| (x.clone(), d))
        .collect()
}

fn prop_of(b: &TAtom) -> Var {
    match b {
        TAtom::Reg(a) => a.clone(),
        TAtom::Th(s) => prop_var(s),
    }
}

/// The program read over propositions, with a disjunctive fact per pair
/// of complementary externals.
pub fn kappa(p: &TProgram) -> PropProgram<Var> {
    let mut out = PropProgram::new();
    for r in p.rules() {
        out.add_rule(
            r.head.iter().map(prop_of),
            r.pos.iter().map(prop_of),
            r.neg.iter().map(prop_of),
        );
    }
    for (s, c) in external_pairs(p.externals()) {
        out.add_rule([prop_var(&s), prop_var(&c)], [], []);
    }
    out
}

/// The propositional reading of the program, links `prop(s) → s` for every
/// theory atom, and typing axioms.
pub fn tau2_program(p: &TProgram) -> Result<TranslationOutput> {
    let mut out = TranslationOutput::new(Signature::new(p.bounds()));
    let universe = p.theory_universe();
    let props = p
        .regular_atoms()
        .into_iter()
        .chain(universe.iter().map(prop_var));
    dom_axioms(&mut out, props, p.theory_vars())?;
    for (i, r) in p.rules().iter().enumerate() {
        let regular = |b: &TAtom| ConstraintAtom::Regular(prop_of(b));
        let phi = rule_formula(
            r.head.as_ref().map(regular),
            r.pos.iter().map(regular),
            r.neg.iter().map(regular),
        );
        out.push(phi, Provenance::Rule(i));
    }
    for (s, c) in external_pairs(p.externals()) {
        let choice = Formula::or(
            Formula::atom(ConstraintAtom::Regular(prop_var(&s))),
            Formula::atom(ConstraintAtom::Regular(prop_var(&c))),
        );
        out.push(Formula::implies(Formula::top(), choice), Provenance::Choice);
    }
    for s in &universe {
        out.push(
            Formula::implies(
                Formula::atom(ConstraintAtom::Regular(prop_var(s))),
                Formula::atom(ConstraintAtom::Linear(s.clone())),
            ),
            Provenance::Phi,
        );
    }
    Ok(out)
}
