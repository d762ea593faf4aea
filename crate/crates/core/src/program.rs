//! Logic programs over regular and linear theory atoms, with their theory
//! stable models and answer sets.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, ProgramError, Result};
use crate::htc::{DomainValue, Valuation, Var};
use crate::linear::{self, complement, Bounds, LinearAtom};
use crate::search::{regular_stable_models, Limits, PropProgram};

/// An atom of a program: a regular proposition or a theory atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TAtom {
    Reg(Var),
    Th(LinearAtom),
}

impl TAtom {
    pub fn reg(name: impl Into<Var>) -> Self {
        TAtom::Reg(name.into())
    }

    pub fn theory(&self) -> Option<&LinearAtom> {
        match self {
            TAtom::Th(s) => Some(s),
            TAtom::Reg(_) => None,
        }
    }
}

impl fmt::Display for TAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TAtom::Reg(a) => write!(f, "{a}"),
            TAtom::Th(s) => write!(f, "{s}"),
        }
    }
}

/// `head ← pos, not neg`. A missing head is `⊥`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rule {
    pub head: Option<TAtom>,
    pub pos: Vec<TAtom>,
    pub neg: Vec<TAtom>,
}

impl Rule {
    pub fn new(head: Option<TAtom>, pos: Vec<TAtom>, neg: Vec<TAtom>) -> Self {
        Rule { head, pos, neg }
    }

    pub fn fact(head: TAtom) -> Self {
        Rule::new(Some(head), Vec::new(), Vec::new())
    }

    pub fn body_atoms(&self) -> impl Iterator<Item = &TAtom> + '_ {
        self.pos.iter().chain(&self.neg)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &TAtom> + '_ {
        self.head.iter().chain(self.body_atoms())
    }

    pub fn body(&self) -> Vec<Literal> {
        self.pos
            .iter()
            .cloned()
            .map(Literal::Pos)
            .chain(self.neg.iter().cloned().map(Literal::Neg))
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Literal {
    Pos(TAtom),
    Neg(TAtom),
}

/// Closure of a set of theory atoms under complement.
pub fn complement_closure<'a>(
    atoms: impl IntoIterator<Item = &'a LinearAtom>,
) -> BTreeSet<LinearAtom> {
    let mut out = BTreeSet::new();
    for s in atoms {
        out.insert(complement(s));
        out.insert(s.clone());
    }
    out
}

/// A program with its external theory atoms and integer bounds.
///
/// The externals are every theory atom occurring in a body, plus any
/// declared ones, closed under complement. Head theory atoms outside this
/// set are founded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TProgram {
    rules: Vec<Rule>,
    externals: BTreeSet<LinearAtom>,
    bounds: Bounds,
}

impl TProgram {
    pub fn new(
        rules: impl IntoIterator<Item = Rule>,
        declared_externals: impl IntoIterator<Item = LinearAtom>,
        bounds: Bounds,
    ) -> Result<Self, ProgramError> {
        let mut seen = BTreeSet::new();
        let rules: Vec<Rule> = rules
            .into_iter()
            .filter(|r| seen.insert(r.clone()))
            .collect();
        let declared: Vec<LinearAtom> = declared_externals.into_iter().collect();
        let body_atoms = rules
            .iter()
            .flat_map(Rule::body_atoms)
            .filter_map(TAtom::theory);
        let externals = complement_closure(body_atoms.chain(&declared));
        let program = TProgram {
            rules,
            externals,
            bounds,
        };
        program.check_names()?;
        Ok(program)
    }

    pub fn empty(bounds: Bounds) -> Self {
        TProgram {
            rules: Vec::new(),
            externals: BTreeSet::new(),
            bounds,
        }
    }

    fn check_names(&self) -> Result<(), ProgramError> {
        let regular = self.regular_atoms();
        let theory = self.theory_vars();
        for v in regular.iter().chain(&theory) {
            if v.as_str().starts_with("__") {
                return Err(ProgramError::ReservedIdentifier(v.to_string()));
            }
        }
        if let Some(v) = regular.intersection(&theory).next() {
            return Err(ProgramError::NameClash(v.to_string()));
        }
        Ok(())
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn externals(&self) -> &BTreeSet<LinearAtom> {
        &self.externals
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    /// The same rules with additional external atoms.
    pub fn with_externals(
        &self,
        extra: impl IntoIterator<Item = LinearAtom>,
    ) -> Result<Self, ProgramError> {
        TProgram::new(
            self.rules.clone(),
            self.externals.iter().cloned().chain(extra),
            self.bounds,
        )
    }

    /// `P ∪ R`: the rules of both, externals of both.
    pub fn union(&self, other: &TProgram) -> Result<Self> {
        if self.bounds != other.bounds {
            return Err(Error::BoundsMismatch {
                left: self.bounds.to_string(),
                right: other.bounds.to_string(),
            });
        }
        Ok(TProgram::new(
            self.rules.iter().chain(&other.rules).cloned(),
            self.externals.iter().chain(&other.externals).cloned(),
            self.bounds,
        )?)
    }

    pub fn regular_atoms(&self) -> BTreeSet<Var> {
        self.rules
            .iter()
            .flat_map(Rule::atoms)
            .filter_map(|a| match a {
                TAtom::Reg(v) => Some(v.clone()),
                TAtom::Th(_) => None,
            })
            .collect()
    }

    /// Theory atoms occurring in rules.
    pub fn theory_atoms(&self) -> BTreeSet<LinearAtom> {
        self.rules
            .iter()
            .flat_map(Rule::atoms)
            .filter_map(TAtom::theory)
            .cloned()
            .collect()
    }

    pub fn head_theory_atoms(&self) -> BTreeSet<LinearAtom> {
        self.rules
            .iter()
            .filter_map(|r| r.head.as_ref().and_then(TAtom::theory))
            .cloned()
            .collect()
    }

    pub fn founded(&self) -> BTreeSet<LinearAtom> {
        self.head_theory_atoms()
            .into_iter()
            .filter(|s| !self.externals.contains(s))
            .collect()
    }

    /// Theory atoms of the rules together with the externals.
    pub fn theory_universe(&self) -> BTreeSet<LinearAtom> {
        let mut out = self.theory_atoms();
        out.extend(self.externals.iter().cloned());
        out
    }

    pub fn theory_vars(&self) -> BTreeSet<Var> {
        self.theory_universe()
            .iter()
            .flat_map(LinearAtom::vars)
            .collect()
    }

    pub fn external_vars(&self) -> BTreeSet<Var> {
        self.externals.iter().flat_map(LinearAtom::vars).collect()
    }

    fn prop_program(&self) -> PropProgram<TAtom> {
        let mut p = PropProgram::new();
        for r in &self.rules {
            p.add_rule(r.head.clone(), r.pos.clone(), r.neg.clone());
        }
        p
    }
}

/// `Comp_ℰ(S) = S ∪ comp(ℰ \ S)`.
pub fn comp_completion(
    s: &BTreeSet<LinearAtom>,
    externals: &BTreeSet<LinearAtom>,
) -> BTreeSet<LinearAtom> {
    let mut out = s.clone();
    out.extend(externals.difference(s).map(complement));
    out
}

/// Both `S` and its completion are satisfiable.
pub fn is_solution(
    s: &BTreeSet<LinearAtom>,
    externals: &BTreeSet<LinearAtom>,
    bounds: Bounds,
    limits: Limits,
) -> Result<bool> {
    Ok(linear::sat(s, bounds, limits.budget)?
        && linear::sat(&comp_completion(s, externals), bounds, limits.budget)?)
}

/// Stable models through solutions, with every solution examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def3Trace {
    pub models: Vec<BTreeSet<TAtom>>,
    pub solutions: Vec<BTreeSet<LinearAtom>>,
}

pub fn theory_stable_models_def3_traced(p: &TProgram, limits: Limits) -> Result<Def3Trace> {
    let universe: Vec<LinearAtom> = p.theory_universe().into_iter().collect();
    let required = if universe.len() >= 127 {
        u128::MAX
    } else {
        1u128 << universe.len()
    };
    limits.check("solution search", required)?;
    let heads = p.head_theory_atoms();
    let mut models = BTreeSet::new();
    let mut solutions = Vec::new();
    for mask in 0..1u64 << universe.len() {
        let s: BTreeSet<LinearAtom> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        if !is_solution(&s, p.externals(), p.bounds(), limits)? {
            continue;
        }
        let mut prog = p.prop_program();
        for a in s.intersection(p.externals()) {
            prog.add_rule([TAtom::Th(a.clone())], [], []);
        }
        for a in heads.difference(&s) {
            prog.add_rule([], [TAtom::Th(a.clone())], []);
        }
        models.extend(regular_stable_models(&prog, limits)?);
        solutions.push(s);
    }
    Ok(Def3Trace {
        models: models.into_iter().collect(),
        solutions,
    })
}

/// Theory stable models: regular stable models of the program extended by
/// the externals' instantiations for some solution.
pub fn theory_stable_models_def3(p: &TProgram, limits: Limits) -> Result<Vec<BTreeSet<TAtom>>> {
    Ok(theory_stable_models_def3_traced(p, limits)?.models)
}

/// Each complement pair of the externals once, smaller atom first.
pub fn external_pairs(externals: &BTreeSet<LinearAtom>) -> Vec<(LinearAtom, LinearAtom)> {
    externals
        .iter()
        .filter_map(|s| {
            let c = complement(s);
            (*s < c).then(|| (s.clone(), c))
        })
        .collect()
}

/// Theory stable models: stable models of the program with a choice
/// `s ∨ comp(s)` per external pair whose theory part is satisfiable.
pub fn theory_stable_models_def4(p: &TProgram, limits: Limits) -> Result<Vec<BTreeSet<TAtom>>> {
    let mut prog = p.prop_program();
    for (s, c) in external_pairs(p.externals()) {
        prog.add_rule([TAtom::Th(s), TAtom::Th(c)], [], []);
    }
    let mut out = Vec::new();
    for x in regular_stable_models(&prog, limits)? {
        if linear::sat(
            x.iter().filter_map(TAtom::theory),
            p.bounds(),
            limits.budget,
        )? {
            out.push(x);
        }
    }
    Ok(out)
}

/// A set of true regular atoms with a valuation of theory variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AnswerSet {
    pub regular: BTreeSet<Var>,
    pub valuation: Valuation,
}

impl AnswerSet {
    pub fn new(regular: impl IntoIterator<Item = Var>, valuation: Valuation) -> Self {
        AnswerSet {
            regular: regular.into_iter().collect(),
            valuation,
        }
    }

    /// The HTc valuation `v ∪ {a ↦ t | a ∈ Y}`.
    pub fn to_valuation(&self) -> Valuation {
        let mut v = self.valuation.clone();
        for a in &self.regular {
            v.bind(a.clone(), DomainValue::Truth);
        }
        v
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.regular.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")?;
        for (x, v) in self.valuation.iter() {
            write!(f, ", {x}={v}")?;
        }
        Ok(())
    }
}

/// Answer sets from a list of theory stable models.
pub fn answer_sets_of(
    stable: &[BTreeSet<TAtom>],
    bounds: Bounds,
    limits: Limits,
) -> Result<Vec<AnswerSet>> {
    let mut out = BTreeSet::new();
    for x in stable {
        let regular: BTreeSet<Var> = x
            .iter()
            .filter_map(|a| match a {
                TAtom::Reg(v) => Some(v.clone()),
                TAtom::Th(_) => None,
            })
            .collect();
        let theory: Vec<&LinearAtom> = x.iter().filter_map(TAtom::theory).collect();
        for w in linear::denotation(theory, bounds, limits.budget)? {
            out.insert(AnswerSet {
                regular: regular.clone(),
                valuation: w,
            });
        }
    }
    Ok(out.into_iter().collect())
}

pub fn answer_sets(p: &TProgram, limits: Limits) -> Result<Vec<AnswerSet>> {
    answer_sets_of(&theory_stable_models_def4(p, limits)?, p.bounds(), limits)
}

/// `v ∈̂ ⟦s⟧`: some total assignment within bounds that agrees with `v` on
/// the variables `v` defines satisfies `s`.
pub fn extends_into(s: &LinearAtom, v: &Valuation, bounds: Bounds, limits: Limits) -> Result<bool> {
    let mut fixed = Valuation::new();
    let mut free = Vec::new();
    for x in s.vars() {
        match v.get(&x) {
            Some(DomainValue::Int(i)) if bounds.contains(i) => {
                fixed.bind(x, DomainValue::Int(i));
            }
            Some(_) => return Ok(false),
            None => free.push(x),
        }
    }
    let found = linear::for_each_assignment(&free, bounds, limits.budget, "literal check", |w| {
        if linear::eval_linear(s, &fixed.merged(w))? {
            Ok(ControlFlow::Break(()))
        } else {
            Ok(ControlFlow::Continue(()))
        }
    })?;
    Ok(found.is_some())
}

pub fn satisfies_literal(
    a: &AnswerSet,
    literal: &Literal,
    bounds: Bounds,
    limits: Limits,
) -> Result<bool> {
    let holds = |atom: &TAtom| -> Result<bool> {
        match atom {
            TAtom::Reg(v) => Ok(a.regular.contains(v)),
            TAtom::Th(s) => extends_into(s, &a.valuation, bounds, limits),
        }
    };
    match literal {
        Literal::Pos(b) => holds(b),
        Literal::Neg(b) => Ok(!holds(b)?),
    }
}

/// The theory stable model an answer set stems from.
pub fn stable_of_answer(p: &TProgram, a: &AnswerSet, limits: Limits) -> Result<BTreeSet<TAtom>> {
    let mut out: BTreeSet<TAtom> = a.regular.iter().cloned().map(TAtom::Reg).collect();
    for s in p.externals() {
        if extends_into(s, &a.valuation, p.bounds(), limits)? {
            out.insert(TAtom::Th(s.clone()));
        }
    }
    let founded = p.founded();
    for r in p.rules() {
        let Some(TAtom::Th(s)) = &r.head else {
            continue;
        };
        if !founded.contains(s) || out.contains(&TAtom::Th(s.clone())) {
            continue;
        }
        let mut body = true;
        for l in r.body() {
            if !satisfies_literal(a, &l, p.bounds(), limits)? {
                body = false;
                break;
            }
        }
        if body {
            out.insert(TAtom::Th(s.clone()));
        }
    }
    Ok(out)
}
