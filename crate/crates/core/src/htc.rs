//! Here-and-There with constraints: valuations, interpretations, constraint
//! atoms, formulas and the satisfaction relation.
//!
//! The undefined value is never stored. A variable that is absent from a
//! [`Valuation`] is undefined, so `v ⊆ w` is plain inclusion of the binding
//! sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::{self, Bounds, LinearAtom};

/// A variable name. Regular atoms double as variables of the same name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var(Arc::from(s))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// A defined domain value: the truth value of regular atoms or an integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DomainValue {
    Int(i64),
    Truth,
}

impl fmt::Display for DomainValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainValue::Int(i) => write!(f, "{i}"),
            DomainValue::Truth => f.write_str("t"),
        }
    }
}

/// A partial map from variables to defined values.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(BTreeMap<Var, DomainValue>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &Var) -> Option<DomainValue> {
        self.0.get(var).copied()
    }

    pub fn bind(&mut self, var: Var, value: DomainValue) -> &mut Self {
        self.0.insert(var, value);
        self
    }

    pub fn with(mut self, var: impl Into<Var>, value: DomainValue) -> Self {
        self.0.insert(var.into(), value);
        self
    }

    pub fn unbind(&mut self, var: &Var) -> Option<DomainValue> {
        self.0.remove(var)
    }

    pub fn is_defined(&self, var: &Var) -> bool {
        self.0.contains_key(var)
    }

    /// The variables with a defined value.
    pub fn dom(&self) -> impl Iterator<Item = &Var> + '_ {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, DomainValue)> + '_ {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Valuation) -> bool {
        valuation_subset(self, other)
    }

    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a Var>) -> Valuation {
        let mut out = Valuation::new();
        for var in vars {
            if let Some(value) = self.get(var) {
                out.bind(var.clone(), value);
            }
        }
        out
    }

    /// Union of two valuations; bindings of `other` win on conflicts.
    pub fn merged(&self, other: &Valuation) -> Valuation {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.bind(k.clone(), v);
        }
        out
    }
}

impl FromIterator<(Var, DomainValue)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (Var, DomainValue)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `v ⊆ w`: every binding of `v` appears identically in `w`.
pub fn valuation_subset(v: &Valuation, w: &Valuation) -> bool {
    v.0.len() <= w.0.len() && v.iter().all(|(k, val)| w.get(k) == Some(val))
}

/// Projection of `v` onto `vars`.
pub fn restrict(v: &Valuation, vars: &BTreeSet<Var>) -> Valuation {
    v.restrict(vars)
}

/// A pair ⟨h,t⟩ of valuations with `h ⊆ t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Interpretation {
    here: Valuation,
    there: Valuation,
}

impl Interpretation {
    pub fn new(here: Valuation, there: Valuation) -> Result<Self> {
        if !here.is_subset(&there) {
            return Err(Error::NotAnInterpretation);
        }
        Ok(Interpretation { here, there })
    }

    pub fn total(t: Valuation) -> Self {
        Interpretation {
            here: t.clone(),
            there: t,
        }
    }

    pub fn here(&self) -> &Valuation {
        &self.here
    }

    pub fn there(&self) -> &Valuation {
        &self.there
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<h={}, t={}>", self.here, self.there)
    }
}

/// The sort of a variable: regular atoms range over `{t}`, integer
/// variables over the configured interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sort {
    Boolean,
    Integer,
}

/// A subdomain `D' ⊆ D` naming a `Dom` atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Subdomain {
    Truth,
    Range { lo: i64, hi: i64 },
    Values(BTreeSet<DomainValue>),
}

impl Subdomain {
    pub fn contains(&self, value: DomainValue) -> bool {
        match (self, value) {
            (Subdomain::Truth, DomainValue::Truth) => true,
            (Subdomain::Range { lo, hi }, DomainValue::Int(i)) => *lo <= i && i <= *hi,
            (Subdomain::Values(set), v) => set.contains(&v),
            _ => false,
        }
    }

    pub fn of_bounds(bounds: Bounds) -> Self {
        Subdomain::Range {
            lo: bounds.lo(),
            hi: bounds.hi(),
        }
    }
}

impl fmt::Display for Subdomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subdomain::Truth => f.write_str("t"),
            Subdomain::Range { lo, hi } => write!(f, "{lo}..{hi}"),
            Subdomain::Values(set) => {
                for (i, v) in set.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Constraint atoms. Identity is syntactic: two linear atoms with the same
/// truth conditions but different spellings are different atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ConstraintAtom {
    /// A regular atom; holds iff its homonymous variable has value `t`.
    Regular(Var),
    Linear(LinearAtom),
    /// Holds iff the variable has some value in the subdomain.
    Dom(Var, Subdomain),
    /// Holds iff the variable is defined; the `Dom` atom over the full domain.
    Def(Var),
}

impl ConstraintAtom {
    pub fn regular(name: impl Into<Var>) -> Self {
        ConstraintAtom::Regular(name.into())
    }

    pub fn def(name: impl Into<Var>) -> Self {
        ConstraintAtom::Def(name.into())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            ConstraintAtom::Regular(v) | ConstraintAtom::Dom(v, _) | ConstraintAtom::Def(v) => {
                BTreeSet::from([v.clone()])
            }
            ConstraintAtom::Linear(l) => l.vars(),
        }
    }
}

impl fmt::Display for ConstraintAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintAtom::Regular(v) => write!(f, "{v}"),
            ConstraintAtom::Linear(l) => write!(f, "{l}"),
            ConstraintAtom::Dom(v, d) => write!(f, "dom{{{d}}}({v})"),
            ConstraintAtom::Def(v) => write!(f, "def({v})"),
        }
    }
}

/// Propositional formulas over constraint atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Bot,
    Atom(ConstraintAtom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(c: ConstraintAtom) -> Self {
        Formula::Atom(c)
    }

    /// `⊥ → ⊥`
    pub fn top() -> Self {
        Formula::implies(Formula::Bot, Formula::Bot)
    }

    /// `φ → ⊥`
    pub fn negation(phi: Formula) -> Self {
        Formula::implies(phi, Formula::Bot)
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(a, b) if **a == Formula::Bot && **b == Formula::Bot)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |c| out.extend(c.vars()));
        out
    }

    pub fn atoms(&self) -> BTreeSet<ConstraintAtom> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |c| {
            out.insert(c.clone());
        });
        out
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(&ConstraintAtom)) {
        match self {
            Formula::Bot => {}
            Formula::Atom(c) => f(c),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(_, b) if **b == Formula::Bot => 4,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Bot | Formula::Atom(_) => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = if self.is_top() { 5 } else { self.precedence() };
        if prec < min {
            f.write_str("(")?;
        }
        match self {
            _ if self.is_top() => f.write_str("top")?,
            Formula::Bot => f.write_str("bot")?,
            Formula::Atom(c) => write!(f, "{c}")?,
            Formula::Implies(a, b) if **b == Formula::Bot => {
                f.write_str("not ")?;
                a.fmt_at(f, 4)?;
            }
            Formula::And(a, b) => {
                a.fmt_at(f, 3)?;
                f.write_str(" & ")?;
                b.fmt_at(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str(" | ")?;
                b.fmt_at(f, 3)?;
            }
            Formula::Implies(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str(" -> ")?;
                b.fmt_at(f, 1)?;
            }
        }
        if prec < min {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// `φ[c/ψ]`: replace every occurrence of atom `c` in `φ` by `ψ`.
pub fn substitute(phi: &Formula, c: &ConstraintAtom, psi: &Formula) -> Formula {
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Atom(a) if a == c => psi.clone(),
        Formula::Atom(a) => Formula::Atom(a.clone()),
        Formula::And(a, b) => Formula::and(substitute(a, c, psi), substitute(b, c, psi)),
        Formula::Or(a, b) => Formula::or(substitute(a, c, psi), substitute(b, c, psi)),
        Formula::Implies(a, b) => Formula::implies(substitute(a, c, psi), substitute(b, c, psi)),
    }
}

/// A set of formulas, iterated in canonical (structural) order.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Theory(BTreeSet<Formula>);

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, phi: Formula) -> bool {
        self.0.insert(phi)
    }

    pub fn contains(&self, phi: &Formula) -> bool {
        self.0.contains(phi)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Theory) -> Theory {
        Theory(self.0.union(&other.0).cloned().collect())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(Formula::vars).collect()
    }

    pub fn atoms(&self) -> BTreeSet<ConstraintAtom> {
        self.0.iter().flat_map(Formula::atoms).collect()
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Theory(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Theory {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Variables with their sorts, the constraint atoms in use, and the integer
/// interval every semantic notion is relativized to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    vars: BTreeMap<Var, Sort>,
    atoms: BTreeSet<ConstraintAtom>,
    bounds: Bounds,
}

impl Signature {
    pub fn new(bounds: Bounds) -> Self {
        Signature {
            vars: BTreeMap::new(),
            atoms: BTreeSet::new(),
            bounds,
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn add_var(&mut self, var: Var, sort: Sort) -> Result<()> {
        match self.vars.get(&var) {
            Some(existing) if *existing != sort => Err(Error::SortConflict(var)),
            Some(_) => Ok(()),
            None => {
                self.vars.insert(var, sort);
                Ok(())
            }
        }
    }

    pub fn add_atom(&mut self, atom: ConstraintAtom) {
        self.atoms.insert(atom);
    }

    pub fn sort(&self, var: &Var) -> Option<Sort> {
        self.vars.get(var).copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&Var, Sort)> + '_ {
        self.vars.iter().map(|(k, s)| (k, *s))
    }

    pub fn atoms(&self) -> &BTreeSet<ConstraintAtom> {
        &self.atoms
    }

    /// The subdomain a variable ranges over.
    pub fn subdomain(&self, var: &Var) -> Option<Subdomain> {
        self.sort(var).map(|s| match s {
            Sort::Boolean => Subdomain::Truth,
            Sort::Integer => Subdomain::of_bounds(self.bounds),
        })
    }

    /// Union of two signatures over the same bounds.
    pub fn merge(&self, other: &Signature) -> Result<Signature> {
        if self.bounds != other.bounds {
            return Err(Error::BoundsMismatch {
                left: self.bounds.to_string(),
                right: other.bounds.to_string(),
            });
        }
        let mut out = self.clone();
        for (v, s) in other.vars() {
            out.add_var(v.clone(), s)?;
        }
        out.atoms.extend(other.atoms.iter().cloned());
        Ok(out)
    }

    fn check_known(&self, atom: &ConstraintAtom) -> Result<()> {
        for v in atom.vars() {
            if !self.vars.contains_key(&v) {
                return Err(Error::UnknownVariable(v));
            }
        }
        Ok(())
    }
}

/// Membership of `v` in the denotation of `atom`.
pub fn den_member(atom: &ConstraintAtom, v: &Valuation, sig: &Signature) -> Result<bool> {
    sig.check_known(atom)?;
    Ok(match atom {
        ConstraintAtom::Regular(a) => v.get(a) == Some(DomainValue::Truth),
        ConstraintAtom::Dom(x, sub) => v.get(x).is_some_and(|d| sub.contains(d)),
        ConstraintAtom::Def(x) => v.is_defined(x),
        ConstraintAtom::Linear(l) => linear::den_member_linear(l, v, sig.bounds())?,
    })
}

/// `⟨h,t⟩ ⊨ φ`.
pub fn satisfies(i: &Interpretation, phi: &Formula, sig: &Signature) -> Result<bool> {
    sat_at(i.here(), i.there(), phi, sig)
}

fn sat_at(h: &Valuation, t: &Valuation, phi: &Formula, sig: &Signature) -> Result<bool> {
    Ok(match phi {
        Formula::Bot => false,
        Formula::Atom(c) => den_member(c, h, sig)?,
        Formula::And(a, b) => sat_at(h, t, a, sig)? && sat_at(h, t, b, sig)?,
        Formula::Or(a, b) => sat_at(h, t, a, sig)? || sat_at(h, t, b, sig)?,
        Formula::Implies(a, b) => {
            for w in [h, t] {
                if sat_at(w, t, a, sig)? && !sat_at(w, t, b, sig)? {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// `⟨h,t⟩ ⊨ Γ`.
pub fn is_model(i: &Interpretation, theory: &Theory, sig: &Signature) -> Result<bool> {
    for phi in theory {
        if !satisfies(i, phi, sig)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Comparator;

    fn sig() -> Signature {
        let mut s = Signature::new(Bounds::new(0, 200).unwrap());
        s.add_var("a".into(), Sort::Boolean).unwrap();
        s.add_var("s".into(), Sort::Integer).unwrap();
        s.add_var("x".into(), Sort::Integer).unwrap();
        s
    }

    fn val(pairs: &[(&str, DomainValue)]) -> Valuation {
        pairs.iter().map(|(k, v)| (Var::new(k), *v)).collect()
    }

    fn lin(var: &str, cmp: Comparator, bound: i64) -> ConstraintAtom {
        ConstraintAtom::Linear(LinearAtom::single(var, cmp, bound))
    }

    use DomainValue::{Int, Truth};

    #[test]
    fn subset_order() {
        assert!(valuation_subset(&val(&[]), &val(&[("a", Truth)])));
        assert!(valuation_subset(
            &val(&[("a", Truth)]),
            &val(&[("a", Truth)])
        ));
        assert!(!valuation_subset(
            &val(&[("s", Int(1))]),
            &val(&[("s", Int(2))])
        ));
        assert!(!valuation_subset(&val(&[("a", Truth)]), &val(&[])));
    }

    #[test]
    fn projection() {
        let v = val(&[("a", Truth), ("s", Int(130))]);
        let s: BTreeSet<Var> = ["s".into()].into();
        assert_eq!(restrict(&v, &s), val(&[("s", Int(130))]));
        assert_eq!(restrict(&v, &BTreeSet::new()), val(&[]));
        assert_eq!(restrict(&val(&[]), &s), val(&[]));
    }

    #[test]
    fn interpretation_rejects_non_subset() {
        let err = Interpretation::new(val(&[("a", Truth)]), val(&[])).unwrap_err();
        assert_eq!(err, Error::NotAnInterpretation);
        assert!(Interpretation::total(val(&[("a", Truth)])).is_total());
        assert!(!Interpretation::new(val(&[]), val(&[("a", Truth)]))
            .unwrap()
            .is_total());
    }

    #[test]
    fn denotations() {
        let s = sig();
        let dom = ConstraintAtom::Dom("x".into(), Subdomain::Range { lo: 0, hi: 5 });
        assert!(den_member(&dom, &val(&[("x", Int(3))]), &s).unwrap());
        assert!(!den_member(&dom, &val(&[("x", Int(6))]), &s).unwrap());
        assert!(!den_member(&ConstraintAtom::def("x"), &val(&[]), &s).unwrap());
        assert!(den_member(
            &ConstraintAtom::regular("a"),
            &val(&[("a", Truth), ("s", Int(7))]),
            &s
        )
        .unwrap());
        assert!(!den_member(&ConstraintAtom::regular("a"), &val(&[("a", Int(7))]), &s).unwrap());
        assert_eq!(
            den_member(&ConstraintAtom::def("zz"), &val(&[]), &s).unwrap_err(),
            Error::UnknownVariable("zz".into())
        );
    }

    #[test]
    fn satisfaction_examples() {
        let s = sig();
        let t130 = Interpretation::total(val(&[("s", Int(130))]));
        assert!(satisfies(&t130, &Formula::atom(lin("s", Comparator::Gt, 100)), &s).unwrap());

        let half = Interpretation::new(val(&[]), val(&[("a", Truth)])).unwrap();
        let a = Formula::atom(ConstraintAtom::regular("a"));
        assert!(!satisfies(&half, &Formula::negation(a.clone()), &s).unwrap());
        assert!(!satisfies(&half, &a, &s).unwrap());
        assert!(satisfies(&half, &Formula::top(), &s).unwrap());
        assert!(!satisfies(&half, &Formula::Bot, &s).unwrap());
        // ¬¬a holds at ⟨∅,{a}⟩ although a does not
        assert!(satisfies(&half, &Formula::negation(Formula::negation(a)), &s).unwrap());
    }

    #[test]
    fn models_of_theories() {
        let s = sig();
        let a = Formula::atom(ConstraintAtom::regular("a"));
        let empty = Interpretation::total(val(&[]));
        assert!(is_model(&empty, &Theory::new(), &s).unwrap());
        let th: Theory = [a].into_iter().collect();
        assert!(is_model(&Interpretation::total(val(&[("a", Truth)])), &th, &s).unwrap());
        let half = Interpretation::new(val(&[]), val(&[("a", Truth)])).unwrap();
        assert!(!is_model(&half, &th, &s).unwrap());
    }

    #[test]
    fn substitution() {
        let c = ConstraintAtom::regular("c");
        let psi = Formula::atom(lin("s", Comparator::Ge, 1));
        let phi = Formula::implies(Formula::atom(c.clone()), Formula::atom(c.clone()));
        assert_eq!(
            substitute(&phi, &c, &psi),
            Formula::implies(psi.clone(), psi.clone())
        );
        assert_eq!(substitute(&Formula::Bot, &c, &psi), Formula::Bot);
        let other = Formula::atom(ConstraintAtom::regular("d"));
        assert_eq!(substitute(&other, &c, &psi), other);
    }

    #[test]
    fn rendering() {
        let a = Formula::atom(ConstraintAtom::regular("a"));
        let s = Formula::atom(lin("s", Comparator::Ge, 120));
        let rule = Formula::implies(
            Formula::and(s.clone(), Formula::negation(a.clone())),
            Formula::Bot,
        );
        assert_eq!(rule.to_string(), "not (&sum{s}>=120 & not a)");
        let imp = Formula::implies(Formula::top(), s.clone());
        assert_eq!(imp.to_string(), "top -> &sum{s}>=120");
        let nested = Formula::implies(Formula::implies(a.clone(), s.clone()), a.clone());
        assert_eq!(nested.to_string(), "(a -> &sum{s}>=120) -> a");
        assert_eq!(
            Formula::or(a.clone(), Formula::and(a, s)).to_string(),
            "a | a & &sum{s}>=120"
        );
    }
}
