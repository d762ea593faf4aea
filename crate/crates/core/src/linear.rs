//! The linear-equation theory: atoms `&sum{k1*x1;...;kn*xn} ≺ k0`, their
//! complements, bounded denotations and satisfiability by enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, ProgramError, Result};
use crate::htc::{DomainValue, Valuation, Var};

/// A finite integer interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bounds {
    lo: i64,
    hi: i64,
}

impl Bounds {
    pub const DEFAULT: Bounds = Bounds { lo: 0, hi: 200 };

    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidBounds { lo, hi });
        }
        Ok(Bounds { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Number of integers in the interval.
    pub fn width(&self) -> u128 {
        (self.hi as i128 - self.lo as i128 + 1) as u128
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn values(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::DEFAULT
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Comparator {
    Le,
    Eq,
    Ne,
    Lt,
    Gt,
    Ge,
}

impl Comparator {
    pub const ALL: [Comparator; 6] = [
        Comparator::Le,
        Comparator::Eq,
        Comparator::Ne,
        Comparator::Lt,
        Comparator::Gt,
        Comparator::Ge,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Eq => "=",
            Comparator::Ne => "!=",
            Comparator::Lt => "<",
            Comparator::Gt => ">",
            Comparator::Ge => ">=",
        }
    }

    pub fn complement(self) -> Self {
        match self {
            Comparator::Le => Comparator::Gt,
            Comparator::Eq => Comparator::Ne,
            Comparator::Ne => Comparator::Eq,
            Comparator::Lt => Comparator::Ge,
            Comparator::Gt => Comparator::Le,
            Comparator::Ge => Comparator::Lt,
        }
    }

    pub fn holds(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Comparator::Le => lhs <= rhs,
            Comparator::Eq => lhs == rhs,
            Comparator::Ne => lhs != rhs,
            Comparator::Lt => lhs < rhs,
            Comparator::Gt => lhs > rhs,
            Comparator::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A linear constraint. Terms are kept exactly as written.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearAtom {
    terms: Vec<(i64, Var)>,
    cmp: Comparator,
    bound: i64,
}

impl LinearAtom {
    pub fn new(terms: Vec<(i64, Var)>, cmp: Comparator, bound: i64) -> Result<Self, ProgramError> {
        if terms.is_empty() {
            return Err(ProgramError::EmptyAtom);
        }
        Ok(LinearAtom { terms, cmp, bound })
    }

    /// `&sum{var} cmp bound`
    pub fn single(var: impl Into<Var>, cmp: Comparator, bound: i64) -> Self {
        LinearAtom {
            terms: vec![(1, var.into())],
            cmp,
            bound,
        }
    }

    pub fn terms(&self) -> &[(i64, Var)] {
        &self.terms
    }

    pub fn comparator(&self) -> Comparator {
        self.cmp
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn complement(&self) -> LinearAtom {
        complement(self)
    }
}

impl fmt::Display for LinearAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("&sum{")?;
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            if *k == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{k}*{v}")?;
            }
        }
        write!(f, "}}{}{}", self.cmp, self.bound)
    }
}

pub fn complement(s: &LinearAtom) -> LinearAtom {
    LinearAtom {
        terms: s.terms.clone(),
        cmp: s.cmp.complement(),
        bound: s.bound,
    }
}

/// Evaluates `s` under `w`, which must bind every variable of `s` to an
/// integer.
pub fn eval_linear(s: &LinearAtom, w: &Valuation) -> Result<bool> {
    let overflow = || Error::Overflow(s.to_string());
    let mut sum: i128 = 0;
    for (k, x) in &s.terms {
        let value = match w.get(x) {
            Some(DomainValue::Int(i)) => i,
            _ => {
                return Err(Error::Precondition(format!(
                    "`{x}` has no integer value while evaluating `{s}`"
                )))
            }
        };
        let term = (*k as i128)
            .checked_mul(value as i128)
            .ok_or_else(overflow)?;
        sum = sum.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(s.cmp.holds(sum, s.bound as i128))
}

/// Membership in the denotation: every variable of `s` holds an integer
/// within `bounds` and the constraint is true; other variables are ignored.
pub fn den_member_linear(s: &LinearAtom, v: &Valuation, bounds: Bounds) -> Result<bool> {
    for (_, x) in &s.terms {
        match v.get(x) {
            Some(DomainValue::Int(i)) if bounds.contains(i) => {}
            _ => return Ok(false),
        }
    }
    eval_linear(s, v)
}

/// Visits every total assignment of `vars` into `bounds`, first variable
/// most significant, values ascending. Fails up front if the number of
/// assignments exceeds `budget`.
pub fn for_each_assignment<B>(
    vars: &[Var],
    bounds: Bounds,
    budget: u64,
    what: &'static str,
    mut f: impl FnMut(&Valuation) -> Result<ControlFlow<B>>,
) -> Result<Option<B>> {
    let width = bounds.width();
    let mut required: u128 = 1;
    for _ in vars {
        required = required.saturating_mul(width);
    }
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            what,
            required,
            budget,
        });
    }
    let mut current: Vec<i64> = vec![bounds.lo(); vars.len()];
    let mut w: Valuation = vars
        .iter()
        .map(|x| (x.clone(), DomainValue::Int(bounds.lo())))
        .collect();
    loop {
        if let ControlFlow::Break(b) = f(&w)? {
            return Ok(Some(b));
        }
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if current[pos] < bounds.hi() {
                current[pos] += 1;
                w.bind(vars[pos].clone(), DomainValue::Int(current[pos]));
                break;
            }
            current[pos] = bounds.lo();
            w.bind(vars[pos].clone(), DomainValue::Int(bounds.lo()));
        }
    }
}

/// Variables of a set of atoms, sorted.
pub fn vars_of<'a>(atoms: impl IntoIterator<Item = &'a LinearAtom>) -> Vec<Var> {
    let set: BTreeSet<Var> = atoms.into_iter().flat_map(LinearAtom::vars).collect();
    set.into_iter().collect()
}

/// Whether some total assignment of the atoms' variables into `bounds`
/// satisfies all of them.
pub fn sat<'a>(
    atoms: impl IntoIterator<Item = &'a LinearAtom>,
    bounds: Bounds,
    budget: u64,
) -> Result<bool> {
    let atoms: Vec<&LinearAtom> = atoms.into_iter().collect();
    let vars = vars_of(atoms.iter().copied());
    let found = for_each_assignment(&vars, bounds, budget, "theory satisfiability", |w| {
        for s in &atoms {
            if !eval_linear(s, w)? {
                return Ok(ControlFlow::Continue(()));
            }
        }
        Ok(ControlFlow::Break(()))
    })?;
    Ok(found.is_some())
}

/// All total assignments over the atoms' variables satisfying every atom,
/// in enumeration order.
pub fn denotation<'a>(
    atoms: impl IntoIterator<Item = &'a LinearAtom>,
    bounds: Bounds,
    budget: u64,
) -> Result<Vec<Valuation>> {
    let atoms: Vec<&LinearAtom> = atoms.into_iter().collect();
    let vars = vars_of(atoms.iter().copied());
    let mut out = Vec::new();
    for_each_assignment::<()>(&vars, bounds, budget, "theory denotation", |w| {
        for s in &atoms {
            if !eval_linear(s, w)? {
                return Ok(ControlFlow::Continue(()));
            }
        }
        out.push(w.clone());
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

/// The contract a structured theory offers to the program semantics.
pub trait AbstractTheory {
    type Atom: Clone + Ord;

    fn complement(&self, atom: &Self::Atom) -> Self::Atom;
    fn sat(&self, atoms: &[Self::Atom]) -> Result<bool>;
    fn vars(&self, atom: &Self::Atom) -> BTreeSet<Var>;
    /// Membership of a total assignment over at least `vars(atom)`.
    fn den_member_total(&self, atom: &Self::Atom, w: &Valuation) -> Result<bool>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearTheory {
    pub bounds: Bounds,
    pub budget: u64,
}

impl LinearTheory {
    pub fn new(bounds: Bounds, budget: u64) -> Self {
        LinearTheory { bounds, budget }
    }
}

impl AbstractTheory for LinearTheory {
    type Atom = LinearAtom;

    fn complement(&self, atom: &LinearAtom) -> LinearAtom {
        complement(atom)
    }

    fn sat(&self, atoms: &[LinearAtom]) -> Result<bool> {
        sat(atoms, self.bounds, self.budget)
    }

    fn vars(&self, atom: &LinearAtom) -> BTreeSet<Var> {
        atom.vars()
    }

    fn den_member_total(&self, atom: &LinearAtom, w: &Valuation) -> Result<bool> {
        den_member_linear(atom, w, self.bounds)
    }
}
