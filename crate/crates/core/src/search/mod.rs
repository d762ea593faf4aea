//! Exhaustive model enumeration over bounded valuation spaces.
//!
//! The t-valuations of a space are numbered in a mixed radix: variables are
//! sorted by name, the first one is the most significant digit, and each
//! digit runs through the defined values in ascending order followed by the
//! undefined value. Here-worlds are enumerated per t by unbinding subsets of
//! its bindings. Work is split into contiguous t-ranges and merged in range
//! order, so results never depend on the number of workers.

mod compiled;
mod regular;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::htc::{DomainValue, Interpretation, Signature, Sort, Theory, Valuation, Var};
use crate::linear::Bounds;

use compiled::{defined_positions, here_from_mask, Compiled, Evaluator, Slots};

pub use regular::{regular_stable_models, PropProgram, PropRule};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Resource limits for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of interpretations (or candidates) a search may visit.
    pub budget: u64,
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

impl Limits {
    pub fn with_budget(budget: u64) -> Self {
        Limits {
            budget,
            ..Limits::default()
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub(crate) fn check(&self, what: &'static str, required: u128) -> Result<()> {
        if required > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                what,
                required,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// The variables of a search with their value menus: regular variables
/// range over `{t, u}`, integer variables over `[lo, hi] ∪ {u}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationSpace {
    vars: Vec<(Var, Sort)>,
    bounds: Bounds,
}

impl ValuationSpace {
    pub fn new(vars: impl IntoIterator<Item = (Var, Sort)>, bounds: Bounds) -> Self {
        let mut vars: Vec<(Var, Sort)> = vars.into_iter().collect();
        vars.sort();
        vars.dedup_by(|a, b| a.0 == b.0);
        ValuationSpace { vars, bounds }
    }

    pub fn of_signature(sig: &Signature) -> Self {
        ValuationSpace::new(sig.vars().map(|(v, s)| (v.clone(), s)), sig.bounds())
    }

    /// The subspace over the given variables only.
    pub fn restrict(&self, keep: &BTreeSet<Var>) -> Self {
        ValuationSpace {
            vars: self
                .vars
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .cloned()
                .collect(),
            bounds: self.bounds,
        }
    }

    pub fn vars(&self) -> &[(Var, Sort)] {
        &self.vars
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new(self.bounds);
        for (v, s) in &self.vars {
            sig.add_var(v.clone(), *s)
                .expect("space variables are unique");
        }
        sig
    }

    fn defined_count(&self, sort: Sort) -> u128 {
        match sort {
            Sort::Boolean => 1,
            Sort::Integer => self.bounds.width(),
        }
    }

    /// Number of t-valuations: the product of menu sizes.
    pub fn t_count(&self) -> u128 {
        self.vars.iter().fold(1u128, |acc, (_, s)| {
            acc.saturating_mul(self.defined_count(*s) + 1)
        })
    }

    /// Number of interpretations ⟨h,t⟩ with `h ⊆ t`.
    pub fn interpretation_count(&self) -> u128 {
        self.vars.iter().fold(1u128, |acc, (_, s)| {
            acc.saturating_mul(2 * self.defined_count(*s) + 1)
        })
    }

    fn digit_value(&self, var: usize, digit: u128) -> Option<DomainValue> {
        let (_, sort) = &self.vars[var];
        if digit >= self.defined_count(*sort) {
            return None;
        }
        Some(match sort {
            Sort::Boolean => DomainValue::Truth,
            Sort::Integer => DomainValue::Int(self.bounds.lo() + digit as i64),
        })
    }

    fn slots_of(&self, digits: &[u128]) -> Slots {
        digits
            .iter()
            .enumerate()
            .map(|(i, d)| self.digit_value(i, *d))
            .collect()
    }

    fn valuation_of(&self, slots: &Slots) -> Valuation {
        self.vars
            .iter()
            .zip(slots)
            .filter_map(|((v, _), s)| s.map(|d| (v.clone(), d)))
            .collect()
    }

    fn digits_at(&self, mut idx: u128) -> Vec<u128> {
        let mut digits = vec![0; self.vars.len()];
        for i in (0..self.vars.len()).rev() {
            let radix = self.defined_count(self.vars[i].1) + 1;
            digits[i] = idx % radix;
            idx /= radix;
        }
        digits
    }

    /// The t-valuation with the given canonical index.
    pub fn valuation_at(&self, idx: u128) -> Valuation {
        self.valuation_of(&self.slots_of(&self.digits_at(idx)))
    }

    /// Every t-valuation in canonical order. Unbounded; see
    /// [`enumerate_t_valuations`] for the budgeted entry point.
    pub fn iter(&self) -> impl Iterator<Item = Valuation> + '_ {
        let mut cursor = Cursor::new(self, 0);
        let total = self.t_count();
        (0..total).map(move |i| {
            if i > 0 {
                cursor.advance();
            }
            self.valuation_of(&cursor.slots)
        })
    }
}

struct Cursor<'s> {
    space: &'s ValuationSpace,
    digits: Vec<u128>,
    slots: Slots,
}

impl<'s> Cursor<'s> {
    fn new(space: &'s ValuationSpace, idx: u128) -> Self {
        let digits = space.digits_at(idx);
        let slots = space.slots_of(&digits);
        Cursor {
            space,
            digits,
            slots,
        }
    }

    fn advance(&mut self) {
        for i in (0..self.digits.len()).rev() {
            let radix = self.space.defined_count(self.space.vars[i].1) + 1;
            self.digits[i] += 1;
            if self.digits[i] < radix {
                self.slots[i] = self.space.digit_value(i, self.digits[i]);
                return;
            }
            self.digits[i] = 0;
            self.slots[i] = self.space.digit_value(i, 0);
        }
    }
}

pub fn enumerate_t_valuations(
    space: &ValuationSpace,
    limits: Limits,
) -> Result<impl Iterator<Item = Valuation> + '_> {
    limits.check("valuation enumeration", space.t_count())?;
    Ok(space.iter())
}

/// Runs `f` over contiguous chunks of `0..total` and returns the chunk
/// results in chunk order. The first error in chunk order wins.
fn run_chunks<R: Send>(
    total: u128,
    workers: usize,
    f: impl Fn(u128, u128) -> Result<R> + Sync,
) -> Result<Vec<R>> {
    let workers = (workers.max(1) as u128).min(total.max(1));
    if workers == 1 {
        return Ok(vec![f(0, total)?]);
    }
    let chunk = total.div_ceil(workers);
    let ranges: Vec<(u128, u128)> = (0..workers)
        .map(|w| (w * chunk, ((w + 1) * chunk).min(total)))
        .collect();
    let results: Vec<Result<R>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(a, b)| {
                let f = &f;
                scope.spawn(move || f(a, b))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

fn space_vars(space: &ValuationSpace) -> Vec<Var> {
    space.vars.iter().map(|(v, _)| v.clone()).collect()
}

/// Visits each t in `from..to` for which ⟨t,t⟩ satisfies at least one of
/// the compiled theories, with the evaluator set to that t.
fn scan<R>(
    space: &ValuationSpace,
    compiled: &Compiled,
    from: u128,
    to: u128,
    mut visit: impl FnMut(&mut Evaluator<'_>, &Slots) -> Result<Option<R>>,
    theories: usize,
) -> Result<Option<R>> {
    if from >= to {
        return Ok(None);
    }
    let mut eval = Evaluator::new(compiled);
    let mut cursor = Cursor::new(space, from);
    for i in from..to {
        if i > from {
            cursor.advance();
        }
        eval.set_there(&cursor.slots)?;
        if (0..theories).any(|k| eval.there_models(k)) {
            if let Some(r) = visit(&mut eval, &cursor.slots)? {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// All HTc models of `theory` in the space, in canonical order.
pub fn models(
    theory: &Theory,
    space: &ValuationSpace,
    limits: Limits,
) -> Result<Vec<Interpretation>> {
    limits.check("model enumeration", space.interpretation_count())?;
    let compiled = Compiled::new(&space_vars(space), space.bounds, &[theory])?;
    let chunks = run_chunks(space.t_count(), limits.workers, |a, b| {
        let mut out = Vec::new();
        let mut h = Slots::new();
        scan::<()>(
            space,
            &compiled,
            a,
            b,
            |eval, t| {
                let dom = defined_positions(t);
                let tv = space.valuation_of(t);
                for mask in 0..1u64 << dom.len() {
                    here_from_mask(t, &dom, mask, &mut h);
                    eval.set_here(&h)?;
                    if eval.here_models(0) {
                        out.push(Interpretation::new(space.valuation_of(&h), tv.clone())?);
                    }
                }
                Ok(None)
            },
            1,
        )?;
        Ok(out)
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

/// All t with ⟨t,t⟩ ⊨ Γ and no ⟨h,t⟩ ⊨ Γ for `h ⊂ t`, in canonical order.
pub fn equilibrium_models(
    theory: &Theory,
    space: &ValuationSpace,
    limits: Limits,
) -> Result<Vec<Valuation>> {
    limits.check("equilibrium search", space.interpretation_count())?;
    let compiled = Compiled::new(&space_vars(space), space.bounds, &[theory])?;
    let chunks = run_chunks(space.t_count(), limits.workers, |a, b| {
        let mut out = Vec::new();
        let mut h = Slots::new();
        scan::<()>(
            space,
            &compiled,
            a,
            b,
            |eval, t| {
                let dom = defined_positions(t);
                for mask in 1..1u64 << dom.len() {
                    here_from_mask(t, &dom, mask, &mut h);
                    eval.set_here(&h)?;
                    if eval.here_models(0) {
                        return Ok(None);
                    }
                }
                out.push(space.valuation_of(t));
                Ok(None)
            },
            1,
        )?;
        Ok(out)
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Which theory a countermodel satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    LeftOnly,
    RightOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Countermodel {
        interpretation: Interpretation,
        side: Side,
    },
}

/// Decides whether two theories have the same HTc models in the space.
/// Returns the first separating interpretation in canonical order.
pub fn htc_equivalent(
    left: &Theory,
    right: &Theory,
    space: &ValuationSpace,
    limits: Limits,
) -> Result<Verdict> {
    limits.check("equivalence check", space.interpretation_count())?;
    let compiled = Compiled::new(&space_vars(space), space.bounds, &[left, right])?;
    let chunks = run_chunks(space.t_count(), limits.workers, |a, b| {
        let mut h = Slots::new();
        scan(
            space,
            &compiled,
            a,
            b,
            |eval, t| {
                let dom = defined_positions(t);
                for mask in 0..1u64 << dom.len() {
                    here_from_mask(t, &dom, mask, &mut h);
                    eval.set_here(&h)?;
                    let (l, r) = (eval.here_models(0), eval.here_models(1));
                    if l != r {
                        let interpretation =
                            Interpretation::new(space.valuation_of(&h), space.valuation_of(t))?;
                        let side = if l { Side::LeftOnly } else { Side::RightOnly };
                        return Ok(Some((interpretation, side)));
                    }
                }
                Ok(None)
            },
            2,
        )
    })?;
    Ok(match chunks.into_iter().flatten().next() {
        Some((interpretation, side)) => Verdict::Countermodel {
            interpretation,
            side,
        },
        None => Verdict::Equivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::htc::{is_model, satisfies, ConstraintAtom, Formula, Subdomain};
    use crate::linear::{Comparator, LinearAtom};
    use proptest::prelude::*;

    fn bounds(lo: i64, hi: i64) -> Bounds {
        Bounds::new(lo, hi).unwrap()
    }

    fn space(vars: &[(&str, Sort)], lo: i64, hi: i64) -> ValuationSpace {
        ValuationSpace::new(vars.iter().map(|(v, s)| (Var::new(v), *s)), bounds(lo, hi))
    }

    fn a() -> Formula {
        Formula::atom(ConstraintAtom::regular("a"))
    }

    fn theory(fs: impl IntoIterator<Item = Formula>) -> Theory {
        fs.into_iter().collect()
    }

    fn lin(v: &str, c: Comparator, k: i64) -> Formula {
        Formula::atom(ConstraintAtom::Linear(LinearAtom::single(v, c, k)))
    }

    #[test]
    fn enumeration_order() {
        let sp = space(&[("a", Sort::Boolean)], 0, 0);
        let all: Vec<String> = sp.iter().map(|v| v.to_string()).collect();
        assert_eq!(all, ["{a=t}", "{}"]);
        let sp = space(&[("s", Sort::Integer)], 0, 1);
        let all: Vec<String> = sp.iter().map(|v| v.to_string()).collect();
        assert_eq!(all, ["{s=0}", "{s=1}", "{}"]);
        let sp = space(&[], 0, 1);
        assert_eq!(sp.iter().collect::<Vec<_>>(), vec![Valuation::new()]);
    }

    #[test]
    fn enumeration_budget() {
        let sp = space(&[("x", Sort::Integer), ("y", Sort::Integer)], 0, 9);
        assert_eq!(sp.t_count(), 121);
        assert!(enumerate_t_valuations(&sp, Limits::with_budget(120))
            .err()
            .unwrap()
            .is_budget());
        assert_eq!(
            enumerate_t_valuations(&sp, Limits::with_budget(121))
                .unwrap()
                .count(),
            121
        );
    }

    #[test]
    fn index_matches_iteration() {
        let sp = space(
            &[
                ("b", Sort::Boolean),
                ("x", Sort::Integer),
                ("a", Sort::Boolean),
            ],
            -1,
            1,
        );
        for (i, v) in sp.iter().enumerate() {
            assert_eq!(sp.valuation_at(i as u128), v);
        }
    }

    #[test]
    fn models_examples() {
        let sp = space(&[("a", Sort::Boolean)], 0, 0);
        let ms = models(&theory([a()]), &sp, Limits::default()).unwrap();
        assert_eq!(
            ms,
            vec![Interpretation::total(
                Valuation::new().with("a", DomainValue::Truth)
            )]
        );
        assert_eq!(
            models(&Theory::new(), &sp, Limits::default())
                .unwrap()
                .len(),
            3
        );
        let ms = models(&theory([Formula::negation(a())]), &sp, Limits::default()).unwrap();
        assert_eq!(ms, vec![Interpretation::total(Valuation::new())]);
    }

    #[test]
    fn equilibrium_examples() {
        let sp = space(&[("a", Sort::Boolean)], 0, 0);
        let eq = equilibrium_models(&theory([a()]), &sp, Limits::default()).unwrap();
        assert_eq!(eq, vec![Valuation::new().with("a", DomainValue::Truth)]);
        let sp = space(&[("s", Sort::Integer)], 0, 2);
        let eq = equilibrium_models(
            &theory([Formula::atom(ConstraintAtom::def("s"))]),
            &sp,
            Limits::default(),
        )
        .unwrap();
        let expected: Vec<Valuation> = (0..=2)
            .map(|i| Valuation::new().with("s", DomainValue::Int(i)))
            .collect();
        assert_eq!(eq, expected);
    }

    #[test]
    fn equivalence_examples() {
        let sp = space(&[("a", Sort::Boolean), ("s", Sort::Integer)], 0, 200);
        let f3 = Formula::implies(
            Formula::and(Formula::negation(a()), lin("s", Comparator::Ge, 120)),
            Formula::Bot,
        );
        let f4 = Formula::implies(lin("s", Comparator::Gt, 100), a());
        let gamma = theory([f3, f4.clone()]);
        let gamma2 = theory([f4]);
        assert_eq!(
            htc_equivalent(&gamma, &gamma2, &sp, Limits::default()).unwrap(),
            Verdict::Equivalent
        );
        assert_eq!(
            htc_equivalent(&gamma, &gamma, &sp, Limits::default()).unwrap(),
            Verdict::Equivalent
        );
        let sp = space(&[("a", Sort::Boolean)], 0, 0);
        let v = htc_equivalent(
            &theory([Formula::negation(Formula::negation(a()))]),
            &theory([a()]),
            &sp,
            Limits::default(),
        )
        .unwrap();
        assert_eq!(
            v,
            Verdict::Countermodel {
                interpretation: Interpretation::new(
                    Valuation::new(),
                    Valuation::new().with("a", DomainValue::Truth)
                )
                .unwrap(),
                side: Side::LeftOnly,
            }
        );
    }

    #[test]
    fn budget_is_enforced() {
        let sp = space(&[("a", Sort::Boolean), ("s", Sort::Integer)], 0, 200);
        assert_eq!(sp.interpretation_count(), 3 * 403);
        let err = models(&Theory::new(), &sp, Limits::with_budget(1000)).unwrap_err();
        assert!(err.is_budget());
        assert!(
            equilibrium_models(&Theory::new(), &sp, Limits::with_budget(1208))
                .unwrap_err()
                .is_budget()
        );
        assert!(equilibrium_models(&Theory::new(), &sp, Limits::with_budget(1209)).is_ok());
    }

    #[test]
    fn unknown_variables_are_rejected() {
        let sp = space(&[("a", Sort::Boolean)], 0, 0);
        let th = theory([Formula::atom(ConstraintAtom::def("zz"))]);
        assert_eq!(
            models(&th, &sp, Limits::default()).unwrap_err(),
            Error::UnknownVariable("zz".into())
        );
    }

    fn arb_atom() -> impl Strategy<Value = ConstraintAtom> {
        prop_oneof![
            prop::sample::select(vec!["a", "b"]).prop_map(ConstraintAtom::regular),
            prop::sample::select(vec!["a", "b", "x", "y"]).prop_map(ConstraintAtom::def),
            (
                prop::sample::select(vec!["x", "y"]),
                prop::sample::select(Comparator::ALL.to_vec()),
                0i64..=2
            )
                .prop_map(|(v, c, k)| ConstraintAtom::Linear(LinearAtom::single(v, c, k))),
            (prop::sample::select(vec!["x", "y"]), 0i64..=2).prop_map(
                |(v, k)| ConstraintAtom::Dom(Var::new(v), Subdomain::Range { lo: 0, hi: k })
            ),
        ]
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just(Formula::Bot), arb_atom().prop_map(Formula::Atom)];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        })
    }

    fn small_space() -> ValuationSpace {
        space(
            &[
                ("a", Sort::Boolean),
                ("b", Sort::Boolean),
                ("x", Sort::Integer),
                ("y", Sort::Integer),
            ],
            0,
            1,
        )
    }

    fn brute_models(th: &Theory, sp: &ValuationSpace) -> Vec<Interpretation> {
        let sig = sp.signature();
        let mut out = Vec::new();
        for t in sp.iter() {
            for h in sp.iter() {
                if h.is_subset(&t) {
                    let i = Interpretation::new(h, t.clone()).unwrap();
                    if is_model(&i, th, &sig).unwrap() {
                        out.push(i);
                    }
                }
            }
        }
        out.sort();
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compiled_models_match_reference(fs in prop::collection::vec(arb_formula(), 0..3)) {
            let th: Theory = fs.into_iter().collect();
            let sp = small_space();
            let mut fast = models(&th, &sp, Limits::default()).unwrap();
            fast.sort();
            prop_assert_eq!(fast, brute_models(&th, &sp));
        }

        #[test]
        fn equilibrium_matches_definition(fs in prop::collection::vec(arb_formula(), 0..3)) {
            let th: Theory = fs.into_iter().collect();
            let sp = small_space();
            let sig = sp.signature();
            let eq = equilibrium_models(&th, &sp, Limits::default()).unwrap();
            let mut expected = Vec::new();
            for t in sp.iter() {
                if !is_model(&Interpretation::total(t.clone()), &th, &sig).unwrap() {
                    continue;
                }
                let minimal = sp.iter().all(|h| {
                    !(h.is_subset(&t) && h != t)
                        || !is_model(&Interpretation::new(h, t.clone()).unwrap(), &th, &sig).unwrap()
                });
                if minimal {
                    expected.push(t);
                }
            }
            prop_assert_eq!(eq, expected);
        }

        #[test]
        fn worker_count_is_invisible(
            l in prop::collection::vec(arb_formula(), 0..3),
            r in prop::collection::vec(arb_formula(), 0..3),
            workers in 2usize..6,
        ) {
            let (l, r): (Theory, Theory) = (l.into_iter().collect(), r.into_iter().collect());
            let sp = small_space();
            let one = Limits::default();
            let many = Limits::default().workers(workers);
            prop_assert_eq!(
                htc_equivalent(&l, &r, &sp, one).unwrap(),
                htc_equivalent(&l, &r, &sp, many).unwrap()
            );
            prop_assert_eq!(models(&l, &sp, one).unwrap(), models(&l, &sp, many).unwrap());
            prop_assert_eq!(
                equilibrium_models(&l, &sp, one).unwrap(),
                equilibrium_models(&l, &sp, many).unwrap()
            );
        }

        #[test]
        fn countermodel_separates(
            l in prop::collection::vec(arb_formula(), 0..3),
            r in prop::collection::vec(arb_formula(), 0..3),
        ) {
            let (l, r): (Theory, Theory) = (l.into_iter().collect(), r.into_iter().collect());
            let sp = small_space();
            let sig = sp.signature();
            match htc_equivalent(&l, &r, &sp, Limits::default()).unwrap() {
                Verdict::Equivalent => prop_assert_eq!(brute_models(&l, &sp), brute_models(&r, &sp)),
                Verdict::Countermodel { interpretation, side } => {
                    let lm = is_model(&interpretation, &l, &sig).unwrap();
                    let rm = is_model(&interpretation, &r, &sig).unwrap();
                    prop_assert_eq!(side == Side::LeftOnly, lm && !rm);
                    prop_assert_eq!(side == Side::RightOnly, rm && !lm);
                }
            }
        }

        #[test]
        fn persistence_and_negation(phi in arb_formula()) {
            let sp = small_space();
            let sig = sp.signature();
            for t in sp.iter() {
                let tt = Interpretation::total(t.clone());
                let at_t = satisfies(&tt, &phi, &sig).unwrap();
                for h in sp.iter().filter(|h| h.is_subset(&t)) {
                    let i = Interpretation::new(h, t.clone()).unwrap();
                    if satisfies(&i, &phi, &sig).unwrap() {
                        prop_assert!(at_t);
                    }
                    prop_assert_eq!(satisfies(&i, &Formula::negation(phi.clone()), &sig).unwrap(), !at_t);
                }
            }
        }
    }
}
