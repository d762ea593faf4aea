//! Strong equivalence of programs and separating contexts.
//!
//! Two programs are strongly equivalent exactly when their translations
//! have the same HTc models over the joint signature. When they do not, a
//! countermodel yields a small context made of definedness facts and
//! definedness rules under which the stable models of the two sides differ.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::htc::{is_model, ConstraintAtom, Formula, Interpretation, Sort, Theory, Valuation, Var};
use crate::linear::Bounds;
use crate::program::TProgram;
use crate::search::{equilibrium_models, htc_equivalent, Limits, Side, ValuationSpace, Verdict};
use crate::translate::{tau_program, TranslationOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    /// The there-world of the countermodel already fails the other theory.
    There,
    /// Only the here-world separates the theories.
    Here,
}

/// Definedness facts `def(x)` and rules `def(x) ← def(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessContext {
    pub case: WitnessCase,
    pub facts: BTreeSet<Var>,
    /// `(head, body)` pairs.
    pub rules: BTreeSet<(Var, Var)>,
}

impl WitnessContext {
    pub fn to_theory(&self) -> Theory {
        let def = |v: &Var| Formula::atom(ConstraintAtom::Def(v.clone()));
        self.facts
            .iter()
            .map(def)
            .chain(
                self.rules
                    .iter()
                    .map(|(h, b)| Formula::implies(def(b), def(h))),
            )
            .collect()
    }

    /// Program-level rendering, one statement per line. Definedness is
    /// written as a domain atom over the variable's full range.
    pub fn render(&self, space: &ValuationSpace) -> Vec<String> {
        let dom = |v: &Var| {
            let range = match space.vars().iter().find(|(x, _)| x == v) {
                Some((_, Sort::Boolean)) => "t".to_string(),
                _ => space.bounds().to_string(),
            };
            format!("&dom{{{range}}}({v})")
        };
        self.facts
            .iter()
            .map(|v| format!("{}.", dom(v)))
            .chain(
                self.rules
                    .iter()
                    .map(|(h, b)| format!("{} :- {}.", dom(h), dom(b))),
            )
            .collect()
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCase::There => f.write_str("there"),
            WitnessCase::Here => f.write_str("here"),
        }
    }
}

/// Builds a context `Δ` such that `Γ ∪ Δ` and `Γ' ∪ Δ` have different
/// equilibrium models, from an interpretation that satisfies `Γ` but not
/// `Γ'`.
pub fn witness_context(
    gamma: &Theory,
    gamma2: &Theory,
    cm: &Interpretation,
    space: &ValuationSpace,
) -> Result<WitnessContext> {
    let sig = space.signature();
    if !is_model(cm, gamma, &sig)? || is_model(cm, gamma2, &sig)? {
        return Err(Error::Precondition(format!(
            "{cm} does not satisfy the first theory alone"
        )));
    }
    let (h, t) = (cm.here(), cm.there());
    if !is_model(&Interpretation::total(t.clone()), gamma2, &sig)? {
        return Ok(WitnessContext {
            case: WitnessCase::There,
            facts: t.dom().cloned().collect(),
            rules: BTreeSet::new(),
        });
    }
    let gap: Vec<&Var> = t.dom().filter(|x| !h.is_defined(x)).collect();
    let rules = gap
        .iter()
        .flat_map(|x| gap.iter().map(move |y| ((*x).clone(), (*y).clone())))
        .collect();
    Ok(WitnessContext {
        case: WitnessCase::Here,
        facts: h.dom().cloned().collect(),
        rules,
    })
}

/// Equilibrium models of both theories extended by the same context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub left: Vec<Valuation>,
    pub right: Vec<Valuation>,
}

impl Evidence {
    pub fn differs(&self) -> bool {
        self.left != self.right
    }
}

pub fn verify_witness(
    left: &Theory,
    right: &Theory,
    delta: &WitnessContext,
    space: &ValuationSpace,
    limits: Limits,
) -> Result<Evidence> {
    let d = delta.to_theory();
    Ok(Evidence {
        left: equilibrium_models(&left.union(&d), space, limits)?,
        right: equilibrium_models(&right.union(&d), space, limits)?,
    })
}

/// Translations of two programs over their joint signature.
#[derive(Clone, Debug)]
pub struct Joint {
    pub left: TranslationOutput,
    pub right: TranslationOutput,
    pub space: ValuationSpace,
}

pub fn joint_translation(p: &TProgram, q: &TProgram) -> Result<Joint> {
    if p.bounds() != q.bounds() {
        return Err(Error::BoundsMismatch {
            left: p.bounds().to_string(),
            right: q.bounds().to_string(),
        });
    }
    let left = tau_program(p)?;
    let right = tau_program(q)?;
    let sig = left.signature.merge(&right.signature)?;
    Ok(Joint {
        space: ValuationSpace::of_signature(&sig),
        left,
        right,
    })
}

/// Program-level check that a context separates the two programs.
pub fn verify_witness_programs(
    p: &TProgram,
    q: &TProgram,
    delta: &WitnessContext,
    limits: Limits,
) -> Result<Evidence> {
    let j = joint_translation(p, q)?;
    verify_witness(&j.left.theory, &j.right.theory, delta, &j.space, limits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequivVerdict {
    Equivalent {
        bounds: Bounds,
    },
    NotEquivalent {
        bounds: Bounds,
        countermodel: Interpretation,
        /// Which program the countermodel satisfies.
        side: Side,
        witness: WitnessContext,
        /// Stable models of the first and second program under the witness.
        evidence: Evidence,
    },
}

impl SequivVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SequivVerdict::Equivalent { .. })
    }
}

/// Decides strong equivalence relative to the shared bounds. A negative
/// verdict carries a verified separating context.
pub fn strong_equivalent(p: &TProgram, q: &TProgram, limits: Limits) -> Result<SequivVerdict> {
    let j = joint_translation(p, q)?;
    let bounds = p.bounds();
    match htc_equivalent(&j.left.theory, &j.right.theory, &j.space, limits)? {
        Verdict::Equivalent => Ok(SequivVerdict::Equivalent { bounds }),
        Verdict::Countermodel {
            interpretation,
            side,
        } => {
            let (gamma, gamma2) = match side {
                Side::LeftOnly => (&j.left.theory, &j.right.theory),
                Side::RightOnly => (&j.right.theory, &j.left.theory),
            };
            let witness = witness_context(gamma, gamma2, &interpretation, &j.space)?;
            let evidence =
                verify_witness(&j.left.theory, &j.right.theory, &witness, &j.space, limits)?;
            if !evidence.differs() {
                return Err(Error::Internal(format!(
                    "witness for countermodel {interpretation} does not separate the programs"
                )));
            }
            Ok(SequivVerdict::NotEquivalent {
                bounds,
                countermodel: interpretation,
                side,
                witness,
                evidence,
            })
        }
    }
}
