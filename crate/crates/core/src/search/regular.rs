//! Stable models of propositional programs with disjunctive heads.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;

use super::Limits;

/// `h1 ∨ ... ∨ hk ← p1, ..., pm, not n1, ..., not nj` over atom indices.
/// An empty head is `⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropRule {
    pub head: Vec<usize>,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropProgram<A> {
    atoms: Vec<A>,
    index: BTreeMap<A, usize>,
    rules: Vec<PropRule>,
}

impl<A: Clone + Ord> Default for PropProgram<A> {
    fn default() -> Self {
        PropProgram {
            atoms: Vec::new(),
            index: BTreeMap::new(),
            rules: Vec::new(),
        }
    }
}

impl<A: Clone + Ord> PropProgram<A> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `a`, registering it if new.
    pub fn atom(&mut self, a: A) -> usize {
        if let Some(&i) = self.index.get(&a) {
            return i;
        }
        let i = self.atoms.len();
        self.atoms.push(a.clone());
        self.index.insert(a, i);
        i
    }

    pub fn add_rule(
        &mut self,
        head: impl IntoIterator<Item = A>,
        pos: impl IntoIterator<Item = A>,
        neg: impl IntoIterator<Item = A>,
    ) {
        let rule = PropRule {
            head: head.into_iter().map(|a| self.atom(a)).collect(),
            pos: pos.into_iter().map(|a| self.atom(a)).collect(),
            neg: neg.into_iter().map(|a| self.atom(a)).collect(),
        };
        self.rules.push(rule);
    }

    pub fn atoms(&self) -> &[A] {
        &self.atoms
    }

    pub fn rules(&self) -> &[PropRule] {
        &self.rules
    }

    pub fn index_of(&self, a: &A) -> Option<usize> {
        self.index.get(a).copied()
    }

    fn is_disjunctive(&self) -> bool {
        self.rules.iter().any(|r| r.head.len() > 1)
    }
}

fn bits(atoms: &[usize]) -> u64 {
    atoms.iter().fold(0, |m, &i| m | 1 << i)
}

struct Masked {
    head: u64,
    pos: u64,
    neg: u64,
}

fn classical_model(rules: &[Masked], x: u64) -> bool {
    rules
        .iter()
        .all(|r| r.pos & !x != 0 || r.neg & x != 0 || r.head & x != 0)
}

/// Whether `y` is a model of the reduct of the rules relative to `x`.
fn reduct_model(rules: &[Masked], x: u64, y: u64) -> bool {
    rules
        .iter()
        .all(|r| r.neg & x != 0 || r.pos & !y != 0 || r.head & y != 0)
}

fn least_model_of_reduct(rules: &[Masked], x: u64) -> u64 {
    let mut m = 0u64;
    loop {
        let mut next = m;
        for r in rules {
            if r.neg & x == 0 && r.pos & !m == 0 {
                next |= r.head;
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// All stable models: sets `X` whose total interpretation is an
/// equilibrium model when atoms are read as propositions, i.e. classical
/// models of the program that are minimal models of its reduct.
pub fn regular_stable_models<A: Clone + Ord>(
    program: &PropProgram<A>,
    limits: Limits,
) -> Result<Vec<BTreeSet<A>>> {
    let n = program.atoms.len();
    let required = if n >= 127 { u128::MAX } else { 1u128 << n };
    limits.check("stable model search", required)?;
    let rules: Vec<Masked> = program
        .rules
        .iter()
        .map(|r| Masked {
            head: bits(&r.head),
            pos: bits(&r.pos),
            neg: bits(&r.neg),
        })
        .collect();
    let disjunctive = program.is_disjunctive();
    let mut out = Vec::new();
    for x in 0..1u64 << n {
        if !classical_model(&rules, x) {
            continue;
        }
        let stable = if disjunctive {
            let mut y = x;
            let mut minimal = true;
            while y != 0 {
                y = (y - 1) & x;
                if reduct_model(&rules, x, y) {
                    minimal = false;
                    break;
                }
            }
            minimal
        } else {
            least_model_of_reduct(&rules, x) == x
        };
        if stable {
            let set: BTreeSet<A> = (0..n)
                .filter(|i| x >> i & 1 == 1)
                .map(|i| program.atoms[i].clone())
                .collect();
            out.push(set);
        }
    }
    out.sort();
    Ok(out)
}
