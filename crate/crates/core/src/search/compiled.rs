//! Flat evaluator for theories over a fixed valuation space.
//!
//! Formulas are hash-consed into a node array with children before parents,
//! so evaluating every subformula at a world is a single forward pass.
//! Valuations are slot vectors indexed by the space's variable order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::htc::{ConstraintAtom, DomainValue, Formula, Subdomain, Theory, Var};
use crate::linear::{Bounds, Comparator};

pub(crate) type Slots = Vec<Option<DomainValue>>;

enum CAtom {
    Regular(usize),
    Linear {
        terms: Vec<(i64, usize)>,
        cmp: Comparator,
        bound: i64,
        text: String,
    },
    Dom(usize, Subdomain),
    Def(usize),
}

enum Node {
    Bot,
    Atom(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
}

pub(crate) struct Compiled {
    atoms: Vec<CAtom>,
    nodes: Vec<Node>,
    roots: Vec<Vec<usize>>,
    bounds: Bounds,
}

struct Builder<'a> {
    slot_of: &'a HashMap<Var, usize>,
    atom_ids: HashMap<ConstraintAtom, usize>,
    node_ids: HashMap<Formula, usize>,
    atoms: Vec<CAtom>,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn slot(&self, v: &Var) -> Result<usize> {
        self.slot_of
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(v.clone()))
    }

    fn atom(&mut self, c: &ConstraintAtom) -> Result<usize> {
        if let Some(&id) = self.atom_ids.get(c) {
            return Ok(id);
        }
        let compiled = match c {
            ConstraintAtom::Regular(a) => CAtom::Regular(self.slot(a)?),
            ConstraintAtom::Def(x) => CAtom::Def(self.slot(x)?),
            ConstraintAtom::Dom(x, d) => CAtom::Dom(self.slot(x)?, d.clone()),
            ConstraintAtom::Linear(l) => CAtom::Linear {
                terms: l
                    .terms()
                    .iter()
                    .map(|(k, v)| Ok((*k, self.slot(v)?)))
                    .collect::<Result<_>>()?,
                cmp: l.comparator(),
                bound: l.bound(),
                text: l.to_string(),
            },
        };
        let id = self.atoms.len();
        self.atoms.push(compiled);
        self.atom_ids.insert(c.clone(), id);
        Ok(id)
    }

    fn node(&mut self, phi: &Formula) -> Result<usize> {
        if let Some(&id) = self.node_ids.get(phi) {
            return Ok(id);
        }
        let node = match phi {
            Formula::Bot => Node::Bot,
            Formula::Atom(c) => Node::Atom(self.atom(c)?),
            Formula::And(a, b) => Node::And(self.node(a)?, self.node(b)?),
            Formula::Or(a, b) => Node::Or(self.node(a)?, self.node(b)?),
            Formula::Implies(a, b) => Node::Imp(self.node(a)?, self.node(b)?),
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        self.node_ids.insert(phi.clone(), id);
        Ok(id)
    }
}

impl Compiled {
    pub(crate) fn new(vars: &[Var], bounds: Bounds, theories: &[&Theory]) -> Result<Self> {
        let slot_of: HashMap<Var, usize> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut b = Builder {
            slot_of: &slot_of,
            atom_ids: HashMap::new(),
            node_ids: HashMap::new(),
            atoms: Vec::new(),
            nodes: Vec::new(),
        };
        let mut roots = Vec::with_capacity(theories.len());
        for theory in theories {
            let mut r = Vec::with_capacity(theory.len());
            for phi in theory.iter() {
                r.push(b.node(phi)?);
            }
            roots.push(r);
        }
        Ok(Compiled {
            atoms: b.atoms,
            nodes: b.nodes,
            roots,
            bounds,
        })
    }

    fn atom_holds(&self, atom: &CAtom, w: &Slots) -> Result<bool> {
        Ok(match atom {
            CAtom::Regular(i) => w[*i] == Some(DomainValue::Truth),
            CAtom::Def(i) => w[*i].is_some(),
            CAtom::Dom(i, d) => w[*i].is_some_and(|v| d.contains(v)),
            CAtom::Linear {
                terms,
                cmp,
                bound,
                text,
            } => {
                let mut sum: i128 = 0;
                for (k, i) in terms {
                    let value = match w[*i] {
                        Some(DomainValue::Int(v)) if self.bounds.contains(v) => v,
                        _ => return Ok(false),
                    };
                    sum = (*k as i128)
                        .checked_mul(value as i128)
                        .and_then(|p| sum.checked_add(p))
                        .ok_or_else(|| Error::Overflow(text.clone()))?;
                }
                cmp.holds(sum, *bound as i128)
            }
        })
    }

    fn atom_values(&self, w: &Slots, out: &mut Vec<bool>) -> Result<()> {
        out.clear();
        for a in &self.atoms {
            out.push(self.atom_holds(a, w)?);
        }
        Ok(())
    }
}

/// Reusable buffers for evaluating interpretations ⟨h,t⟩ against the
/// compiled theories. Call [`Evaluator::set_there`] before
/// [`Evaluator::set_here`].
pub(crate) struct Evaluator<'c> {
    c: &'c Compiled,
    t_atoms: Vec<bool>,
    t_nodes: Vec<bool>,
    h_atoms: Vec<bool>,
    h_nodes: Vec<bool>,
}

impl<'c> Evaluator<'c> {
    pub(crate) fn new(c: &'c Compiled) -> Self {
        let n = c.nodes.len();
        Evaluator {
            c,
            t_atoms: Vec::with_capacity(c.atoms.len()),
            t_nodes: vec![false; n],
            h_atoms: Vec::with_capacity(c.atoms.len()),
            h_nodes: vec![false; n],
        }
    }

    /// Evaluates every subformula at ⟨t,t⟩.
    pub(crate) fn set_there(&mut self, t: &Slots) -> Result<()> {
        self.c.atom_values(t, &mut self.t_atoms)?;
        for (i, node) in self.c.nodes.iter().enumerate() {
            self.t_nodes[i] = match *node {
                Node::Bot => false,
                Node::Atom(a) => self.t_atoms[a],
                Node::And(a, b) => self.t_nodes[a] && self.t_nodes[b],
                Node::Or(a, b) => self.t_nodes[a] || self.t_nodes[b],
                Node::Imp(a, b) => !self.t_nodes[a] || self.t_nodes[b],
            };
        }
        Ok(())
    }

    /// Evaluates every subformula at ⟨h,t⟩ for the last `t` given.
    pub(crate) fn set_here(&mut self, h: &Slots) -> Result<()> {
        self.c.atom_values(h, &mut self.h_atoms)?;
        for (i, node) in self.c.nodes.iter().enumerate() {
            self.h_nodes[i] = match *node {
                Node::Bot => false,
                Node::Atom(a) => self.h_atoms[a],
                Node::And(a, b) => self.h_nodes[a] && self.h_nodes[b],
                Node::Or(a, b) => self.h_nodes[a] || self.h_nodes[b],
                Node::Imp(a, b) => (!self.h_nodes[a] || self.h_nodes[b]) && self.t_nodes[i],
            };
        }
        Ok(())
    }

    pub(crate) fn there_models(&self, theory: usize) -> bool {
        self.c.roots[theory].iter().all(|&r| self.t_nodes[r])
    }

    pub(crate) fn here_models(&self, theory: usize) -> bool {
        self.c.roots[theory].iter().all(|&r| self.h_nodes[r])
    }
}

/// Slot positions defined in `t`, in variable order.
pub(crate) fn defined_positions(t: &Slots) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|_| i))
        .collect()
}

/// The here-world obtained from `t` by unbinding the positions selected by
/// `mask`. The first defined position is the most significant bit, so
/// ascending masks keep bindings before dropping them.
pub(crate) fn here_from_mask(t: &Slots, dom: &[usize], mask: u64, out: &mut Slots) {
    out.clone_from(t);
    let n = dom.len();
    for (j, &pos) in dom.iter().enumerate() {
        if mask >> (n - 1 - j) & 1 == 1 {
            out[pos] = None;
        }
    }
}
