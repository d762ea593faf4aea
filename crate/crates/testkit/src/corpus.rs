use htceq::{
    Bounds, Comparator, ConstraintAtom, DomainValue, Formula, Interpretation, LinearAtom, Rule,
    Subdomain, TAtom, TProgram, Valuation, ValuationSpace, Var,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const REGULAR: [&str; 2] = ["a", "b"];
pub const THEORY_VARS: [&str; 2] = ["x", "y"];
const COEFFICIENTS: [i64; 3] = [-1, 1, 2];

/// Bounds used by the corpus.
pub fn corpus_bounds() -> Bounds {
    Bounds::new(0, 3).unwrap()
}

/// Deterministic generator of small programs over regular atoms `a, b`,
/// integer variables `x, y` and bounds `[0, 3]`.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn theory_atom(&mut self) -> LinearAtom {
        let n = self.rng.gen_range(1..=2);
        let terms = (0..n)
            .map(|_| {
                (
                    *COEFFICIENTS.choose(&mut self.rng).unwrap(),
                    Var::new(THEORY_VARS.choose(&mut self.rng).unwrap()),
                )
            })
            .collect();
        let cmp = *Comparator::ALL.choose(&mut self.rng).unwrap();
        LinearAtom::new(terms, cmp, self.rng.gen_range(-1..=4)).unwrap()
    }

    fn atom(&mut self, pool: &[LinearAtom]) -> TAtom {
        if self.rng.gen_bool(0.5) {
            TAtom::reg(*REGULAR.choose(&mut self.rng).unwrap())
        } else {
            TAtom::Th(pool.choose(&mut self.rng).unwrap().clone())
        }
    }

    fn rule(&mut self, pool: &[LinearAtom]) -> Rule {
        let len = self.rng.gen_range(0..=2);
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for _ in 0..len {
            let a = self.atom(pool);
            if self.rng.gen_bool(0.4) {
                neg.push(a);
            } else {
                pos.push(a);
            }
        }
        let head = if len > 0 && self.rng.gen_bool(0.25) {
            None
        } else {
            Some(self.atom(pool))
        };
        Rule::new(head, pos, neg)
    }

    /// One to four rules over a pool of at most three theory atoms; at
    /// times one head theory atom is declared external.
    pub fn program(&mut self) -> TProgram {
        let pool_size = self.rng.gen_range(1..=3);
        let pool: Vec<LinearAtom> = (0..pool_size).map(|_| self.theory_atom()).collect();
        let n = self.rng.gen_range(1..=4);
        let rules: Vec<Rule> = (0..n).map(|_| self.rule(&pool)).collect();
        let mut declared = Vec::new();
        if self.rng.gen_bool(0.2) {
            declared.push(pool.choose(&mut self.rng).unwrap().clone());
        }
        TProgram::new(rules, declared, corpus_bounds()).unwrap()
    }

    /// A context program over the same vocabulary.
    pub fn context(&mut self) -> TProgram {
        self.program()
    }

    fn constraint_atom(&mut self) -> ConstraintAtom {
        match self.rng.gen_range(0..4) {
            0 => ConstraintAtom::regular(*REGULAR.choose(&mut self.rng).unwrap()),
            1 => {
                let all = [REGULAR, THEORY_VARS].concat();
                ConstraintAtom::def(*all.choose(&mut self.rng).unwrap())
            }
            2 => ConstraintAtom::Linear(self.theory_atom()),
            _ => {
                let lo = self.rng.gen_range(0..=3);
                let hi = self.rng.gen_range(lo..=3);
                ConstraintAtom::Dom(
                    Var::new(THEORY_VARS.choose(&mut self.rng).unwrap()),
                    Subdomain::Range { lo, hi },
                )
            }
        }
    }

    pub fn formula(&mut self, depth: u32) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.1) {
                Formula::Bot
            } else {
                Formula::Atom(self.constraint_atom())
            };
        }
        let a = self.formula(depth - 1);
        let b = self.formula(depth - 1);
        match self.rng.gen_range(0..4) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => Formula::implies(a, b),
            _ => Formula::negation(a),
        }
    }

    /// A random byte string: arbitrary bytes, or fragments of program
    /// syntax glued together.
    pub fn fuzz_input(&mut self) -> Vec<u8> {
        const PIECES: [&str; 24] = [
            "a",
            "s",
            "&sum{",
            "}",
            ";",
            "*",
            "-",
            "2",
            "120",
            "99999999999999999999",
            ">=",
            "!=",
            "<",
            "=",
            ":-",
            ",",
            ".",
            "not ",
            "#bounds",
            "#external",
            "#founded",
            "..",
            "%",
            "\n",
        ];
        let len = self.rng.gen_range(0..40);
        if self.rng.gen_bool(0.5) {
            (0..len).map(|_| self.rng.gen()).collect()
        } else {
            (0..len)
                .flat_map(|_| PIECES.choose(&mut self.rng).unwrap().bytes())
                .collect()
        }
    }

    /// A random ⟨h,t⟩ over the space.
    pub fn interpretation(&mut self, space: &ValuationSpace) -> Interpretation {
        let idx = self.rng.gen_range(0..space.t_count());
        let t = space.valuation_at(idx);
        let h: Valuation = t
            .iter()
            .filter(|_| self.rng.gen_bool(0.5))
            .map(|(x, d): (&Var, DomainValue)| (x.clone(), d))
            .collect();
        Interpretation::new(h, t).unwrap()
    }
}

/// `n` programs from the given seed.
pub fn corpus(seed: u64, n: usize) -> Vec<TProgram> {
    let mut g = Generator::new(seed);
    (0..n).map(|_| g.program()).collect()
}
