use std::collections::HashMap;

use super::{Frame, Model};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::worlds::WorldSet;

/// A propositional letter of a compiled formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Atom(String),
    Meta(String),
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Letter(usize),
    Top,
    Bot,
    Neg(usize),
    And(usize, usize),
    Or(usize, usize),
    Impl(usize, usize),
    Box(usize),
    Dia(usize),
    Rhd(usize, usize),
}

/// A formula flattened into a DAG of shared subterms, evaluated bottom-up
/// to truth sets. Letters are numbered in sorted order.
#[derive(Clone, Debug)]
pub struct Compiled {
    ops: Vec<Op>,
    letters: Vec<Letter>,
}

impl Compiled {
    pub fn new(f: &Formula) -> Self {
        let mut letters: Vec<Letter> = f
            .atoms()
            .into_iter()
            .map(Letter::Atom)
            .chain(f.metavariables().into_iter().map(Letter::Meta))
            .collect();
        letters.sort();
        let mut c = Compiled {
            ops: Vec::new(),
            letters,
        };
        let mut seen = HashMap::new();
        c.push(f, &mut seen);
        c
    }

    fn push<'a>(&mut self, f: &'a Formula, seen: &mut HashMap<&'a Formula, usize>) -> usize {
        if let Some(&i) = seen.get(f) {
            return i;
        }
        let op = match f {
            Formula::Atom(n) => Op::Letter(self.letter_index(&Letter::Atom(n.clone()))),
            Formula::Meta(n) => Op::Letter(self.letter_index(&Letter::Meta(n.clone()))),
            Formula::Top => Op::Top,
            Formula::Bot => Op::Bot,
            Formula::Neg(a) => Op::Neg(self.push(a, seen)),
            Formula::Box(a) => Op::Box(self.push(a, seen)),
            Formula::Dia(a) => Op::Dia(self.push(a, seen)),
            Formula::And(a, b) => {
                let (a, b) = (self.push(a, seen), self.push(b, seen));
                Op::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.push(a, seen), self.push(b, seen));
                Op::Or(a, b)
            }
            Formula::Impl(a, b) => {
                let (a, b) = (self.push(a, seen), self.push(b, seen));
                Op::Impl(a, b)
            }
            Formula::Rhd(a, b) => {
                let (a, b) = (self.push(a, seen), self.push(b, seen));
                Op::Rhd(a, b)
            }
        };
        self.ops.push(op);
        let i = self.ops.len() - 1;
        seen.insert(f, i);
        i
    }

    fn letter_index(&self, l: &Letter) -> usize {
        self.letters.binary_search(l).expect("letter collected")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Truth set of the whole formula given one world set per letter.
    pub fn eval<F: Frame + ?Sized>(&self, frame: &F, values: &[WorldSet]) -> WorldSet {
        let mut scratch = Vec::with_capacity(self.ops.len());
        self.eval_with(frame, values, &mut scratch)
    }

    /// As [`Compiled::eval`], reusing `scratch` between calls.
    pub fn eval_with<F: Frame + ?Sized>(
        &self,
        frame: &F,
        values: &[WorldSet],
        scratch: &mut Vec<WorldSet>,
    ) -> WorldSet {
        let n = frame.size();
        let all = WorldSet::full(n);
        scratch.clear();
        for op in &self.ops {
            let t = match *op {
                Op::Letter(i) => values[i].intersection(all),
                Op::Top => all,
                Op::Bot => WorldSet::EMPTY,
                Op::Neg(a) => all.difference(scratch[a]),
                Op::And(a, b) => scratch[a].intersection(scratch[b]),
                Op::Or(a, b) => scratch[a].union(scratch[b]),
                Op::Impl(a, b) => all.difference(scratch[a]).union(scratch[b]),
                Op::Box(a) => {
                    let ta = scratch[a];
                    (0..n)
                        .filter(|&w| frame.successors(w).is_subset(ta))
                        .collect()
                }
                Op::Dia(a) => {
                    let ta = scratch[a];
                    (0..n)
                        .filter(|&w| frame.successors(w).intersects(ta))
                        .collect()
                }
                Op::Rhd(a, b) => {
                    let (ta, tb) = (scratch[a], scratch[b]);
                    (0..n)
                        .filter(|&w| {
                            frame
                                .successors(w)
                                .intersection(ta)
                                .iter()
                                .all(|u| frame.s_meets(w, u, tb))
                        })
                        .collect()
                }
            };
            scratch.push(t);
        }
        *scratch.last().expect("nonempty formula")
    }

    /// Evaluates against a model's valuation; metavariables are rejected.
    pub fn eval_model<F: Frame>(&self, m: &Model<F>) -> Result<WorldSet> {
        let values = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::Atom(a) => Ok(m.valuation.get(a).copied().unwrap_or(WorldSet::EMPTY)),
                Letter::Meta(a) => Err(Error::Metavariable(a.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(&m.frame, &values))
    }
}
