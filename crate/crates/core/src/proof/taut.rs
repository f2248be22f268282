use std::collections::BTreeMap;

use crate::formula::Formula;

/// Largest number of opaque letters a truth table is built for.
pub const MAX_LETTERS: usize = 24;

/// Propositional skeleton with modal subformulas as letters.
enum Prop {
    Var(usize),
    Const(bool),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Impl(Box<Prop>, Box<Prop>),
}

/// `<>A` becomes `~[]~A` so both spellings name the same letter.
fn normalise(f: &Formula) -> Formula {
    match f {
        Formula::Dia(a) => Formula::neg(Formula::boxed(Formula::neg(normalise(a)))),
        Formula::Neg(a) => Formula::neg(normalise(a)),
        Formula::Box(a) => Formula::boxed(normalise(a)),
        Formula::And(a, b) => Formula::and(normalise(a), normalise(b)),
        Formula::Or(a, b) => Formula::or(normalise(a), normalise(b)),
        Formula::Impl(a, b) => Formula::implies(normalise(a), normalise(b)),
        Formula::Rhd(a, b) => Formula::rhd(normalise(a), normalise(b)),
        _ => f.clone(),
    }
}

fn skeleton(f: &Formula, letters: &mut BTreeMap<Formula, usize>) -> Prop {
    match f {
        Formula::Top => Prop::Const(true),
        Formula::Bot => Prop::Const(false),
        Formula::Neg(a) => Prop::Not(Box::new(skeleton(a, letters))),
        Formula::And(a, b) => Prop::And(
            Box::new(skeleton(a, letters)),
            Box::new(skeleton(b, letters)),
        ),
        Formula::Or(a, b) => Prop::Or(
            Box::new(skeleton(a, letters)),
            Box::new(skeleton(b, letters)),
        ),
        Formula::Impl(a, b) => Prop::Impl(
            Box::new(skeleton(a, letters)),
            Box::new(skeleton(b, letters)),
        ),
        _ => {
            let next = letters.len();
            Prop::Var(*letters.entry(f.clone()).or_insert(next))
        }
    }
}

fn eval(p: &Prop, row: u32) -> bool {
    match p {
        Prop::Var(i) => row >> i & 1 == 1,
        Prop::Const(b) => *b,
        Prop::Not(a) => !eval(a, row),
        Prop::And(a, b) => eval(a, row) && eval(b, row),
        Prop::Or(a, b) => eval(a, row) || eval(b, row),
        Prop::Impl(a, b) => !eval(a, row) || eval(b, row),
    }
}

/// Whether `f` is a propositional tautology once its maximal modal
/// subformulas are read as letters. `None` when the table would be too big.
pub fn is_tautology(f: &Formula) -> Option<bool> {
    let mut letters = BTreeMap::new();
    let p = skeleton(&normalise(f), &mut letters);
    if letters.len() > MAX_LETTERS {
        return None;
    }
    Some((0..1u32 << letters.len()).all(|row| eval(&p, row)))
}
