//! Formula syntax: AST, concrete grammar, closures and schemes.
//!
//! One grammar serves both ground formulas and schemes: lowercase names are
//! propositional atoms, uppercase names are metavariables.

mod closure;
mod parse;
mod scheme;

use std::collections::BTreeSet;
use std::fmt;

pub use closure::{adequate_set, close_seed, is_seed_closed, subformulas, AdequateSet};
pub use parse::parse;
pub use scheme::{instantiate, match_scheme, Substitution};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Meta(String),
    Top,
    Bot,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
    Rhd(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_owned())
    }

    pub fn meta(name: &str) -> Self {
        Formula::Meta(name.to_owned())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Impl(Box::new(l), Box::new(r))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn dia(f: Formula) -> Self {
        Formula::Dia(Box::new(f))
    }

    pub fn rhd(l: Formula, r: Formula) -> Self {
        Formula::Rhd(Box::new(l), Box::new(r))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => vec![],
            Formula::Neg(f) | Formula::Box(f) | Formula::Dia(f) => vec![f],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) | Formula::Rhd(l, r) => {
                vec![l, r]
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Meta(_) => false,
            _ => self.children().into_iter().all(Formula::is_ground),
        }
    }

    /// Fails with the first metavariable found, if any.
    pub fn ensure_ground(&self) -> Result<()> {
        match self.metavariables().into_iter().next() {
            Some(m) => Err(Error::Metavariable(m)),
            None => Ok(()),
        }
    }

    pub fn metavariables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out, true);
        out
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out, false);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>, metas: bool) {
        match self {
            Formula::Atom(a) if !metas => {
                out.insert(a.clone());
            }
            Formula::Meta(m) if metas => {
                out.insert(m.clone());
            }
            _ => self
                .children()
                .into_iter()
                .for_each(|c| c.collect_names(out, metas)),
        }
    }

    /// Nesting depth of the modal operators. A triangle counts as one level
    /// above the deeper of its two sides.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => 0,
            Formula::Neg(f) => f.modal_depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Box(f) | Formula::Dia(f) => f.modal_depth() + 1,
            Formula::Rhd(l, r) => l.modal_depth().max(r.modal_depth()) + 1,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    /// `B` if the formula is `~B`, otherwise `~A`.
    pub fn single_negation(&self) -> Formula {
        match self {
            Formula::Neg(b) => (**b).clone(),
            f => Formula::neg(f.clone()),
        }
    }

    /// Rewrite into the triangle-only kernel: `<>A` becomes `~(A |> bot)` and
    /// `[]A` becomes `(single negation of A) |> bot`.
    pub fn desugar(&self) -> Result<Formula> {
        if !self.is_ground() {
            return Err(Error::SchemeDesugar);
        }
        Ok(self.desugar_unchecked())
    }

    fn desugar_unchecked(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Meta(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::Neg(f) => Formula::neg(f.desugar_unchecked()),
            Formula::And(l, r) => Formula::and(l.desugar_unchecked(), r.desugar_unchecked()),
            Formula::Or(l, r) => Formula::or(l.desugar_unchecked(), r.desugar_unchecked()),
            Formula::Impl(l, r) => Formula::implies(l.desugar_unchecked(), r.desugar_unchecked()),
            Formula::Rhd(l, r) => Formula::rhd(l.desugar_unchecked(), r.desugar_unchecked()),
            Formula::Dia(f) => Formula::neg(Formula::rhd(f.desugar_unchecked(), Formula::Bot)),
            Formula::Box(f) => Formula::rhd(f.desugar_unchecked().single_negation(), Formula::Bot),
        }
    }

    /// True for formulas without `[]` and `<>`.
    pub fn is_kernel(&self) -> bool {
        match self {
            Formula::Box(_) | Formula::Dia(_) => false,
            _ => self.children().into_iter().all(Formula::is_kernel),
        }
    }

    /// Binding strength used by the printer: higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Impl(..) => 1,
            Formula::Rhd(..) => 2,
            Formula::And(..) | Formula::Or(..) => 3,
            Formula::Neg(_) | Formula::Box(_) | Formula::Dia(_) => 4,
            _ => 5,
        }
    }
}

/// Renders with the minimal parentheses the grammar needs to read the
/// formula back identically.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, g: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        }
        match self {
            Formula::Atom(a) | Formula::Meta(a) => write!(f, "{a}"),
            Formula::Top => write!(f, "top"),
            Formula::Bot => write!(f, "bot"),
            Formula::Neg(g) | Formula::Box(g) | Formula::Dia(g) => {
                let op = match self {
                    Formula::Neg(_) => "~",
                    Formula::Box(_) => "[]",
                    _ => "<>",
                };
                write!(f, "{op}")?;
                wrap(f, g, g.precedence() < 4)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let is_and = matches!(self, Formula::And(..));
                let op = if is_and { "/\\" } else { "\\/" };
                let left_ok = match &**l {
                    Formula::And(..) => is_and,
                    Formula::Or(..) => !is_and,
                    g => g.precedence() > 3,
                };
                wrap(f, l, !left_ok)?;
                write!(f, " {op} ")?;
                wrap(f, r, r.precedence() <= 3)
            }
            Formula::Rhd(l, r) => {
                wrap(f, l, l.precedence() <= 2)?;
                write!(f, " |> ")?;
                wrap(f, r, r.precedence() <= 2)
            }
            Formula::Impl(l, r) => {
                wrap(f, l, l.precedence() <= 1)?;
                write!(f, " -> ")?;
                wrap(f, r, r.precedence() < 1)
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn render_examples() {
        assert_eq!(Formula::rhd(p(), q()).to_string(), "p |> q");
        let a = Formula::meta("A");
        let b = Formula::meta("B");
        let c = Formula::meta("C");
        let f = Formula::implies(Formula::rhd(a.clone(), b), Formula::rhd(a, c));
        assert_eq!(f.to_string(), "A |> B -> A |> C");
        assert_eq!(
            Formula::neg(Formula::rhd(p(), q())).to_string(),
            "~(p |> q)"
        );
    }

    #[test]
    fn render_bool_associativity() {
        let r = Formula::atom("r");
        let left = Formula::and(Formula::and(p(), q()), r.clone());
        assert_eq!(left.to_string(), "p /\\ q /\\ r");
        let right = Formula::and(p(), Formula::and(q(), r.clone()));
        assert_eq!(right.to_string(), "p /\\ (q /\\ r)");
        let mixed = Formula::or(Formula::and(p(), q()), r);
        assert_eq!(mixed.to_string(), "(p /\\ q) \\/ r");
        let imp = Formula::implies(Formula::implies(p(), q()), p());
        assert_eq!(imp.to_string(), "(p -> q) -> p");
    }

    #[test]
    fn single_negation_examples() {
        assert_eq!(Formula::neg(p()).single_negation(), p());
        assert_eq!(p().single_negation(), Formula::neg(p()));
        assert_eq!(
            Formula::neg(Formula::neg(p())).single_negation(),
            Formula::neg(p())
        );
        assert_eq!(Formula::Top.single_negation(), Formula::neg(Formula::Top));
    }

    #[test]
    fn desugar_examples() {
        assert_eq!(
            Formula::boxed(Formula::neg(p())).desugar().unwrap(),
            Formula::rhd(p(), Formula::Bot)
        );
        assert_eq!(
            Formula::dia(p()).desugar().unwrap(),
            Formula::neg(Formula::rhd(p(), Formula::Bot))
        );
        assert_eq!(
            Formula::rhd(p(), q()).desugar().unwrap(),
            Formula::rhd(p(), q())
        );
        assert_eq!(
            Formula::boxed(Formula::meta("A")).desugar(),
            Err(Error::SchemeDesugar)
        );
    }

    #[test]
    fn desugar_is_idempotent() {
        let f = parse("[](<>p -> [] q) |> ~[]r").unwrap();
        let once = f.desugar().unwrap();
        assert!(once.is_kernel());
        assert_eq!(once.desugar().unwrap(), once);
    }

    #[test]
    fn modal_depth_examples() {
        assert_eq!(p().modal_depth(), 0);
        assert_eq!(Formula::rhd(p(), q()).modal_depth(), 1);
        let f = Formula::dia(Formula::rhd(p(), Formula::dia(q())));
        assert_eq!(f.modal_depth(), 3);
    }

    #[test]
    fn names() {
        let f = parse("A |> p -> B /\\ q").unwrap();
        assert!(!f.is_ground());
        assert_eq!(
            f.metavariables().into_iter().collect::<Vec<_>>(),
            ["A", "B"]
        );
        assert_eq!(f.atoms().into_iter().collect::<Vec<_>>(), ["p", "q"]);
        assert_eq!(f.ensure_ground(), Err(Error::Metavariable("A".into())));
    }
}
