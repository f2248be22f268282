use std::collections::BTreeMap;

use super::Formula;
use crate::error::{Error, Result};

/// Images of metavariables under instantiation.
pub type Substitution = BTreeMap<String, Formula>;

/// Replaces every metavariable in `scheme` by its (ground) image.
pub fn instantiate(scheme: &Formula, s: &Substitution) -> Result<Formula> {
    for img in s.values() {
        img.ensure_ground()?;
    }
    subst(scheme, s)
}

fn subst(f: &Formula, s: &Substitution) -> Result<Formula> {
    let bx = |g: &Formula| subst(g, s).map(Box::new);
    Ok(match f {
        Formula::Meta(m) => s
            .get(m)
            .cloned()
            .ok_or_else(|| Error::MissingSubstitution(m.clone()))?,
        Formula::Atom(_) | Formula::Top | Formula::Bot => f.clone(),
        Formula::Neg(g) => Formula::Neg(bx(g)?),
        Formula::Box(g) => Formula::Box(bx(g)?),
        Formula::Dia(g) => Formula::Dia(bx(g)?),
        Formula::And(l, r) => Formula::And(bx(l)?, bx(r)?),
        Formula::Or(l, r) => Formula::Or(bx(l)?, bx(r)?),
        Formula::Impl(l, r) => Formula::Impl(bx(l)?, bx(r)?),
        Formula::Rhd(l, r) => Formula::Rhd(bx(l)?, bx(r)?),
    })
}

/// Syntactic matching of a scheme against a ground formula. Repeated
/// metavariables must match equal subtrees.
pub fn match_scheme(scheme: &Formula, f: &Formula) -> Option<Substitution> {
    let mut s = Substitution::new();
    go(scheme, f, &mut s).then_some(s)
}

fn go(scheme: &Formula, f: &Formula, s: &mut Substitution) -> bool {
    match (scheme, f) {
        (Formula::Meta(m), g) => {
            if !g.is_ground() {
                return false;
            }
            match s.get(m) {
                Some(prev) => prev == g,
                None => {
                    s.insert(m.clone(), g.clone());
                    true
                }
            }
        }
        (Formula::Atom(a), Formula::Atom(b)) => a == b,
        (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => true,
        (Formula::Neg(a), Formula::Neg(b))
        | (Formula::Box(a), Formula::Box(b))
        | (Formula::Dia(a), Formula::Dia(b)) => go(a, b, s),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Impl(a1, a2), Formula::Impl(b1, b2))
        | (Formula::Rhd(a1, a2), Formula::Rhd(b1, b2)) => go(a1, b1, s) && go(a2, b2, s),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn sub(pairs: &[(&str, &str)]) -> Substitution {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse(v).unwrap()))
            .collect()
    }

    #[test]
    fn instantiate_examples() {
        let j5 = parse("<>A |> A").unwrap();
        assert_eq!(
            instantiate(&j5, &sub(&[("A", "p")])).unwrap(),
            parse("<>p |> p").unwrap()
        );
        assert_eq!(
            instantiate(&parse("A").unwrap(), &sub(&[("A", "top")])).unwrap(),
            Formula::Top
        );
        let m = parse("A |> B -> A /\\ []C |> B /\\ []C").unwrap();
        assert_eq!(
            instantiate(&m, &sub(&[("A", "p"), ("B", "q"), ("C", "r")])).unwrap(),
            parse("p |> q -> p /\\ []r |> q /\\ []r").unwrap()
        );
    }

    #[test]
    fn instantiate_requires_total_ground_substitution() {
        let j5 = parse("<>A |> A").unwrap();
        assert_eq!(
            instantiate(&j5, &Substitution::new()),
            Err(Error::MissingSubstitution("A".into()))
        );
        assert!(instantiate(&j5, &sub(&[("A", "B")])).is_err());
    }

    #[test]
    fn match_examples() {
        let j2 = parse("(A |> B) /\\ (B |> C) -> A |> C").unwrap();
        let f = parse("(p |> q) /\\ (q |> r) -> p |> r").unwrap();
        assert_eq!(
            match_scheme(&j2, &f),
            Some(sub(&[("A", "p"), ("B", "q"), ("C", "r")]))
        );
        let j1 = parse("[](A -> B) -> A |> B").unwrap();
        assert_eq!(match_scheme(&j1, &parse("p |> q").unwrap()), None);
        let j3 = parse("(A |> C) /\\ (B |> C) -> A \\/ B |> C").unwrap();
        let g = parse("(p |> q) /\\ (r |> s) -> p \\/ r |> q").unwrap();
        assert_eq!(match_scheme(&j3, &g), None);
    }
}
