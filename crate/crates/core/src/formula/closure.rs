use std::collections::BTreeSet;

use super::Formula;
use crate::error::{Error, Result};

/// The smallest subformula-closed set containing `f`.
pub fn subformulas(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        if out.insert(g.clone()) {
            stack.extend(g.children());
        }
    }
    out
}

/// Closes `fs ∪ {top}` under subformulas and single negation.
pub fn close_seed<'a, I>(fs: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut out = BTreeSet::new();
    let mut work: Vec<Formula> = fs.into_iter().cloned().collect();
    work.push(Formula::Top);
    while let Some(f) = work.pop() {
        if out.contains(&f) {
            continue;
        }
        work.extend(f.children().into_iter().cloned());
        work.push(f.single_negation());
        out.insert(f);
    }
    out
}

/// Whether `d` contains `top` and is closed under subformulas and single negation.
pub fn is_seed_closed(d: &BTreeSet<Formula>) -> bool {
    d.contains(&Formula::Top)
        && d.iter().all(|f| {
            d.contains(&f.single_negation()) && f.children().into_iter().all(|c| d.contains(c))
        })
}

/// A finite formula set suitable for filtration, stored in triangle-only
/// kernel syntax together with the seed it was generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdequateSet {
    seed: BTreeSet<Formula>,
    formulas: BTreeSet<Formula>,
}

impl AdequateSet {
    pub fn seed(&self) -> &BTreeSet<Formula> {
        &self.seed
    }

    /// Members in kernel syntax.
    pub fn formulas(&self) -> &BTreeSet<Formula> {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// Membership modulo desugaring, so surface formulas such as `[]~p` can be
    /// queried directly.
    pub fn contains(&self, f: &Formula) -> bool {
        f.desugar().is_ok_and(|k| self.formulas.contains(&k))
    }

    /// Members of the form `X |> bot`, i.e. the kernel rendering of `[]~X`.
    pub fn boxed_formulas(&self) -> impl Iterator<Item = &Formula> {
        self.formulas
            .iter()
            .filter(|f| matches!(f, Formula::Rhd(_, r) if **r == Formula::Bot))
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.formulas.iter().flat_map(Formula::atoms).collect()
    }
}

/// Builds the least adequate set over the seed `d`.
///
/// The seed must already be closed (see [`close_seed`]). Members are stored
/// desugared. The boxed negations `[]~A` required for each seed member count
/// as triangle formulas, so their components join the pool used for pairing.
pub fn adequate_set(d: &BTreeSet<Formula>) -> Result<AdequateSet> {
    if !is_seed_closed(d) {
        return Err(Error::InvalidInput(
            "seed set is not closed under subformulas and single negation, or lacks top".into(),
        ));
    }
    let mut kernel_seed = BTreeSet::new();
    for f in d {
        kernel_seed.insert(f.desugar()?);
    }

    let mut gamma: BTreeSet<Formula> = BTreeSet::new();
    let mut work: Vec<Formula> = kernel_seed.iter().cloned().collect();
    work.push(Formula::rhd(Formula::Bot, Formula::Bot));
    for a in &kernel_seed {
        work.push(Formula::rhd(a.clone(), Formula::Bot));
    }

    loop {
        while let Some(f) = work.pop() {
            if gamma.contains(&f) {
                continue;
            }
            work.extend(f.children().into_iter().cloned());
            work.push(f.single_negation());
            gamma.insert(f);
        }
        let pool: BTreeSet<&Formula> = gamma
            .iter()
            .filter_map(|f| match f {
                Formula::Rhd(l, r) => Some([&**l, &**r]),
                _ => None,
            })
            .flatten()
            .collect();
        for a in &pool {
            for b in &pool {
                let pair = Formula::rhd((*a).clone(), (*b).clone());
                if !gamma.contains(&pair) {
                    work.push(pair);
                }
            }
        }
        if work.is_empty() {
            break;
        }
    }

    Ok(AdequateSet {
        seed: d.clone(),
        formulas: gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn set(fs: &[&str]) -> BTreeSet<Formula> {
        fs.iter().map(|s| parse(s).unwrap()).collect()
    }

    #[test]
    fn subformula_examples() {
        assert_eq!(
            subformulas(&parse("p |> q").unwrap()),
            set(&["p |> q", "p", "q"])
        );
        assert_eq!(
            subformulas(&parse("p -> []q").unwrap()),
            set(&["p -> []q", "p", "[]q", "q"])
        );
        assert_eq!(
            subformulas(&parse("~~p").unwrap()),
            set(&["~~p", "~p", "p"])
        );
    }

    #[test]
    fn close_seed_examples() {
        let seed = [parse("p |> q").unwrap()];
        assert_eq!(
            close_seed(&seed),
            set(&["top", "~top", "p |> q", "~(p |> q)", "p", "~p", "q", "~q"])
        );
        assert_eq!(close_seed(&[]), set(&["top", "~top"]));
        assert_eq!(
            close_seed(&[parse("~p").unwrap()]),
            set(&["top", "~top", "~p", "p"])
        );
    }

    #[test]
    fn adequate_rejects_unclosed_seed() {
        assert!(adequate_set(&set(&["p |> q"])).is_err());
        assert!(adequate_set(&set(&["top"])).is_err());
    }

    #[test]
    fn adequate_trivial_seed() {
        let g = adequate_set(&close_seed(&[])).unwrap();
        assert!(g.contains(&parse("bot |> bot").unwrap()));
        assert!(g.contains(&parse("[]~top").unwrap()));
        assert!(g.contains(&parse("[]~~top").unwrap()));
        // pool is {bot, top, ~top}; every ordered pair is present
        for a in ["bot", "top", "~top"] {
            for b in ["bot", "top", "~top"] {
                assert!(g.contains(&parse(&format!("({a}) |> ({b})")).unwrap()));
            }
        }
    }

    #[test]
    fn adequate_symmetrises_pool() {
        let g = adequate_set(&close_seed(&[parse("p |> q").unwrap()])).unwrap();
        assert!(g.contains(&parse("q |> p").unwrap()));
        assert!(g.contains(&parse("~(q |> p)").unwrap()));
        assert!(g.formulas().iter().all(Formula::is_kernel));
    }
}
