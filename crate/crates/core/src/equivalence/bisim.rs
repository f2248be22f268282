use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::semantics::{Frame, GeneralModel};
use crate::worlds::WorldSet;

/// A relation `Z ⊆ W × W'`; `z[w]` holds the worlds of the right model
/// related to `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisimulation {
    pub z: Vec<WorldSet>,
}

impl Bisimulation {
    pub fn contains(&self, w: usize, w2: usize) -> bool {
        self.z[w].contains(w2)
    }

    pub fn is_empty(&self) -> bool {
        self.z.iter().all(|s| s.is_empty())
    }

    pub fn len(&self) -> usize {
        self.z.iter().map(|s| s.len()).sum()
    }

    /// Pairs in index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.z
            .iter()
            .enumerate()
            .flat_map(|(w, s)| s.iter().map(move |v| (w, v)))
            .collect()
    }

    /// Pairs as `(left id, right id)`, sorted by name.
    pub fn named_pairs(&self, left: &GeneralModel, right: &GeneralModel) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| (left.frame.name(a).into(), right.frame.name(b).into()))
            .collect();
        out.sort();
        out
    }

    /// `{ w : w Z w2 }`.
    pub fn column(&self, w2: usize) -> WorldSet {
        (0..self.z.len())
            .filter(|&w| self.z[w].contains(w2))
            .collect()
    }
}

/// Maximal `n`-bisimulation `Z_n ⊆ ... ⊆ Z_0`; `levels[i]` is `Z_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NBisimulation {
    pub levels: Vec<Bisimulation>,
}

impl NBisimulation {
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    /// Whether `w` and `w2` are related by `Z_n`.
    pub fn related(&self, w: usize, w2: usize) -> bool {
        self.levels[self.n()].contains(w, w2)
    }
}

fn vocabulary(m1: &GeneralModel, m2: &GeneralModel) -> BTreeSet<String> {
    m1.atoms().chain(m2.atoms()).map(str::to_owned).collect()
}

fn atom_agreement(m1: &GeneralModel, m2: &GeneralModel) -> Vec<WorldSet> {
    let vocab = vocabulary(m1, m2);
    let truth =
        |m: &GeneralModel, p: &str, w: usize| m.valuation.get(p).is_some_and(|s| s.contains(w));
    (0..m1.frame.size())
        .map(|w| {
            (0..m2.frame.size())
                .filter(|&v| vocab.iter().all(|p| truth(m1, p, w) == truth(m2, p, v)))
                .collect()
        })
        .collect()
}

/// Pairs of `z` satisfying (forth) and (back) measured against `z` itself.
fn refine(m1: &GeneralModel, m2: &GeneralModel, z: &[WorldSet]) -> Vec<WorldSet> {
    let (f1, f2) = (&m1.frame, &m2.frame);
    let zinv: Vec<WorldSet> = (0..f2.size())
        .map(|v| (0..f1.size()).filter(|&w| z[w].contains(v)).collect())
        .collect();
    let pre = |s: WorldSet| s.iter().fold(WorldSet::EMPTY, |a, v| a.union(zinv[v]));
    let post = |s: WorldSet| s.iter().fold(WorldSet::EMPTY, |a, v| a.union(z[v]));

    let forth = |w: usize, w2: usize| {
        f1.r[w].iter().all(|u| {
            f2.r[w2].intersection(z[u]).iter().any(|u2| {
                f2.images(w2, u2)
                    .iter()
                    .all(|&v2| f1.has_s_within(w, u, pre(v2)))
            })
        })
    };
    let back = |w: usize, w2: usize| {
        f2.r[w2].iter().all(|u2| {
            f1.r[w].intersection(zinv[u2]).iter().any(|u| {
                f1.images(w, u)
                    .iter()
                    .all(|&v| f2.has_s_within(w2, u2, post(v)))
            })
        })
    };
    crate::parallel::install(|| {
        (0..f1.size())
            .into_par_iter()
            .map(|w| {
                z[w].iter()
                    .filter(|&w2| forth(w, w2) && back(w, w2))
                    .collect()
            })
            .collect()
    })
}

/// Greatest fixpoint of the forth/back refinement, starting from atom
/// agreement over the joint vocabulary. Empty when no bisimulation exists.
pub fn largest_bisimulation(m1: &GeneralModel, m2: &GeneralModel) -> Bisimulation {
    let mut z = atom_agreement(m1, m2);
    loop {
        let next = refine(m1, m2, &z);
        if next == z {
            return Bisimulation { z };
        }
        z = next;
    }
}

/// Maximal `n`-bisimulation: `Z_0` is atom agreement and `Z_{i+1}` keeps the
/// pairs of `Z_i` passing one forth/back round against `Z_i`.
pub fn n_bisimulation(m1: &GeneralModel, m2: &GeneralModel, n: usize) -> NBisimulation {
    let mut levels = vec![Bisimulation {
        z: atom_agreement(m1, m2),
    }];
    for _ in 0..n {
        let z = refine(m1, m2, &levels.last().unwrap().z);
        levels.push(Bisimulation { z });
    }
    NBisimulation { levels }
}

/// Direct check of the three clauses on a nonempty relation.
pub fn is_bisimulation(m1: &GeneralModel, m2: &GeneralModel, z: &Bisimulation) -> bool {
    if z.z.len() != m1.frame.size() || z.is_empty() {
        return false;
    }
    let agree = atom_agreement(m1, m2);
    z.z.iter().zip(&agree).all(|(s, a)| s.is_subset(*a)) && refine(m1, m2, &z.z) == z.z
}
