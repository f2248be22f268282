//! Bounded modal equivalence.
//!
//! Over a finite vocabulary every formula of depth at most `k` has a truth set
//! that is a union of depth-`k` equivalence classes, and every such union is
//! definable at depth `k`. So two worlds agree on all formulas of depth
//! `k + 1` iff they agree on the atoms and on every `X |> Y` where `X` is one
//! class and `Y` a union of classes. Iterating this refines the joint
//! partition of both models level by level. When there are too many classes
//! to try every union, a fixed-seed sample of unions is used and the result
//! is flagged as not exhaustive.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::semantics::{Frame, Model};
use crate::worlds::WorldSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceCaps {
    /// Largest class count for which all unions are tried (at most 20).
    pub max_classes: usize,
    /// Unions sampled per level beyond that.
    pub samples: usize,
    pub seed: u64,
}

impl Default for EquivalenceCaps {
    fn default() -> Self {
        EquivalenceCaps {
            max_classes: 12,
            samples: 4096,
            seed: 0,
        }
    }
}

/// Depth-`n` equivalence classes of the worlds of two models, numbered
/// jointly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalTypes {
    pub depth: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// False when some level used sampled unions; the partition may then be
    /// coarser than true equivalence.
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub depth: usize,
    pub exhaustive: bool,
    pub caps: EquivalenceCaps,
}

/// Atoms valued in either model.
pub fn full_vocabulary<F1: Frame, F2: Frame>(m1: &Model<F1>, m2: &Model<F2>) -> BTreeSet<String> {
    m1.atoms().chain(m2.atoms()).map(str::to_owned).collect()
}

fn number<K: std::hash::Hash + Eq>(keys: Vec<K>) -> (Vec<usize>, usize) {
    let mut ids = HashMap::new();
    let out = keys
        .into_iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k).or_insert(next)
        })
        .collect();
    (out, ids.len())
}

/// For each world `w` of `m`: the class of `w` followed by, for each class
/// `K` and each union `ys[j]`, whether every `K`-successor of `w` has an
/// `S_w`-image inside the union.
fn profiles<F: Frame>(m: &Model<F>, class: &[usize], c: usize, ys: &[u64]) -> Vec<Vec<u64>> {
    let f = &m.frame;
    let members: Vec<WorldSet> = (0..c)
        .map(|k| (0..f.size()).filter(|&w| class[w] == k).collect())
        .collect();
    let targets: Vec<WorldSet> = ys
        .iter()
        .map(|&y| {
            (0..c)
                .filter(|k| y >> k & 1 == 1)
                .fold(WorldSet::EMPTY, |a, k| a.union(members[k]))
        })
        .collect();
    let words = (c * ys.len()).div_ceil(64);
    (0..f.size())
        .map(|w| {
            let mut bits = vec![u64::MAX; words];
            for u in f.successors(w) {
                let k = class[u];
                for (j, t) in targets.iter().enumerate() {
                    if !f.s_meets(w, u, *t) {
                        let b = k * ys.len() + j;
                        bits[b / 64] &= !(1 << (b % 64));
                    }
                }
            }
            let mut key = vec![class[w] as u64];
            key.extend(bits);
            key
        })
        .collect()
}

/// Joint depth-`n` classes of `m1` and `m2` over `vocabulary`.
pub fn modal_types<F1: Frame, F2: Frame>(
    m1: &Model<F1>,
    m2: &Model<F2>,
    n: usize,
    vocabulary: &BTreeSet<String>,
    caps: EquivalenceCaps,
) -> ModalTypes {
    let n1 = m1.frame.size();
    let atom_key = |val: &std::collections::BTreeMap<String, WorldSet>, w: usize| -> Vec<u64> {
        vocabulary
            .iter()
            .map(|p| val.get(p).is_some_and(|s| s.contains(w)) as u64)
            .collect()
    };
    let keys: Vec<Vec<u64>> = (0..n1)
        .map(|w| atom_key(&m1.valuation, w))
        .chain((0..m2.frame.size()).map(|w| atom_key(&m2.valuation, w)))
        .collect();
    let (mut class, mut c) = number(keys);
    let mut exhaustive = true;
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);

    for _ in 0..n {
        let ys: Vec<u64> = if c <= caps.max_classes.min(20) {
            (0..1u64 << c).collect()
        } else {
            exhaustive = false;
            (0..caps.samples)
                .map(|_| rng.gen::<u64>() & low_bits(c))
                .collect()
        };
        let mut keys = profiles(m1, &class[..n1], c, &ys);
        keys.extend(profiles(m2, &class[n1..], c, &ys));
        let (next, nc) = number(keys);
        let stable = nc == c;
        class = next;
        c = nc;
        if stable && exhaustive {
            break;
        }
    }
    ModalTypes {
        depth: n,
        right: class.split_off(n1),
        left: class,
        exhaustive,
    }
}

fn low_bits(c: usize) -> u64 {
    if c >= 64 {
        u64::MAX
    } else {
        (1u64 << c) - 1
    }
}

/// Whether `w` in `m1` and `w2` in `m2` agree on every formula over
/// `vocabulary` of modal depth at most `n`.
pub fn modally_equivalent_up_to<F1: Frame, F2: Frame>(
    m1: &Model<F1>,
    w: usize,
    m2: &Model<F2>,
    w2: usize,
    n: usize,
    vocabulary: &BTreeSet<String>,
    caps: EquivalenceCaps,
) -> Result<EquivalenceVerdict> {
    if w >= m1.frame.size() {
        return Err(Error::UnknownWorld(format!("#{w}")));
    }
    if w2 >= m2.frame.size() {
        return Err(Error::UnknownWorld(format!("#{w2}")));
    }
    let t = modal_types(m1, m2, n, vocabulary, caps);
    Ok(EquivalenceVerdict {
        equivalent: t.left[w] == t.right[w2],
        depth: n,
        exhaustive: t.exhaustive,
        caps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::fixtures::four_leaves;

    #[test]
    fn same_world_is_equivalent() {
        let m = four_leaves();
        let v = full_vocabulary(&m, &m);
        for w in 0..m.frame.size() {
            let r =
                modally_equivalent_up_to(&m, w, &m, w, 3, &v, EquivalenceCaps::default()).unwrap();
            assert!(r.equivalent && r.exhaustive);
        }
    }

    #[test]
    fn separating_formula_splits_classes() {
        let m = four_leaves();
        let mut other = m.clone();
        // v0 S_w {v2} makes w force p |> q
        other.frame.add_s(0, 1, WorldSet::singleton(3));
        let f = parse("p |> q").unwrap();
        assert_ne!(m.forces("w", &f).unwrap(), other.forces("w", &f).unwrap());
        let v = full_vocabulary(&m, &other);
        let caps = EquivalenceCaps::default();
        assert!(
            !modally_equivalent_up_to(&m, 0, &other, 0, 1, &v, caps)
                .unwrap()
                .equivalent
        );
        assert!(
            modally_equivalent_up_to(&m, 0, &other, 0, 0, &v, caps)
                .unwrap()
                .equivalent
        );
    }

    #[test]
    fn sampling_is_flagged() {
        let m = four_leaves();
        let v = full_vocabulary(&m, &m);
        let caps = EquivalenceCaps {
            max_classes: 1,
            ..EquivalenceCaps::default()
        };
        assert!(!modal_types(&m, &m, 2, &v, caps).exhaustive);
    }
}
