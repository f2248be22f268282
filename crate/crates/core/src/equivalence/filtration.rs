use serde_json::{Map, Value as Json};

use super::largest_bisimulation;
use crate::error::{Error, Result};
use crate::formula::AdequateSet;
use crate::semantics::{validate_general, Frame, GeneralFrame, GeneralModel, Model};
use crate::transform::MAX_MONOTONE_SPAN;
use crate::worlds::WorldSet;

/// A partition of the worlds of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Class index of each source world.
    pub class_of: Vec<usize>,
    /// Members of each class, classes ordered by their first member.
    pub classes: Vec<WorldSet>,
    /// Each class is named by the lexicographically least member id.
    pub names: Vec<String>,
}

impl Quotient {
    fn from_classes(m: &GeneralModel, classes: Vec<WorldSet>) -> Self {
        let mut class_of = vec![0; m.frame.size()];
        for (i, c) in classes.iter().enumerate() {
            for w in *c {
                class_of[w] = i;
            }
        }
        let names = classes
            .iter()
            .map(|c| c.iter().map(|w| m.frame.name(w)).min().unwrap().to_owned())
            .collect();
        Quotient {
            class_of,
            classes,
            names,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Source world id to class name.
    pub fn map_json(&self, m: &GeneralModel) -> Json {
        let obj: Map<String, Json> = (0..m.frame.size())
            .map(|w| {
                (
                    m.frame.name(w).to_owned(),
                    Json::String(self.names[self.class_of[w]].clone()),
                )
            })
            .collect();
        Json::Object(obj)
    }
}

/// Classes of the largest bisimulation of `m` with itself. Fails if that
/// relation is not an equivalence.
pub fn auto_bisimulation_classes(m: &GeneralModel) -> Result<Quotient> {
    let z = largest_bisimulation(m, m);
    let n = m.frame.size();
    for w in 0..n {
        if !z.contains(w, w) {
            return Err(Error::InvalidModel(format!(
                "auto-bisimulation is not reflexive at `{}`",
                m.frame.name(w)
            )));
        }
        for v in z.z[w] {
            if !z.contains(v, w) || !z.z[v].is_subset(z.z[w]) {
                return Err(Error::InvalidModel(format!(
                    "auto-bisimulation is not an equivalence at `{}`",
                    m.frame.name(w)
                )));
            }
        }
    }
    let mut classes: Vec<WorldSet> = Vec::new();
    for w in 0..n {
        if !classes.iter().any(|c| c.contains(w)) {
            classes.push(z.z[w]);
        }
    }
    Ok(Quotient::from_classes(m, classes))
}

/// Edges on the longest `R`-path.
pub fn longest_chain<F: Frame>(f: &F) -> usize {
    let n = f.size();
    let mut memo: Vec<Option<usize>> = vec![None; n];
    fn depth<F: Frame>(f: &F, w: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[w] {
            return d;
        }
        let d = f
            .successors(w)
            .iter()
            .map(|u| 1 + depth(f, u, memo))
            .max()
            .unwrap_or(0);
        memo[w] = Some(d);
        d
    }
    (0..n).map(|w| depth(f, w, &mut memo)).max().unwrap_or(0)
}

/// Filtration of `m` through `gamma` over the classes of its largest
/// auto-bisimulation.
///
/// `[w] R [u]` when some members satisfy `w R u` and some boxed member of
/// `gamma` fails at `w` and holds at `u`. `[u] S_[w] V` when `[w] R [u]`,
/// `V ⊆ R[[w]]`, and every `u' S_w' V'` obligation between members has a
/// witness whose classes lie in `V`. Atoms of `gamma` keep their truth
/// values; other atoms are dropped.
pub fn filtrate(m: &GeneralModel, gamma: &AdequateSet) -> Result<(GeneralModel, Quotient)> {
    if !m.frame.qt.requires_monotonicity() {
        return Err(Error::InvalidInput(format!(
            "filtration needs quasi-transitivity variant 2, got {}",
            m.frame.qt
        )));
    }
    let rep = validate_general(&m.frame);
    if !rep.ok() {
        return Err(Error::InvalidModel(rep.render(&m.frame)));
    }
    let q = auto_bisimulation_classes(m)?;
    let f = &m.frame;
    let k = q.len();

    let boxes: Vec<WorldSet> = gamma
        .boxed_formulas()
        .map(|b| m.truth_set(b))
        .collect::<Result<_>>()?;
    let mut r = vec![WorldSet::EMPTY; k];
    for w in 0..f.size() {
        for u in f.r[w] {
            if boxes.iter().any(|t| !t.contains(w) && t.contains(u)) {
                r[q.class_of[w]].insert(q.class_of[u]);
            }
        }
    }

    let classes_of = |v: WorldSet| -> WorldSet { v.iter().map(|x| q.class_of[x]).collect() };
    let mut out = GeneralFrame::new(q.names.clone(), f.qt)?;
    out.r = r.clone();
    for c in 0..k {
        if r[c].len() > MAX_MONOTONE_SPAN {
            return Err(Error::LimitExceeded {
                what: "subsets of a filtrated R-image",
                required: 1u128 << r[c].len(),
                limit: 1u128 << MAX_MONOTONE_SPAN,
            });
        }
        let candidates = r[c].nonempty_subsets();
        for d in r[c] {
            // image class-sets of every member pair w' R u'
            let obligations: Vec<Vec<WorldSet>> = q.classes[c]
                .iter()
                .flat_map(|w| {
                    f.r[w]
                        .intersection(q.classes[d])
                        .iter()
                        .map(move |u| (w, u))
                })
                .map(|(w, u)| f.images(w, u).iter().map(|&v| classes_of(v)).collect())
                .collect();
            out.s[c][d] = candidates
                .iter()
                .copied()
                .filter(|&vt| {
                    obligations
                        .iter()
                        .all(|imgs| imgs.iter().any(|i| i.is_subset(vt)))
                })
                .collect();
            out.s[c][d].sort();
        }
    }

    let atoms = gamma.atoms();
    let valuation = m
        .valuation
        .iter()
        .filter(|(p, _)| atoms.contains(*p))
        .map(|(p, s)| {
            (
                p.clone(),
                (0..k)
                    .filter(|&c| s.contains(q.classes[c].first().unwrap()))
                    .collect(),
            )
        })
        .collect();
    Ok((Model::with_valuation(out, valuation), q))
}
