//! Conversions between ordinary and generalised models that keep forcing
//! intact: singleton and monotone lifting, monotone closure, and the
//! unravelling of a generalised model along S-representatives.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::semantics::{
    validate_general, validate_ordinary, Frame, GeneralFrame, GeneralModel, Model, OrdinaryFrame,
    OrdinaryModel, QtVariant,
};
use crate::worlds::WorldSet;

/// Largest `R[w]` whose subsets the monotone constructions will enumerate.
pub const MAX_MONOTONE_SPAN: usize = 20;

/// Default bound on the number of candidate pairs behind one `SR(x)`.
pub const DEFAULT_SR_POOL: usize = 20;

/// A binary relation over source worlds, as sorted `(u, v)` pairs.
pub type Relation = Vec<(usize, usize)>;

fn require_ordinary(m: &OrdinaryModel) -> Result<()> {
    let rep = validate_ordinary(&m.frame);
    if rep.ok() {
        Ok(())
    } else {
        Err(Error::InvalidModel(rep.render(&m.frame)))
    }
}

fn require_general(m: &GeneralModel) -> Result<()> {
    let rep = validate_general(&m.frame);
    if rep.ok() {
        Ok(())
    } else {
        Err(Error::InvalidModel(rep.render(&m.frame)))
    }
}

fn span_subsets(rw: WorldSet) -> Result<Vec<WorldSet>> {
    if rw.len() > MAX_MONOTONE_SPAN {
        return Err(Error::LimitExceeded {
            what: "subsets of R[w]",
            required: 1u128 << rw.len(),
            limit: 1u128 << MAX_MONOTONE_SPAN,
        });
    }
    Ok(rw.nonempty_subsets())
}

/// Replaces each `u S_w v` by `u S_w {v}`.
///
/// The result is never monotone once some `R[w]` has two members, so
/// variant 2 is refused; use [`lift_monotone`] for it.
pub fn lift_singleton(m: &OrdinaryModel, qt: QtVariant) -> Result<GeneralModel> {
    require_ordinary(m)?;
    if qt.requires_monotonicity() {
        return Err(Error::InvalidInput(
            "singleton lifting is not monotone; use the monotone lifting for variant 2".into(),
        ));
    }
    let src = &m.frame;
    let mut f = GeneralFrame::new(src.worlds.clone(), qt)?;
    f.r = src.r.clone();
    for w in 0..src.size() {
        for u in 0..src.size() {
            for v in src.s[w][u] {
                f.add_s(w, u, WorldSet::singleton(v));
            }
        }
    }
    Ok(Model::with_valuation(f, m.valuation.clone()))
}

/// `u S'_w V` iff `V ⊆ R[w]` is nonempty and meets `S_w[u]`. Variant 2.
pub fn lift_monotone(m: &OrdinaryModel) -> Result<GeneralModel> {
    require_ordinary(m)?;
    let src = &m.frame;
    let mut f = GeneralFrame::new(src.worlds.clone(), QtVariant::default())?;
    f.r = src.r.clone();
    for w in 0..src.size() {
        let rw = src.r[w];
        let subsets = span_subsets(rw)?;
        for u in rw {
            f.s[w][u] = subsets
                .iter()
                .copied()
                .filter(|v| v.intersects(src.s[w][u]))
                .collect();
            f.s[w][u].sort();
        }
    }
    Ok(Model::with_valuation(f, m.valuation.clone()))
}

/// Closes every `S_w` upwards inside `R[w]`. The result has variant 2.
pub fn monotone_closure(m: &GeneralModel) -> Result<GeneralModel> {
    require_general(m)?;
    let src = &m.frame;
    let mut f = GeneralFrame::new(src.worlds.clone(), QtVariant::default())?;
    f.r = src.r.clone();
    for w in 0..src.size() {
        let rw = src.r[w];
        let subsets = span_subsets(rw)?;
        for u in rw {
            let imgs = src.images(w, u);
            if imgs.is_empty() {
                continue;
            }
            f.s[w][u] = subsets
                .iter()
                .copied()
                .filter(|z| imgs.iter().any(|y| y.is_subset(*z)))
                .collect();
            f.s[w][u].sort();
        }
    }
    Ok(Model::with_valuation(f, m.valuation.clone()))
}

/// The S-representatives of `x`: relations `A` that pick a member of every
/// `V` with `x S_u V` (as a pair `(u, v)`), and contain nothing else.
///
/// Ordered by size, then by the bitmask over the candidate pool.
pub fn sr_sets(m: &GeneralModel, x: usize, pool_limit: usize) -> Result<Vec<Relation>> {
    let f = &m.frame;
    if x >= f.size() {
        return Err(Error::UnknownWorld(format!("#{x}")));
    }
    let mut pool: Relation = Vec::new();
    let mut obligations: Vec<(usize, WorldSet)> = Vec::new();
    for u in 0..f.size() {
        let imgs = f.images(u, x);
        let reach = imgs.iter().fold(WorldSet::EMPTY, |acc, v| acc.union(*v));
        pool.extend(reach.iter().map(|v| (u, v)));
        obligations.extend(imgs.iter().map(|v| (u, *v)));
    }
    if pool.len() > pool_limit {
        return Err(Error::LimitExceeded {
            what: "S-representative pool",
            required: pool.len() as u128,
            limit: pool_limit as u128,
        });
    }
    let masks: Vec<u64> = obligations
        .iter()
        .map(|&(u, v)| {
            pool.iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == u && v.contains(b))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut found: Vec<u64> = (0..1u64 << pool.len())
        .filter(|a| masks.iter().all(|m| a & m != 0))
        .collect();
    found.sort_by_key(|a| (a.count_ones(), *a));
    Ok(found
        .into_iter()
        .map(|a| {
            let mut rel: Relation = (0..pool.len())
                .filter(|i| a >> i & 1 == 1)
                .map(|i| pool[i])
                .collect();
            rel.sort();
            rel
        })
        .collect())
}

/// `SR(x)` for every world, indexed by world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrFamily {
    pub sets: Vec<Vec<Relation>>,
}

impl SrFamily {
    pub fn compute(m: &GeneralModel, pool_limit: usize) -> Result<Self> {
        let sets = (0..m.frame.size())
            .map(|x| sr_sets(m, x, pool_limit))
            .collect::<Result<_>>()?;
        Ok(SrFamily { sets })
    }
}

/// An ordinary model built from tagged copies `⟨x, A⟩` of source worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unravelled {
    pub model: OrdinaryModel,
    /// `tags[i]` is the source world and representative of target world `i`.
    pub tags: Vec<(usize, Relation)>,
    /// Source world to its target worlds.
    pub map: Vec<Vec<usize>>,
}

impl Unravelled {
    /// JSON object from source world ids to their tagged copies.
    pub fn map_json(&self, source: &GeneralModel) -> Json {
        let sf = &source.frame;
        let mut out = serde_json::Map::new();
        for (x, targets) in self.map.iter().enumerate() {
            let entries: Vec<Json> = targets
                .iter()
                .map(|&t| {
                    let mut pairs: Vec<(&str, &str)> = self.tags[t]
                        .1
                        .iter()
                        .map(|&(u, v)| (sf.name(u), sf.name(v)))
                        .collect();
                    pairs.sort();
                    json!({ "id": self.model.frame.name(t), "tag": pairs })
                })
                .collect();
            out.insert(sf.name(x).to_owned(), Json::Array(entries));
        }
        Json::Object(out)
    }
}

fn rel_sets(rel: &Relation, n: usize) -> Vec<WorldSet> {
    let mut out = vec![WorldSet::EMPTY; n];
    for &(u, v) in rel {
        out[u].insert(v);
    }
    out
}

/// Unravels a model with quasi-transitivity variant 3 to 6 into an ordinary
/// model whose copies `⟨x, A⟩` of `x` force what `x` forces.
pub fn unravel(m: &GeneralModel, pool_limit: usize) -> Result<Unravelled> {
    let qt = m.frame.qt.get();
    if !(3..=6).contains(&qt) {
        return Err(Error::InvalidInput(format!(
            "unravelling needs quasi-transitivity variant 3 to 6, got {qt}"
        )));
    }
    require_general(m)?;
    let src = &m.frame;
    let n = src.size();
    let fam = SrFamily::compute(m, pool_limit)?;

    let mut tags: Vec<(usize, Relation)> = Vec::new();
    let mut map = vec![Vec::new(); n];
    for (x, reps) in fam.sets.iter().enumerate() {
        if reps.is_empty() {
            map[x].push(tags.len());
            tags.push((x, Vec::new()));
        }
        for a in reps {
            map[x].push(tags.len());
            tags.push((x, a.clone()));
        }
    }
    let size = tags.len();
    if size > crate::worlds::MAX_WORLDS {
        return Err(Error::LimitExceeded {
            what: "unravelled worlds",
            required: size as u128,
            limit: crate::worlds::MAX_WORLDS as u128,
        });
    }

    let sets: Vec<Vec<WorldSet>> = tags.iter().map(|(_, a)| rel_sets(a, n)).collect();
    let preds: Vec<WorldSet> = (0..n)
        .map(|x| (0..n).filter(|&w| src.r[w].contains(x)).collect())
        .collect();
    // ⟨x,A⟩ R' ⟨y,B⟩: xRy and B agrees with A on every R-predecessor of x.
    let r_prime = |i: usize, j: usize| {
        let (x, y) = (tags[i].0, tags[j].0);
        src.r[x].contains(y) && preds[x].iter().all(|w| sets[j][w].is_subset(sets[i][w]))
    };

    let names: Vec<String> = map
        .iter()
        .enumerate()
        .flat_map(|(x, ts)| (0..ts.len()).map(move |k| format!("{}#{k}", src.name(x))))
        .collect();
    let mut f = OrdinaryFrame::new(names)?;
    for i in 0..size {
        for j in 0..size {
            if r_prime(i, j) {
                f.add_r(i, j);
            }
        }
    }
    for c in 0..size {
        let w = tags[c].0;
        let rc = f.r[c];
        for i in rc {
            for j in rc {
                if sets[j][w].is_subset(sets[i][w]) {
                    f.add_s(c, i, j);
                }
            }
        }
    }
    let valuation = m
        .valuation
        .iter()
        .map(|(p, s)| {
            let t: WorldSet = (0..size).filter(|&i| s.contains(tags[i].0)).collect();
            (p.clone(), t)
        })
        .collect();
    Ok(Unravelled {
        model: Model::with_valuation(f, valuation),
        tags,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::fixtures::{four_leaves, two_witness};

    fn chain3() -> OrdinaryModel {
        let names = ["a", "b", "c"].map(String::from).to_vec();
        let mut f = OrdinaryFrame::new(names).unwrap();
        f.add_r(0, 1);
        f.add_r(0, 2);
        f.add_r(1, 2);
        f.add_s(0, 1, 1);
        f.add_s(0, 2, 2);
        f.add_s(0, 1, 2);
        f.add_s(1, 2, 2);
        let mut m = Model::new(f);
        m.set_atom("p", &["b"]).unwrap();
        m.set_atom("q", &["c"]).unwrap();
        m
    }

    #[test]
    fn singleton_lift_shapes() {
        let m = chain3();
        let g = lift_singleton(&m, QtVariant::new(8).unwrap()).unwrap();
        assert_eq!(
            g.frame.images(0, 1),
            [WorldSet::singleton(1), WorldSet::singleton(2)]
        );
        for k in [1, 3, 4, 5, 6, 7, 8] {
            let g = lift_singleton(&m, QtVariant::new(k).unwrap()).unwrap();
            assert!(validate_general(&g.frame).ok(), "variant {k}");
        }
        assert!(lift_singleton(&m, QtVariant::STANDARD).is_err());
    }

    #[test]
    fn monotone_lift_matches_closure_of_singletons() {
        let m = chain3();
        let lifted = lift_monotone(&m).unwrap();
        assert!(validate_general(&lifted.frame).ok());
        let closed =
            monotone_closure(&lift_singleton(&m, QtVariant::new(1).unwrap()).unwrap()).unwrap();
        assert_eq!(closed, lifted);
        let f = parse("p |> q").unwrap();
        assert!(lifted.forces("a", &f).unwrap());
        assert!(m.forces("a", &f).unwrap());
    }

    #[test]
    fn closure_of_four_leaves_keeps_verdict() {
        let m = four_leaves();
        let c = monotone_closure(&m).unwrap();
        assert!(validate_general(&c.frame).ok());
        assert!(c.frame.has_s(0, 1, WorldSet::from_iter([2, 3])));
        assert!(c.forces("w", &parse("~(p |> q)").unwrap()).unwrap());
        assert_eq!(monotone_closure(&c).unwrap(), c);
    }

    #[test]
    fn sr_sets_cover_obligations() {
        let m = two_witness();
        let u = m.frame.index_of("u").unwrap();
        let reps = sr_sets(&m, u, DEFAULT_SR_POOL).unwrap();
        assert!(!reps.is_empty());
        for a in &reps {
            for w in 0..m.frame.size() {
                for v in m.frame.images(w, u) {
                    assert!(a.iter().any(|&(x, y)| x == w && v.contains(y)));
                }
            }
        }
        let w = m.frame.index_of("w").unwrap();
        assert_eq!(sr_sets(&m, w, DEFAULT_SR_POOL).unwrap(), vec![Vec::new()]);
    }

    #[test]
    fn unravel_refuses_variant_two() {
        assert!(matches!(
            unravel(&two_witness(), DEFAULT_SR_POOL),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn unravel_single_world() {
        let f = GeneralFrame::new(vec!["a".into()], QtVariant::new(6).unwrap()).unwrap();
        let mut m = Model::new(f);
        m.set_atom("p", &["a"]).unwrap();
        let u = unravel(&m, DEFAULT_SR_POOL).unwrap();
        assert_eq!(u.model.frame.worlds, ["a#0"]);
        assert_eq!(u.map, vec![vec![0]]);
        assert!(u
            .model
            .forces("a#0", &parse("p /\\ []bot").unwrap())
            .unwrap());
    }

    #[test]
    fn unravel_output_is_ordinary() {
        let m = lift_singleton(&chain3(), QtVariant::new(4).unwrap()).unwrap();
        let u = unravel(&m, DEFAULT_SR_POOL).unwrap();
        assert!(validate_ordinary(&u.model.frame).ok());
        let f = parse("p |> q").unwrap();
        for (x, ts) in u.map.iter().enumerate() {
            for &t in ts {
                assert_eq!(
                    m.forces_at(x, &f).unwrap(),
                    u.model.forces_at(t, &f).unwrap()
                );
            }
        }
        let js = u.map_json(&m);
        assert!(js["a"].is_array());
    }
}
