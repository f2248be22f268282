use std::collections::BTreeMap;

use rand::Rng;

use crate::semantics::{
    validate_general, validate_ordinary, GeneralFrame, GeneralModel, Model, OrdinaryFrame,
    OrdinaryModel, QtVariant,
};
use crate::worlds::WorldSet;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

/// Transitive closure of random forward edges, so acyclic by construction.
fn random_order<G: Rng>(rng: &mut G, n: usize, density: f64) -> Vec<WorldSet> {
    let mut r = vec![WorldSet::EMPTY; n];
    for a in (0..n).rev() {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                let reach = r[b].with(b);
                r[a] = r[a].union(reach);
            }
        }
    }
    r
}

fn random_valuation<G: Rng>(rng: &mut G, n: usize, atoms: &[&str]) -> BTreeMap<String, WorldSet> {
    atoms
        .iter()
        .map(|a| {
            (
                a.to_string(),
                WorldSet(rng.gen::<u64>()).intersection(WorldSet::full(n)),
            )
        })
        .collect()
}

/// Random legal ordinary model.
pub fn random_ordinary_model<G: Rng>(rng: &mut G, n: usize, atoms: &[&str]) -> OrdinaryModel {
    let mut f = OrdinaryFrame::new(names(n)).expect("small carrier");
    f.r = random_order(rng, n, 0.5);
    for w in 0..n {
        let rw = f.r[w];
        for u in rw.iter() {
            f.s[w][u] = f.r[u].with(u).intersection(rw);
            for v in rw.iter() {
                if rng.gen_bool(0.25) {
                    f.s[w][u].insert(v);
                }
            }
        }
        loop {
            let mut changed = false;
            for u in rw.iter() {
                let reach = f.s[w][u]
                    .iter()
                    .fold(f.s[w][u], |acc, v| acc.union(f.s[w][v]));
                if reach != f.s[w][u] {
                    f.s[w][u] = reach;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    debug_assert!(validate_ordinary(&f).ok());
    let valuation = random_valuation(rng, n, atoms);
    Model::with_valuation(f, valuation)
}

/// Closes `S_w` of `f` under the quasi-transitivity shape for `qt`: unions of
/// chosen images for variants 1 and 2 (plus supersets for 2), images of
/// members otherwise.
fn close(f: &mut GeneralFrame, w: usize, qt: QtVariant) {
    let rw = f.r[w];
    loop {
        let mut added = Vec::new();
        for u in rw.iter() {
            for &y in f.images(w, u) {
                if qt.get() <= 2 {
                    let mut unions = vec![WorldSet::EMPTY];
                    for v in y.iter() {
                        unions = unions
                            .iter()
                            .flat_map(|a| f.images(w, v).iter().map(move |i| a.union(*i)))
                            .collect();
                    }
                    added.extend(unions.into_iter().map(|z| (u, z)));
                } else {
                    for v in y.iter() {
                        added.extend(f.images(w, v).iter().map(|&z| (u, z)));
                    }
                }
                if qt.requires_monotonicity() {
                    for z in rw.subsets_by_size() {
                        if y.is_subset(z) {
                            added.push((u, z));
                        }
                    }
                }
            }
        }
        let mut changed = false;
        for (u, z) in added {
            if !z.is_empty() {
                changed |= f.add_s(w, u, z);
            }
        }
        if !changed {
            return;
        }
    }
}

/// Random legal generalised model for variant `qt`.
pub fn random_general_model<G: Rng>(
    rng: &mut G,
    n: usize,
    atoms: &[&str],
    qt: QtVariant,
) -> GeneralModel {
    let mut f = GeneralFrame::new(names(n), qt).expect("small carrier");
    f.r = random_order(rng, n, 0.5);
    for w in 0..n {
        let rw = f.r[w];
        for u in rw.iter() {
            f.add_s(w, u, WorldSet::singleton(u));
            for v in f.r[u].iter() {
                f.add_s(w, u, WorldSet::singleton(v));
            }
            for z in rw.nonempty_subsets() {
                if rng.gen_bool(0.15) {
                    f.add_s(w, u, z);
                }
            }
        }
        close(&mut f, w, qt);
    }
    debug_assert!(validate_general(&f).ok(), "{:?}", validate_general(&f));
    let valuation = random_valuation(rng, n, atoms);
    Model::with_valuation(f, valuation)
}
