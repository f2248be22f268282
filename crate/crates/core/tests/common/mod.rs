//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ilkit::semantics::{AnyModel, Frame, GeneralFrame, GeneralModel, Model, OrdinaryModel};
use ilkit::{Formula, WorldSet};

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture(name: &str) -> AnyModel {
    AnyModel::from_json(&fixture_text(name)).unwrap()
}

pub fn fig1() -> GeneralModel {
    fixture("fig1.json").into_general().unwrap()
}

pub fn pqr() -> GeneralModel {
    fixture("pqr.json").into_general().unwrap()
}

pub fn chain() -> OrdinaryModel {
    fixture("chain.json").into_ordinary().unwrap()
}

/// Every valuation of `atoms` on `frame`.
pub fn models_over<F: Frame + Clone>(frame: &F, atoms: &[&str]) -> Vec<Model<F>> {
    let n = frame.size();
    let bits = n * atoms.len();
    (0..1u64 << bits)
        .map(|code| {
            let mut m = Model::new(frame.clone());
            for (i, a) in atoms.iter().enumerate() {
                let s = WorldSet((code >> (i * n)) & ((1 << n) - 1));
                m.valuation.insert(a.to_string(), s);
            }
            m
        })
        .collect()
}

/// All formulas over `atoms` (plus `top`, `bot`) with at most `max_size`
/// nodes and modal depth at most `depth`.
pub fn formulas(atoms: &[&str], depth: usize, max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    by_size[1] = atoms
        .iter()
        .map(|a| Formula::atom(a))
        .chain([Formula::Top, Formula::Bot])
        .collect();
    for k in 2..=max_size {
        let mut out = Vec::new();
        for f in &by_size[k - 1] {
            out.push(Formula::neg(f.clone()));
            out.push(Formula::boxed(f.clone()));
            out.push(Formula::dia(f.clone()));
        }
        for i in 1..k - 1 {
            let j = k - 1 - i;
            for l in &by_size[i] {
                for r in &by_size[j] {
                    out.push(Formula::and(l.clone(), r.clone()));
                    out.push(Formula::or(l.clone(), r.clone()));
                    out.push(Formula::implies(l.clone(), r.clone()));
                    out.push(Formula::rhd(l.clone(), r.clone()));
                }
            }
        }
        out.retain(|f| f.modal_depth() <= depth);
        by_size[k] = out;
    }
    by_size.into_iter().flatten().collect()
}

fn truth(m: &GeneralModel, p: &str, w: usize) -> bool {
    m.valuation.get(p).is_some_and(|s| s.contains(w))
}

/// The three bisimulation clauses, read off the definition with explicit
/// quantifier loops over pairs.
pub fn is_bisimulation_oracle(
    m1: &GeneralModel,
    m2: &GeneralModel,
    z: &BTreeSet<(usize, usize)>,
) -> bool {
    if z.is_empty() {
        return false;
    }
    let (f1, f2) = (&m1.frame, &m2.frame);
    let atoms: BTreeSet<&str> = m1.atoms().chain(m2.atoms()).collect();
    let related = |a: usize, b: usize| z.contains(&(a, b));
    for &(w, w2) in z {
        if atoms.iter().any(|p| truth(m1, p, w) != truth(m2, p, w2)) {
            return false;
        }
        for u in f1.r[w] {
            let ok = f2.r[w2].iter().any(|u2| {
                related(u, u2)
                    && f2.images(w2, u2).iter().all(|&v2| {
                        f1.images(w, u)
                            .iter()
                            .any(|&v| v.iter().all(|x| v2.iter().any(|x2| related(x, x2))))
                    })
            });
            if !ok {
                return false;
            }
        }
        for u2 in f2.r[w2] {
            let ok = f1.r[w].iter().any(|u| {
                related(u, u2)
                    && f1.images(w, u).iter().all(|&v| {
                        f2.images(w2, u2)
                            .iter()
                            .any(|&v2| v2.iter().all(|x2| v.iter().any(|x| related(x, x2))))
                    })
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Union of all bisimulations, by enumerating every relation.
pub fn union_of_all_bisimulations(
    m1: &GeneralModel,
    m2: &GeneralModel,
) -> BTreeSet<(usize, usize)> {
    let cells: Vec<(usize, usize)> = (0..m1.frame.size())
        .flat_map(|a| (0..m2.frame.size()).map(move |b| (a, b)))
        .collect();
    assert!(cells.len() <= 16);
    let mut union = BTreeSet::new();
    for code in 1u32..1 << cells.len() {
        let z: BTreeSet<(usize, usize)> = (0..cells.len())
            .filter(|i| code >> i & 1 == 1)
            .map(|i| cells[i])
            .collect();
        if is_bisimulation_oracle(m1, m2, &z) {
            union.extend(z);
        }
    }
    union
}

/// Names a frame by its worlds for assertion messages.
pub fn describe(f: &GeneralFrame) -> String {
    let edges: Vec<String> = (0..f.size())
        .flat_map(|w| f.r[w].iter().map(move |u| format!("{w}R{u}")))
        .collect();
    format!(
        "{} worlds [{}] S pairs {}",
        f.size(),
        edges.join(" "),
        f.s_pair_count()
    )
}
