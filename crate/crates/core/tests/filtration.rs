//! Filtration through the largest auto-bisimulation.

mod common;

use ilkit::equivalence::{auto_bisimulation_classes, filtrate, longest_chain};
use ilkit::formula::{adequate_set, close_seed, parse, AdequateSet};
use ilkit::semantics::{validate_general, GeneralModel, QtVariant};
use ilkit::toolbench::random_general_model;
use ilkit::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gamma(seed: &[&str]) -> AdequateSet {
    let fs: Vec<_> = seed.iter().map(|s| parse(s).unwrap()).collect();
    adequate_set(&close_seed(&fs)).unwrap()
}

fn truth_lemma(m: &GeneralModel, g: &AdequateSet) -> usize {
    let (fm, q) = filtrate(m, g).unwrap();
    let rep = validate_general(&fm.frame);
    assert!(rep.ok(), "{}", rep.render(&fm.frame));
    assert!(fm.frame.worlds.len() <= m.frame.worlds.len());
    assert!(longest_chain(&fm.frame) <= g.boxed_formulas().count());
    for a in g.formulas() {
        let src = m.truth_set(a).unwrap();
        let tgt = fm.truth_set(a).unwrap();
        for w in 0..m.frame.worlds.len() {
            assert_eq!(src.contains(w), tgt.contains(q.class_of[w]), "{a}");
        }
    }
    q.len()
}

#[test]
fn truth_lemma_on_fixture() {
    let g = gamma(&["p |> q", "p |> r", "p |> q \\/ r"]);
    truth_lemma(&common::pqr(), &g);
}

#[test]
fn truth_lemma_on_random_models() {
    let g = gamma(&["p |> q"]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut shrunk = 0;
    for _ in 0..100 {
        let m = random_general_model(&mut rng, 4, &["p", "q"], QtVariant::STANDARD);
        if truth_lemma(&m, &g) < 4 {
            shrunk += 1;
        }
    }
    assert!(shrunk > 0);
}

#[test]
fn classes_form_a_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let m = random_general_model(&mut rng, 5, &["p"], QtVariant::STANDARD);
        let q = auto_bisimulation_classes(&m).unwrap();
        let mut seen = ilkit::WorldSet::EMPTY;
        for c in &q.classes {
            assert!(!c.is_empty() && !c.intersects(seen));
            seen = seen.union(*c);
        }
        assert_eq!(seen.len(), 5);
        for (i, name) in q.names.iter().enumerate() {
            let least = q.classes[i]
                .iter()
                .map(|w| m.frame.worlds[w].clone())
                .min()
                .unwrap();
            assert_eq!(*name, least);
        }
    }
}

#[test]
fn atoms_outside_gamma_are_dropped() {
    let (fm, _) = filtrate(&common::pqr(), &gamma(&["p"])).unwrap();
    assert!(fm.valuation.contains_key("p"));
    assert!(!fm.valuation.contains_key("q"));
}

#[test]
fn other_variants_are_refused() {
    assert!(matches!(
        filtrate(&common::fig1(), &gamma(&["p"])),
        Err(Error::InvalidInput(_))
    ));
}
