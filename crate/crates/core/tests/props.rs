//! Property tests for syntax, schemes, world sets and model files.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ilkit::formula::{instantiate, match_scheme, parse, Substitution};
use ilkit::semantics::{AnyModel, QtVariant};
use ilkit::toolbench::{random_general_model, random_ordinary_model};
use ilkit::{Formula, WorldSet};

fn leaf(names: &'static [&'static str], meta: bool) -> BoxedStrategy<Formula> {
    let name = prop::sample::select(names);
    let var = if meta {
        name.prop_map(Formula::meta).boxed()
    } else {
        name.prop_map(Formula::atom).boxed()
    };
    prop_oneof![4 => var, 1 => Just(Formula::Top), 1 => Just(Formula::Bot)].boxed()
}

fn tree(base: BoxedStrategy<Formula>) -> impl Strategy<Value = Formula> {
    base.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::dia),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::rhd(a, b)),
        ]
    })
}

fn ground() -> impl Strategy<Value = Formula> {
    tree(leaf(&["p", "q", "r"], false))
}

fn schemes() -> impl Strategy<Value = Formula> {
    tree(leaf(&["A", "B", "C"], true))
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in ground()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn schemes_render_and_parse(f in schemes()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn match_recovers_substitution(
        s in schemes(),
        a in ground(), b in ground(), c in ground(),
    ) {
        let sub: Substitution = [("A", a), ("B", b), ("C", c)]
            .into_iter()
            .filter(|(k, _)| s.metavariables().contains(*k))
            .map(|(k, f)| (k.to_owned(), f))
            .collect();
        let inst = instantiate(&s, &sub).unwrap();
        prop_assert!(inst.is_ground());
        let found = match_scheme(&s, &inst).expect("instance matches its scheme");
        prop_assert_eq!(&found, &sub);
        prop_assert_eq!(instantiate(&s, &found).unwrap(), inst);
    }

    #[test]
    fn desugared_formulas_are_kernel(f in ground()) {
        let d = f.desugar().unwrap();
        prop_assert!(d.is_kernel());
        prop_assert_eq!(d.atoms(), f.atoms());
    }

    #[test]
    fn world_set_algebra(a in 0u64..256, b in 0u64..256) {
        let (x, y) = (WorldSet(a), WorldSet(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.difference(y).is_subset(x));
        prop_assert!(!x.difference(y).intersects(y));
        prop_assert_eq!(x.iter().collect::<WorldSet>(), x);
        prop_assert_eq!(x.nonempty_subsets().len(), (1usize << x.len()) - 1);
        prop_assert!(x.nonempty_subsets().iter().all(|s| !s.is_empty() && s.is_subset(x)));
    }

    #[test]
    fn general_model_file_round_trip(seed in any::<u64>(), n in 1usize..5, k in 1u8..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_general_model(&mut rng, n, &["p", "q"], QtVariant::new(k).unwrap());
        let back = AnyModel::from_json(&AnyModel::General(m.clone()).to_json()).unwrap();
        prop_assert_eq!(back.into_general().unwrap(), m);
    }

    #[test]
    fn ordinary_model_file_round_trip(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_ordinary_model(&mut rng, n, &["p"]);
        let back = AnyModel::from_json(&AnyModel::Ordinary(m.clone()).to_json()).unwrap();
        prop_assert_eq!(back.into_ordinary().unwrap(), m);
    }
}
