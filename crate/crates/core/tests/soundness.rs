//! The base axioms hold on every enumerated generalised frame.

use ilkit::proof::{scheme, BASE_AXIOMS};
use ilkit::semantics::{frame_valid_scheme, Limits, QtVariant};
use ilkit::toolbench::{enumerate_frames, SearchBounds};

#[test]
fn base_axioms_valid_for_every_variant() {
    let schemes: Vec<_> = BASE_AXIOMS.iter().map(|id| scheme(id).unwrap()).collect();
    for qt in QtVariant::all() {
        let b = SearchBounds {
            max_worlds: 3,
            qt,
            ..Default::default()
        };
        let mut count = 0;
        for f in enumerate_frames(&b) {
            count += 1;
            for (id, s) in BASE_AXIOMS.iter().zip(&schemes) {
                let v = frame_valid_scheme(&f, s, &Limits::default()).unwrap();
                assert!(v.is_valid(), "{id} fails for variant {qt}");
            }
        }
        assert!(count > 0);
    }
}

#[test]
fn principles_are_not_all_valid() {
    let b = SearchBounds {
        max_worlds: 3,
        ..Default::default()
    };
    let w = scheme("W").unwrap();
    assert!(
        enumerate_frames(&b).any(|f| !frame_valid_scheme(&f, &w, &Limits::default())
            .unwrap()
            .is_valid())
    );
}
