//! Separation and countermodel search with re-checked witnesses.

use ilkit::conditions::{check_general, ConditionId};
use ilkit::formula::parse;
use ilkit::proof::scheme;
use ilkit::semantics::{validate_general, AnyModel, Limits};
use ilkit::toolbench::{find_countermodel, find_separating_frame, SearchBounds, SearchOutcome};

fn bounds(max_worlds: usize) -> SearchBounds {
    SearchBounds {
        max_worlds,
        ..Default::default()
    }
}

#[test]
fn separations_reproduce_after_round_trip() {
    use ConditionId::*;
    for (holds, fails) in [(KM1gen, Mgen), (M0gen, Mgen), (Pgen, Mgen), (Mgen, Pgen)] {
        let out = find_separating_frame(holds, fails, &bounds(4)).unwrap();
        let w = out
            .witness()
            .unwrap_or_else(|| panic!("{holds}/{fails}: {out:?}"));
        let text = AnyModel::General(w.model.clone()).to_json();
        let back = AnyModel::from_json(&text).unwrap().into_general().unwrap();
        assert!(validate_general(&back.frame).ok());
        let l = Limits::default();
        assert!(check_general(&back.frame, holds, &l).unwrap().holds);
        assert!(!check_general(&back.frame, fails, &l).unwrap().holds);
    }
}

#[test]
fn countermodel_forces_negation() {
    let f = parse("p |> q -> (p /\\ []r) |> (q /\\ []r)").unwrap();
    assert!(ilkit::formula::match_scheme(&scheme("M").unwrap(), &f).is_some());
    let out = find_countermodel(&f, &[ConditionId::Pgen], &bounds(4)).unwrap();
    let w = out.witness().expect("P does not give M");
    let text = AnyModel::General(w.model.clone()).to_json();
    let back = AnyModel::from_json(&text).unwrap().into_general().unwrap();
    assert!(!back.forces_at(w.world.unwrap(), &f).unwrap());
    assert!(
        check_general(&back.frame, ConditionId::Pgen, &Limits::default())
            .unwrap()
            .holds
    );
}

#[test]
fn theorems_exhaust() {
    let out = find_countermodel(&parse("p |> p").unwrap(), &[], &bounds(3)).unwrap();
    assert!(matches!(out, SearchOutcome::ExhaustedWithinBounds { .. }));
    let out = find_separating_frame(ConditionId::Mgen, ConditionId::Mgen, &bounds(3)).unwrap();
    assert!(matches!(out, SearchOutcome::ExhaustedWithinBounds { .. }));
}

#[test]
fn frame_budget_is_reported() {
    let b = SearchBounds {
        max_frames_examined: 3,
        ..bounds(4)
    };
    let out = find_countermodel(&parse("p |> p").unwrap(), &[], &b).unwrap();
    assert!(matches!(
        out,
        SearchOutcome::BudgetExceeded {
            frames_examined: 3,
            ..
        }
    ));
}

#[test]
fn ordinary_conditions_are_refused() {
    assert!(find_separating_frame(ConditionId::Mord, ConditionId::Mgen, &bounds(2)).is_err());
}
