use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{parse, Formula};

/// Axiom schemes of the base logic, in the order they are usually listed.
pub const BASE_AXIOMS: [&str; 8] = ["L1", "L2", "L3", "J1", "J2", "J3", "J4", "J5"];

/// Principle ids with a fixed scheme; `Rn:<n>` is generated on demand.
pub const PRINCIPLES: [&str; 12] = [
    "M", "P", "W", "KW1", "KW1_0", "F", "M0", "W*", "P0", "R", "KM1", "KM2",
];

fn text(id: &str) -> Option<&'static str> {
    Some(match id {
        "L1" => "[](A -> B) -> ([]A -> []B)",
        "L2" => "[]A -> [][]A",
        "L3" => "[]([]A -> A) -> []A",
        "J1" => "[](A -> B) -> A |> B",
        "J2" => "(A |> B) /\\ (B |> C) -> A |> C",
        "J3" => "(A |> C) /\\ (B |> C) -> A \\/ B |> C",
        "J4" => "A |> B -> (<>A -> <>B)",
        "J5" => "<>A |> A",
        "M" => "A |> B -> A /\\ []C |> B /\\ []C",
        "P" => "A |> B -> [](A |> B)",
        "W" => "A |> B -> A |> B /\\ []~A",
        "KW1" => "A |> <>top -> top |> ~A",
        "KW1_0" => "A /\\ B |> <>A -> A |> A /\\ ~B",
        "F" => "A |> <>A -> []~A",
        "M0" => "A |> B -> <>A /\\ []C |> B /\\ []C",
        "W*" => "A |> B -> B /\\ []C |> B /\\ []C /\\ []~A",
        "P0" => "A |> <>B -> [](A |> B)",
        "R" => "A |> B -> ~(A |> ~C) |> B /\\ []C",
        "KM1" => "A |> <>B -> [](A -> <>B)",
        "KM2" => "A |> B -> ([](B -> <>C) -> [](A -> <>C))",
        _ => return None,
    })
}

fn d(i: usize) -> Formula {
    Formula::meta(&format!("D{i}"))
}

/// `U_1 = <>~(D1 |> ~C)`, `U_{k+1} = <>((D_k |> D_{k+1}) /\ U_k)`.
fn u(n: usize) -> Formula {
    let mut acc = Formula::dia(Formula::neg(Formula::rhd(
        d(1),
        Formula::neg(Formula::meta("C")),
    )));
    for k in 1..n {
        acc = Formula::dia(Formula::and(Formula::rhd(d(k), d(k + 1)), acc));
    }
    acc
}

/// The scheme `Rⁿ` of the broad series; `R⁰` is `R`.
pub fn rn_scheme(n: usize) -> Formula {
    if n == 0 {
        return parse(text("R").unwrap()).unwrap();
    }
    let a = || Formula::meta("A");
    let b = || Formula::meta("B");
    Formula::implies(
        Formula::rhd(a(), b()),
        Formula::rhd(
            Formula::and(u(n), Formula::rhd(d(n), a())),
            Formula::and(b(), Formula::boxed(Formula::meta("C"))),
        ),
    )
}

/// Scheme for a base axiom or principle id, including `Rn:<n>`.
pub fn scheme(id: &str) -> Result<Formula> {
    if let Some(t) = text(id) {
        return Ok(parse(t).expect("catalog schemes parse"));
    }
    if let Some(n) = id.strip_prefix("Rn:") {
        let n: usize = n.parse().map_err(|_| Error::UnknownId(id.to_owned()))?;
        if n > crate::conditions::MAX_RN {
            return Err(Error::LimitExceeded {
                what: "Rn parameter",
                required: n as u128,
                limit: crate::conditions::MAX_RN as u128,
            });
        }
        return Ok(rn_scheme(n));
    }
    Err(Error::UnknownId(id.to_owned()))
}

/// Every fixed scheme: base axioms and principles.
pub fn scheme_catalog() -> BTreeMap<String, Formula> {
    BASE_AXIOMS
        .iter()
        .chain(PRINCIPLES.iter())
        .map(|id| (id.to_string(), scheme(id).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_and_r() {
        assert_eq!(scheme("F").unwrap().to_string(), "A |> <>A -> []~A");
        assert_eq!(
            scheme("R").unwrap().to_string(),
            "A |> B -> ~(A |> ~C) |> B /\\ []C"
        );
    }

    #[test]
    fn broad_series() {
        assert_eq!(
            scheme("Rn:1").unwrap(),
            parse("A |> B -> <>~(D1 |> ~C) /\\ (D1 |> A) |> B /\\ []C").unwrap()
        );
        assert_eq!(
            scheme("Rn:2").unwrap(),
            parse("A |> B -> <>((D1 |> D2) /\\ <>~(D1 |> ~C)) /\\ (D2 |> A) |> B /\\ []C").unwrap()
        );
        assert_eq!(
            scheme("Rn:3").unwrap(),
            parse(
                "A |> B -> <>((D2 |> D3) /\\ <>((D1 |> D2) /\\ <>~(D1 |> ~C))) /\\ (D3 |> A) |> B /\\ []C"
            )
            .unwrap()
        );
        let r0 = scheme("Rn:0").unwrap();
        assert_eq!(r0, scheme("R").unwrap());
        assert!(r0.metavariables().iter().all(|m| !m.starts_with('D')));
    }

    #[test]
    fn unknown_ids() {
        for id in ["X", "Rn:", "Rn:a", "Rn:1000"] {
            assert!(scheme(id).is_err(), "{id}");
        }
        assert_eq!(scheme_catalog().len(), 20);
    }
}
