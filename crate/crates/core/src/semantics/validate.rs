use std::collections::BTreeSet;
use std::fmt;

use super::{Frame, GeneralFrame, OrdinaryFrame, QtVariant, Witness};
use crate::worlds::WorldSet;

/// A well-formedness requirement on ordinary or generalised frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameCondition {
    RTransitive,
    RIrreflexive,
    RAcyclic,
    /// `S_w ⊆ R[w] × R[w]`.
    OrdDomain,
    OrdReflexive,
    OrdTransitive,
    /// `u, v ∈ R[w]` and `uRv` imply `u S_w v`.
    OrdContainsR,
    /// Condition a): domain and nonempty images inside `R[w]`.
    GenDomain,
    /// Condition b): quasi-reflexivity.
    GenQuasiReflexive,
    /// Condition c) in the numbered variant.
    GenQuasiTransitive(QtVariant),
    /// Condition d).
    GenSuccessor,
    /// Condition e): monotonicity.
    GenMonotone,
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameCondition::RTransitive => write!(f, "R-transitivity"),
            FrameCondition::RIrreflexive => write!(f, "R-irreflexivity"),
            FrameCondition::RAcyclic => write!(f, "R-acyclicity"),
            FrameCondition::OrdDomain => write!(f, "S_w within R[w]xR[w]"),
            FrameCondition::OrdReflexive => write!(f, "S_w reflexive on R[w]"),
            FrameCondition::OrdTransitive => write!(f, "S_w transitive"),
            FrameCondition::OrdContainsR => write!(f, "R restricted to R[w] within S_w"),
            FrameCondition::GenDomain => write!(f, "condition a"),
            FrameCondition::GenQuasiReflexive => write!(f, "condition b"),
            FrameCondition::GenQuasiTransitive(k) => write!(f, "condition c{k}"),
            FrameCondition::GenSuccessor => write!(f, "condition d"),
            FrameCondition::GenMonotone => write!(f, "condition e"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: FrameCondition,
    pub witness: Witness,
}

/// Outcome of validation: at most one violation per condition, each with
/// the least witness in index order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, c: FrameCondition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    fn record(&mut self, condition: FrameCondition, witness: Option<Witness>) {
        if let Some(witness) = witness {
            self.violations.push(Violation { condition, witness });
        }
    }

    pub fn render<F: Frame + ?Sized>(&self, frame: &F) -> String {
        self.violations
            .iter()
            .map(|v| format!("violation: {} ({})", v.condition, v.witness.render(frame)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn check_r<F: Frame>(frame: &F, report: &mut ValidationReport) {
    let n = frame.size();
    let transitive = (0..n).find_map(|a| {
        frame.successors(a).iter().find_map(|b| {
            frame
                .successors(b)
                .iter()
                .find(|&c| !frame.successors(a).contains(c))
                .map(|c| Witness::new().world("x", a).world("y", b).world("z", c))
        })
    });
    report.record(FrameCondition::RTransitive, transitive);

    let reflexive = (0..n)
        .find(|&w| frame.successors(w).contains(w))
        .map(|w| Witness::new().world("x", w));
    report.record(FrameCondition::RIrreflexive, reflexive);

    report.record(
        FrameCondition::RAcyclic,
        find_cycle(frame).map(|c| Witness::new().path("cycle", c)),
    );
}

/// Shortest cycle through the least world lying on one.
fn find_cycle<F: Frame>(frame: &F) -> Option<Vec<usize>> {
    let n = frame.size();
    for start in 0..n {
        let mut parent = vec![usize::MAX; n];
        let mut seen = WorldSet::EMPTY;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in frame.successors(x).iter() {
                if y == start {
                    let mut path = vec![x];
                    let mut cur = x;
                    while cur != start {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen.contains(y) {
                    seen.insert(y);
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
    }
    None
}

pub fn validate_ordinary(f: &OrdinaryFrame) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_r(f, &mut report);
    let n = f.size();
    let wuv = || (0..n).flat_map(move |w| (0..n).flat_map(move |u| (0..n).map(move |v| (w, u, v))));
    let t = |w, u, v| Witness::new().world("w", w).world("u", u).world("v", v);

    let domain = wuv()
        .find(|&(w, u, v)| f.has_s(w, u, v) && !(f.r[w].contains(u) && f.r[w].contains(v)))
        .map(|(w, u, v)| t(w, u, v));
    report.record(FrameCondition::OrdDomain, domain);

    let refl = (0..n)
        .flat_map(|w| f.r[w].iter().map(move |u| (w, u)))
        .find(|&(w, u)| !f.has_s(w, u, u))
        .map(|(w, u)| Witness::new().world("w", w).world("u", u));
    report.record(FrameCondition::OrdReflexive, refl);

    let trans = wuv().find_map(|(w, u, v)| {
        if !f.has_s(w, u, v) {
            return None;
        }
        f.s[w][v]
            .iter()
            .find(|&z| !f.has_s(w, u, z))
            .map(|z| t(w, u, v).world("z", z))
    });
    report.record(FrameCondition::OrdTransitive, trans);

    let contains_r = wuv()
        .find(|&(w, u, v)| {
            f.r[w].contains(u) && f.r[w].contains(v) && f.r[u].contains(v) && !f.has_s(w, u, v)
        })
        .map(|(w, u, v)| t(w, u, v));
    report.record(FrameCondition::OrdContainsR, contains_r);
    report
}

pub fn validate_general(f: &GeneralFrame) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_r(f, &mut report);
    let n = f.size();

    let domain = f
        .s_triples()
        .find(|&(w, u, v)| v.is_empty() || !f.r[w].contains(u) || !v.is_subset(f.r[w]))
        .map(|(w, u, v)| Witness::new().world("w", w).world("u", u).set("V", v));
    report.record(FrameCondition::GenDomain, domain);

    let qr = (0..n)
        .flat_map(|w| f.r[w].iter().map(move |u| (w, u)))
        .find(|&(w, u)| !f.has_s(w, u, WorldSet::singleton(u)))
        .map(|(w, u)| Witness::new().world("w", w).world("u", u));
    report.record(FrameCondition::GenQuasiReflexive, qr);

    report.record(
        FrameCondition::GenQuasiTransitive(f.qt),
        quasi_transitivity_violation(f, f.qt),
    );

    let succ = (0..n)
        .flat_map(|w| {
            f.r[w]
                .iter()
                .flat_map(move |u| f.r[u].iter().map(move |v| (w, u, v)))
        })
        .find(|&(w, u, v)| !f.has_s(w, u, WorldSet::singleton(v)))
        .map(|(w, u, v)| Witness::new().world("w", w).world("u", u).world("v", v));
    report.record(FrameCondition::GenSuccessor, succ);

    if f.qt.requires_monotonicity() {
        report.record(FrameCondition::GenMonotone, monotonicity_violation(f));
    }
    report
}

fn monotonicity_violation(f: &GeneralFrame) -> Option<Witness> {
    f.s_triples().find_map(|(w, u, v)| {
        f.r[w]
            .subsets_by_size()
            .into_iter()
            .find(|&z| v.is_subset(z) && !f.has_s(w, u, z))
            .map(|z| {
                Witness::new()
                    .world("w", w)
                    .world("u", u)
                    .set("V", v)
                    .set("Z", z)
            })
    })
}

/// Unions `⋃ Y_y` over all families picking one `S_x`-image for each
/// `y ∈ Y`; `None` when some `y` has no image (the family quantifier is
/// then empty).
fn family_unions(f: &GeneralFrame, x: usize, y: WorldSet) -> Option<BTreeSet<WorldSet>> {
    let mut acc = BTreeSet::from([WorldSet::EMPTY]);
    for v in y.iter() {
        let imgs = f.images(x, v);
        if imgs.is_empty() {
            return None;
        }
        acc = acc
            .iter()
            .flat_map(|a| imgs.iter().map(move |i| a.union(*i)))
            .collect();
    }
    Some(acc)
}

/// Least counterexample to quasi-transitivity variant `qt` on `f`, literally
/// as numbered in the table of variants.
pub fn quasi_transitivity_violation(f: &GeneralFrame, qt: QtVariant) -> Option<Witness> {
    let base = |x, u, y| Witness::new().world("x", x).world("u", u).set("Y", y);
    f.s_triples().find_map(|(x, u, y)| match qt.get() {
        k @ (1 | 2) => family_unions(f, x, y)?
            .into_iter()
            .find(|&z| {
                if k == 1 {
                    !f.has_s_within(x, u, z)
                } else {
                    !f.has_s(x, u, z)
                }
            })
            .map(|z| base(x, u, y).set("union", z)),
        k @ (3 | 4) => {
            let good = y.iter().any(|v| {
                f.images(x, v).iter().all(|&y1| {
                    if k == 3 {
                        f.has_s_within(x, u, y1)
                    } else {
                        f.has_s(x, u, y1)
                    }
                })
            });
            (!good).then(|| base(x, u, y))
        }
        k => y.iter().find_map(|v| {
            f.images(x, v)
                .iter()
                .filter(|y1| k <= 6 || !y1.contains(v))
                .find(|&&y1| {
                    if k % 2 == 1 {
                        !f.has_s_within(x, u, y1)
                    } else {
                        !f.has_s(x, u, y1)
                    }
                })
                .map(|&y1| base(x, u, y).world("y", v).set("Y'", y1))
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_world_ordinary() {
        let f = OrdinaryFrame::new(names(&["a"])).unwrap();
        assert!(validate_ordinary(&f).ok());
    }

    #[test]
    fn two_cycle() {
        let mut f = OrdinaryFrame::new(names(&["a", "b"])).unwrap();
        f.add_r(0, 1);
        f.add_r(1, 0);
        let rep = validate_ordinary(&f);
        let v = rep
            .violations
            .iter()
            .find(|v| v.condition == FrameCondition::RAcyclic)
            .unwrap();
        assert_eq!(
            v.witness.get("cycle"),
            Some(&super::super::Value::Path(vec![0, 1]))
        );
    }

    #[test]
    fn missing_r_inclusion() {
        let mut f = OrdinaryFrame::new(names(&["w", "u", "v"])).unwrap();
        f.add_r(0, 1);
        f.add_r(0, 2);
        f.add_r(1, 2);
        f.add_s(0, 1, 1);
        f.add_s(0, 2, 2);
        f.add_s(1, 2, 2);
        let rep = validate_ordinary(&f);
        assert_eq!(rep.violations.len(), 1, "{rep:?}");
        let v = rep.first().unwrap();
        assert_eq!(v.condition, FrameCondition::OrdContainsR);
        assert_eq!(v.witness.get_world("u"), Some(1));
        assert_eq!(v.witness.get_world("v"), Some(2));
        f.add_s(0, 1, 2);
        assert!(validate_ordinary(&f).ok());
    }

    #[test]
    fn four_leaves_valid_for_eight() {
        let m = four_leaves();
        assert!(validate_general(&m.frame).ok());
        let mut broken = m.frame.clone();
        broken.s[0][1].retain(|v| *v != WorldSet::singleton(1));
        let rep = validate_general(&broken);
        assert_eq!(
            rep.first().unwrap().condition,
            FrameCondition::GenQuasiReflexive
        );
    }

    #[test]
    fn two_witness_valid_for_two() {
        let m = two_witness();
        assert!(
            validate_general(&m.frame).ok(),
            "{:?}",
            validate_general(&m.frame)
        );
        let mut broken = m.frame.clone();
        broken.s[0][1].retain(|v| *v != WorldSet::from_iter([1, 2]));
        assert!(validate_general(&broken).has(FrameCondition::GenMonotone));
    }

    #[test]
    fn four_leaves_variant_profile() {
        // Quasi-reflexive pairs plus v0 S_w {v1}, v2 S_w {v3}: not monotone,
        // so variant 2 rejects it, but every other variant accepts.
        let mut f = four_leaves().frame;
        for k in QtVariant::all() {
            f.qt = k;
            assert_eq!(
                validate_general(&f).ok(),
                k != QtVariant::STANDARD,
                "qt {k}"
            );
        }
    }
}
