use super::{check_rn_ordinary, ConditionId, ConditionVerdict, RnBase};
use crate::error::{Error, Result};
use crate::semantics::{Frame, OrdinaryFrame, Witness};
use crate::worlds::WorldSet;

/// `{ y : x (S_w;R) y }`, i.e. `∃t (x S_w t ∧ t R y)`.
fn s_then_r(f: &OrdinaryFrame, w: usize, x: usize) -> WorldSet {
    f.successors_of_set(f.s[w][x])
}

fn m_ord(f: &OrdinaryFrame) -> Option<Witness> {
    let n = f.size();
    (0..n).find_map(|w| {
        (0..n).find_map(|y| {
            f.s[w][y].iter().find_map(|z| {
                f.r[z].difference(f.r[y]).first().map(|u| {
                    Witness::new()
                        .world("w", w)
                        .world("y", y)
                        .world("z", z)
                        .world("u", u)
                })
            })
        })
    })
}

fn m0_ord(f: &OrdinaryFrame) -> Option<Witness> {
    let n = f.size();
    (0..n).find_map(|w| {
        f.r[w].iter().find_map(|x| {
            f.r[x].iter().find_map(|y| {
                f.s[w][y].iter().find_map(|u| {
                    f.r[u].difference(f.r[x]).first().map(|z| {
                        Witness::new()
                            .world("w", w)
                            .world("x", x)
                            .world("y", y)
                            .world("u", u)
                            .world("z", z)
                    })
                })
            })
        })
    })
}

/// A cycle of `S_w;R`, as a path of worlds.
fn w_ord(f: &OrdinaryFrame) -> Option<Witness> {
    let n = f.size();
    (0..n).find_map(|w| {
        let step: Vec<WorldSet> = (0..n).map(|x| s_then_r(f, w, x)).collect();
        (0..n).find_map(|start| {
            let mut parent = vec![usize::MAX; n];
            let mut seen = WorldSet::EMPTY;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in step[x].iter() {
                    if y == start {
                        let mut path = vec![x];
                        let mut cur = x;
                        while cur != start {
                            cur = parent[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(Witness::new().world("w", w).path("cycle", path));
                    }
                    if !seen.contains(y) {
                        seen.insert(y);
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            None
        })
    })
}

fn kw1_ord(f: &OrdinaryFrame) -> Option<Witness> {
    let n = f.size();
    (0..n).find_map(|w| {
        let maximal: WorldSet = f.r[w]
            .iter()
            .filter(|&x| !s_then_r(f, w, x).intersects(f.r[w]))
            .collect();
        f.r[w]
            .iter()
            .find(|&y| !f.s[w][y].intersects(maximal))
            .map(|y| {
                Witness::new()
                    .world("w", w)
                    .world("y", y)
                    .set("M(w)", maximal)
            })
    })
}

/// Checks an ordinary frame condition by exhausting all world tuples.
pub fn check_ordinary(frame: &OrdinaryFrame, c: ConditionId) -> Result<ConditionVerdict> {
    let v = match c {
        ConditionId::Mord => m_ord(frame),
        ConditionId::M0ord => m0_ord(frame),
        ConditionId::Word => w_ord(frame),
        ConditionId::KW1ord => kw1_ord(frame),
        ConditionId::RnOrd(n) => return check_rn_ordinary(frame, n, RnBase::Chain),
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not a condition on ordinary frames"
            )))
        }
    };
    Ok(ConditionVerdict::from_violation(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(n: usize, r: &[(usize, usize)], s: &[(usize, usize, usize)]) -> OrdinaryFrame {
        let mut f = OrdinaryFrame::new((0..n).map(|i| format!("w{i}")).collect()).unwrap();
        for &(a, b) in r {
            f.add_r(a, b);
        }
        for w in 0..n {
            for u in f.r[w].iter() {
                f.add_s(w, u, u);
                for v in f.r[u].iter() {
                    f.add_s(w, u, v);
                }
            }
        }
        for &(w, u, v) in s {
            f.add_s(w, u, v);
        }
        f
    }

    #[test]
    fn single_world() {
        let f = frame(1, &[], &[]);
        for c in [
            ConditionId::Mord,
            ConditionId::M0ord,
            ConditionId::Word,
            ConditionId::KW1ord,
        ] {
            assert!(check_ordinary(&f, c).unwrap().holds);
        }
    }

    #[test]
    fn m_ord_witness() {
        // w=0 sees u=1, v=2, z=3; v R z; u S_w v.
        let f = frame(4, &[(0, 1), (0, 2), (0, 3), (2, 3)], &[(0, 1, 2)]);
        let v = check_ordinary(&f, ConditionId::Mord).unwrap();
        assert!(!v.holds);
        let wit = v.witness.unwrap();
        assert_eq!(
            (wit.get_world("y"), wit.get_world("z"), wit.get_world("u")),
            (Some(1), Some(2), Some(3))
        );
        let mut g = f.clone();
        g.add_r(1, 3);
        g.add_s(0, 1, 3);
        assert!(check_ordinary(&g, ConditionId::Mord).unwrap().holds);
    }

    #[test]
    fn identity_s_has_w() {
        let mut f = OrdinaryFrame::new((0..4).map(|i| format!("w{i}")).collect()).unwrap();
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            f.add_r(a, b);
        }
        for w in 0..4 {
            for u in f.r[w].iter() {
                f.add_s(w, u, u);
            }
        }
        assert!(check_ordinary(&f, ConditionId::Word).unwrap().holds);
    }

    #[test]
    fn returning_s_breaks_w() {
        // 0 sees 1, 2; 1 R 2 forces 1 S_0 2, and 2 S_0 1 closes a cycle.
        let f = frame(3, &[(0, 1), (0, 2), (1, 2)], &[(0, 2, 1)]);
        let v = check_ordinary(&f, ConditionId::Word).unwrap();
        assert!(!v.holds);
        assert!(!check_ordinary(&f, ConditionId::KW1ord).unwrap().holds);
    }

    #[test]
    fn rejects_general_ids() {
        assert!(check_ordinary(&frame(1, &[], &[]), ConditionId::Mgen).is_err());
    }
}
