use super::{check_rn_general, ConditionId, ConditionVerdict};
use crate::error::{Error, Result};
use crate::semantics::{Frame, GeneralFrame, Limits, Witness};
use crate::worlds::WorldSet;

/// `S_w⁻¹[V] = { z : ∃Z (z S_w Z ∧ Z ⊆ V) }`.
pub fn s_inverse(f: &GeneralFrame, w: usize, v: WorldSet) -> WorldSet {
    (0..f.size()).filter(|&z| f.has_s_within(w, z, v)).collect()
}

fn wuv(w: usize, u: usize, v: WorldSet) -> Witness {
    Witness::new().world("w", w).world("u", u).set("V", v)
}

fn m_gen(f: &GeneralFrame) -> Option<Witness> {
    f.s_triples()
        .find(|&(w, u, v)| {
            !f.images(w, u)
                .iter()
                .any(|&v1| v1.is_subset(v) && f.successors_of_set(v1).is_subset(f.r[u]))
        })
        .map(|(w, u, v)| wuv(w, u, v))
}

fn km1_gen(f: &GeneralFrame) -> Option<Witness> {
    f.s_triples()
        .find(|&(_, u, v)| !v.iter().any(|x| f.r[x].is_subset(f.r[u])))
        .map(|(w, u, v)| wuv(w, u, v))
}

fn p_gen(f: &GeneralFrame) -> Option<Witness> {
    f.s_triples().find_map(|(w, u, v)| {
        f.r[w]
            .iter()
            .filter(|&w1| f.r[w1].contains(u))
            .find(|&w1| !f.has_s_within(w1, u, v))
            .map(|w1| {
                Witness::new()
                    .world("w", w)
                    .world("w'", w1)
                    .world("u", u)
                    .set("V", v)
            })
    })
}

fn m0_gen(f: &GeneralFrame) -> Option<Witness> {
    f.s_triples().find_map(|(w, x, v)| {
        f.r[w]
            .iter()
            .filter(|&u| f.r[u].contains(x))
            .find(|&u| {
                !f.images(w, u)
                    .iter()
                    .any(|&v1| v1.is_subset(v) && f.successors_of_set(v1).is_subset(f.r[u]))
            })
            .map(|u| {
                Witness::new()
                    .world("w", w)
                    .world("u", u)
                    .world("x", x)
                    .set("V", v)
            })
    })
}

fn p0_gen(f: &GeneralFrame, limits: &Limits) -> Result<Option<Witness>> {
    limits.admit("subsets", f.size())?;
    let subsets = f.all_worlds().subsets_by_size();
    Ok(f.s_triples().find_map(|(w, u, v)| {
        f.r[w].iter().filter(|&x| f.r[x].contains(u)).find_map(|x| {
            subsets
                .iter()
                .find(|&&z| v.iter().all(|y| f.r[y].intersects(z)) && !f.has_s_within(x, u, z))
                .map(|&z| {
                    Witness::new()
                        .world("w", w)
                        .world("x", x)
                        .world("u", u)
                        .set("V", v)
                        .set("Z", z)
                })
        })
    }))
}

fn r_gen(f: &GeneralFrame, limits: &Limits) -> Result<Option<Witness>> {
    limits.admit("subsets", f.size())?;
    Ok(f.s_triples().find_map(|(w, u, v)| {
        f.r[w].iter().filter(|&x| f.r[x].contains(u)).find_map(|x| {
            f.r[x]
                .subsets_by_size()
                .into_iter()
                .filter(|&c| f.images(x, u).iter().all(|z| z.intersects(c)))
                .find(|&c| {
                    !f.images(w, x)
                        .iter()
                        .any(|&u1| u1.is_subset(v) && f.successors_of_set(u1).is_subset(c))
                })
                .map(|c| {
                    Witness::new()
                        .world("w", w)
                        .world("x", x)
                        .world("u", u)
                        .set("V", v)
                        .set("C", c)
                })
        })
    }))
}

/// Whether `(w, u, v)` with `u S_w v` violates the positive W condition.
fn w_counterexample(f: &GeneralFrame, w: usize, u: usize, v: WorldSet) -> bool {
    let back = s_inverse(f, w, v);
    !f.images(w, u)
        .iter()
        .any(|&v1| v1.is_subset(v) && !f.successors_of_set(v1).intersects(back))
}

fn w_gen(f: &GeneralFrame) -> Option<Witness> {
    f.s_triples()
        .find(|&(w, u, v)| w_counterexample(f, w, u, v))
        .map(|(w, u, v)| wuv(w, u, v))
}

/// Checks a generalised frame condition literally, quantifying over all
/// subsets where the condition does. For `NotW` the verdict says whether
/// W fails; see [`check_not_w`].
pub fn check_general(
    frame: &GeneralFrame,
    c: ConditionId,
    limits: &Limits,
) -> Result<ConditionVerdict> {
    let v = match c {
        ConditionId::Mgen => m_gen(frame),
        ConditionId::KM1gen => km1_gen(frame),
        ConditionId::Pgen => p_gen(frame),
        ConditionId::M0gen => m0_gen(frame),
        ConditionId::P0gen => p0_gen(frame, limits)?,
        ConditionId::Rgen => r_gen(frame, limits)?,
        ConditionId::Wgen => w_gen(frame),
        ConditionId::NotW => return Ok(check_not_w(frame).verdict),
        ConditionId::RnGen(n) => return check_rn_general(frame, n, limits),
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not a condition on generalised frames"
            )))
        }
    };
    Ok(ConditionVerdict::from_violation(v))
}

/// How much of the refined returning-set description was attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotWDetail {
    /// `U` is a counterexample with a nonempty returning part.
    pub refined: bool,
    /// `R[U] ∩ U = ∅`.
    pub r_disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotWResult {
    pub verdict: ConditionVerdict,
    pub detail: Option<NotWDetail>,
}

/// Splits `u` into the part that cannot return into `u` and the rest, and
/// tests the returning part for the self-intersection property.
fn quasi_partition(f: &GeneralFrame, w: usize, u: WorldSet) -> Option<(WorldSet, WorldSet)> {
    let back = s_inverse(f, w, u);
    let u0: WorldSet = u.iter().filter(|&v| !f.r[v].intersects(back)).collect();
    let ubar = u.difference(u0);
    if ubar.is_empty() {
        return None;
    }
    let closed = ubar.iter().all(|v| {
        f.r[v].iter().all(|z| {
            f.images(w, z)
                .iter()
                .filter(|img| img.is_subset(u))
                .all(|img| img.intersects(ubar))
        })
    });
    closed.then_some((u0, ubar))
}

/// Looks for a failure of W and, when there is one, for a subset `U` of the
/// offending image that is itself a counterexample, has `R[U] ∩ U = ∅`, and
/// splits into a non-returning part `U0` and a returning part `Ū` all of
/// whose returns into `U` meet `Ū`. The witness names `w, u, V` and, when
/// found, `U, U0, Ubar`.
pub fn check_not_w(frame: &GeneralFrame) -> NotWResult {
    let f = frame;
    let mut fallback = None;
    for (w, u, v) in f.s_triples() {
        if !w_counterexample(f, w, u, v) {
            continue;
        }
        let mut partial = None;
        for cand in v.subsets_by_size() {
            if !w_sub_counterexample(f, w, u, cand) {
                continue;
            }
            let Some((u0, ubar)) = quasi_partition(f, w, cand) else {
                continue;
            };
            let disjoint = !f.successors_of_set(cand).intersects(cand);
            let wit = wuv(w, u, v).set("U", cand).set("U0", u0).set("Ubar", ubar);
            if disjoint {
                return NotWResult {
                    verdict: ConditionVerdict::holds_with(wit),
                    detail: Some(NotWDetail {
                        refined: true,
                        r_disjoint: true,
                    }),
                };
            }
            partial.get_or_insert(wit);
        }
        if let Some(wit) = partial {
            fallback.get_or_insert((
                wit,
                NotWDetail {
                    refined: true,
                    r_disjoint: false,
                },
            ));
        } else {
            fallback.get_or_insert((
                wuv(w, u, v),
                NotWDetail {
                    refined: false,
                    r_disjoint: false,
                },
            ));
        }
    }
    match fallback {
        Some((wit, detail)) => NotWResult {
            verdict: ConditionVerdict::holds_with(wit),
            detail: Some(detail),
        },
        None => NotWResult {
            verdict: ConditionVerdict {
                holds: false,
                witness: None,
            },
            detail: None,
        },
    }
}

/// Counterexample condition for a candidate `U`: `u S_w U` and no
/// `U' ⊆ U` with `u S_w U'` avoids returning into `U`.
fn w_sub_counterexample(f: &GeneralFrame, w: usize, u: usize, cand: WorldSet) -> bool {
    f.has_s(w, u, cand) && w_counterexample(f, w, u, cand)
}

impl ConditionVerdict {
    fn holds_with(witness: Witness) -> Self {
        ConditionVerdict {
            holds: true,
            witness: Some(witness),
        }
    }
}
