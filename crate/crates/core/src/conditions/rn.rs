use super::{check_general, ConditionId, ConditionVerdict};
use crate::error::{Error, Result};
use crate::semantics::{Frame, GeneralFrame, Limits, OrdinaryFrame, Witness};
use crate::worlds::WorldSet;

/// Largest parameter accepted by the parametric checkers.
pub const MAX_RN: usize = 64;

/// Base case of the chain relation `B_0(x1, x0, y0, y1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RnBase {
    /// `x1 R x0 R y0 S_{x1} y1`.
    #[default]
    Chain,
    /// `x1 R x1 R y0 S_{x1} y1`, with `x0` unconstrained. Never satisfied on
    /// irreflexive frames; kept for comparison.
    Printed,
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_RN {
        return Err(Error::LimitExceeded {
            what: "Rn parameter",
            required: n as u128,
            limit: MAX_RN as u128,
        });
    }
    Ok(())
}

/// Ordinary condition for `Rⁿ`: whenever `B_n(x_{n+1}, x0, y0, y_{n+1})`,
/// every `R`-successor of `y_{n+1}` is an `S_{x0}`-successor of `y0`.
/// `B_n` is built level by level for each endpoint pair `(x0, y0)`.
pub fn check_rn_ordinary(f: &OrdinaryFrame, n: usize, base: RnBase) -> Result<ConditionVerdict> {
    check_n(n)?;
    let size = f.size();
    for x0 in 0..size {
        for y0 in 0..size {
            // level[x] = { y : B_k(x, x0, y0, y) }
            let mut level: Vec<WorldSet> = (0..size)
                .map(|x1| {
                    let ok = match base {
                        RnBase::Chain => f.r[x1].contains(x0) && f.r[x0].contains(y0),
                        RnBase::Printed => f.r[x1].contains(x1) && f.r[x1].contains(y0),
                    };
                    if ok {
                        f.s[x1][y0]
                    } else {
                        WorldSet::EMPTY
                    }
                })
                .collect();
            for _ in 0..n {
                level = (0..size)
                    .map(|x2| {
                        f.r[x2]
                            .iter()
                            .flat_map(|x1| level[x1].iter())
                            .fold(WorldSet::EMPTY, |acc, y1| acc.union(f.s[x2][y1]))
                    })
                    .collect();
            }
            let target = f.s[x0][y0];
            for (xn, ys) in level.iter().enumerate() {
                for yn in ys.iter() {
                    if let Some(z) = f.r[yn].difference(target).first() {
                        return Ok(ConditionVerdict::fails(
                            Witness::new()
                                .world(&format!("x{}", n + 1), xn)
                                .world("x0", x0)
                                .world("y0", y0)
                                .world(&format!("y{}", n + 1), yn)
                                .world("z", z),
                        ));
                    }
                }
            }
        }
    }
    Ok(ConditionVerdict::holds())
}

struct GenSearch<'a> {
    f: &'a GeneralFrame,
    n: usize,
    subsets: Vec<WorldSet>,
}

impl GenSearch<'_> {
    /// `∀u (x R u ∧ u ∈ from ⇒ ∃V (u S_x V ∧ V ⊆ to))`.
    fn maps(&self, x: usize, from: WorldSet, to: WorldSet) -> bool {
        self.f.r[x]
            .intersection(from)
            .iter()
            .all(|u| self.f.has_s_within(x, u, to))
    }

    /// Searches the set variables for a chain `w, xs = [x0 .. x_{n-1}], y, z`;
    /// returns the set bindings of the least failing assignment.
    fn sets(&self, w: usize, xs: &[usize], y: usize, z: usize) -> Option<Witness> {
        let f = self.f;
        let top = xs[self.n - 1];
        for &c in &self.subsets {
            if !f.images(y, z).iter().all(|v| v.intersects(c)) {
                continue;
            }
            for &d0 in &self.subsets {
                if !d0.contains(z) {
                    continue;
                }
                let mut ds = vec![d0];
                if let Some(w) = self.d_chain(w, xs, c, &mut ds, top) {
                    let mut wit = Witness::new().set("C", c);
                    wit.bindings.extend(w.bindings);
                    return Some(wit);
                }
            }
        }
        None
    }

    fn d_chain(
        &self,
        w: usize,
        xs: &[usize],
        c: WorldSet,
        ds: &mut Vec<WorldSet>,
        top: usize,
    ) -> Option<Witness> {
        let f = self.f;
        let i = ds.len() - 1;
        if i + 1 < self.n {
            for &next in &self.subsets {
                if self.maps(xs[i], ds[i], next) {
                    ds.push(next);
                    if let Some(wit) = self.d_chain(w, xs, c, ds, top) {
                        return Some(wit);
                    }
                    ds.pop();
                }
            }
            return None;
        }
        for &a in &self.subsets {
            if !self.maps(top, ds[i], a) {
                continue;
            }
            for &b in &self.subsets {
                if !self.maps(w, a, b) {
                    continue;
                }
                let concluded = f
                    .images(w, top)
                    .iter()
                    .any(|&v| v.is_subset(b) && f.successors_of_set(v).is_subset(c));
                if !concluded {
                    let mut wit = Witness::new().set("A", a).set("B", b);
                    for (k, d) in ds.iter().enumerate() {
                        wit = wit.set(&format!("D{k}"), *d);
                    }
                    return Some(wit);
                }
            }
        }
        None
    }

    /// Enumerates `w R x_{n-1} R … R x0 R y R z`, filling `xs` from the top.
    fn chains(&self, w: usize, prev: usize, xs: &mut Vec<usize>) -> Option<Witness> {
        let f = self.f;
        if xs.len() == self.n {
            let mut ordered = xs.clone();
            ordered.reverse();
            let x0 = ordered[0];
            for y in f.r[x0].iter() {
                for z in f.r[y].iter() {
                    if let Some(sets) = self.sets(w, &ordered, y, z) {
                        let mut wit = Witness::new().world("w", w);
                        for (k, x) in ordered.iter().enumerate().rev() {
                            wit = wit.world(&format!("x{k}"), *x);
                        }
                        wit = wit.world("y", y).world("z", z);
                        wit.bindings.extend(sets.bindings);
                        return Some(wit);
                    }
                }
            }
            return None;
        }
        for x in f.r[prev].iter() {
            xs.push(x);
            if let Some(wit) = self.chains(w, x, xs) {
                return Some(wit);
            }
            xs.pop();
        }
        None
    }
}

/// Generalised condition for `Rⁿ`. For `n = 0` this is the R condition;
/// for `n ≥ 1` the set variables `A, B, C, D0 … D_{n-1}` range over all
/// world sets, with `x_i` mapping `D_i` into `D_{i+1}` for `i < n-1` and
/// `x_{n-1}` mapping `D_{n-1}` into `A`.
pub fn check_rn_general(f: &GeneralFrame, n: usize, limits: &Limits) -> Result<ConditionVerdict> {
    check_n(n)?;
    if n == 0 {
        return check_general(f, ConditionId::Rgen, limits);
    }
    limits.admit("set assignments", f.size() * (n + 3))?;
    let search = GenSearch {
        f,
        n,
        subsets: f.all_worlds().subsets_by_size(),
    };
    for w in 0..f.size() {
        if let Some(wit) = search.chains(w, w, &mut Vec::new()) {
            return Ok(ConditionVerdict::fails(wit));
        }
    }
    Ok(ConditionVerdict::holds())
}
