//! Finite ordinary and generalised Veltman structures, their validation,
//! the forcing relation and brute-force frame validity of schemes.

mod eval;
mod io;
mod validate;
mod validity;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

pub use eval::{Compiled, Letter};
pub use io::{AnyModel, ModelKind};
pub use validate::quasi_transitivity_violation;
pub use validate::{
    validate_general, validate_ordinary, FrameCondition, ValidationReport, Violation,
};
pub use validity::{frame_valid_scheme, FrameValidity, Limits};
pub use witness::{Value, Witness};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::worlds::{WorldSet, MAX_WORLDS};

/// One of the eight quasi-transitivity conditions for generalised frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QtVariant(u8);

impl QtVariant {
    /// The condition that comes with monotonicity and is the usual default.
    pub const STANDARD: QtVariant = QtVariant(2);

    pub fn new(k: u8) -> Result<Self> {
        if (1..=8).contains(&k) {
            Ok(QtVariant(k))
        } else {
            Err(Error::InvalidInput(format!(
                "quasi-transitivity variant must be 1..8, got {k}"
            )))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = QtVariant> {
        (1..=8).map(QtVariant)
    }

    /// Whether monotonicity is part of the frame definition for this variant.
    pub fn requires_monotonicity(self) -> bool {
        self.0 == 2
    }
}

impl Default for QtVariant {
    fn default() -> Self {
        QtVariant::STANDARD
    }
}

impl fmt::Display for QtVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Relational structure shared by both semantics, as seen by the evaluator.
pub trait Frame {
    fn world_names(&self) -> &[String];

    fn successors(&self, w: usize) -> WorldSet;

    /// Whether `u` has an `S_w`-image lying inside `target`: a world of
    /// `target` in the ordinary case, a subset of `target` in the generalised
    /// case.
    fn s_meets(&self, w: usize, u: usize, target: WorldSet) -> bool;

    fn size(&self) -> usize {
        self.world_names().len()
    }

    fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.size())
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.world_names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownWorld(name.to_owned()))
    }

    fn name(&self, w: usize) -> &str {
        &self.world_names()[w]
    }

    /// `{ name, ... }` rendering of a world set.
    fn set_name(&self, s: WorldSet) -> String {
        let names: Vec<&str> = s.iter().map(|w| self.name(w)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Image of a set under R.
    fn successors_of_set(&self, s: WorldSet) -> WorldSet {
        s.iter()
            .fold(WorldSet::EMPTY, |acc, v| acc.union(self.successors(v)))
    }
}

fn check_names(worlds: &[String]) -> Result<()> {
    if worlds.is_empty() {
        return Err(Error::InvalidModel("world set is empty".into()));
    }
    if worlds.len() > MAX_WORLDS {
        return Err(Error::LimitExceeded {
            what: "worlds",
            required: worlds.len() as u128,
            limit: MAX_WORLDS as u128,
        });
    }
    for (i, w) in worlds.iter().enumerate() {
        if w.is_empty() {
            return Err(Error::InvalidModel("empty world id".into()));
        }
        if worlds[..i].contains(w) {
            return Err(Error::InvalidModel(format!("duplicate world id `{w}`")));
        }
    }
    Ok(())
}

/// A Veltman frame: `S_w` relates single worlds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrdinaryFrame {
    pub worlds: Vec<String>,
    /// `r[w]` is `R[w]`.
    pub r: Vec<WorldSet>,
    /// `s[w][u]` is `{ v : u S_w v }`.
    pub s: Vec<Vec<WorldSet>>,
}

impl OrdinaryFrame {
    pub fn new(worlds: Vec<String>) -> Result<Self> {
        check_names(&worlds)?;
        let n = worlds.len();
        Ok(OrdinaryFrame {
            worlds,
            r: vec![WorldSet::EMPTY; n],
            s: vec![vec![WorldSet::EMPTY; n]; n],
        })
    }

    pub fn add_r(&mut self, w: usize, u: usize) {
        self.r[w].insert(u);
    }

    pub fn add_s(&mut self, w: usize, u: usize, v: usize) {
        self.s[w][u].insert(v);
    }

    pub fn has_s(&self, w: usize, u: usize, v: usize) -> bool {
        self.s[w][u].contains(v)
    }
}

impl Frame for OrdinaryFrame {
    fn world_names(&self) -> &[String] {
        &self.worlds
    }

    fn successors(&self, w: usize) -> WorldSet {
        self.r[w]
    }

    fn s_meets(&self, w: usize, u: usize, target: WorldSet) -> bool {
        self.s[w][u].intersects(target)
    }
}

/// A generalised Veltman frame: `S_w` relates worlds to nonempty world sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralFrame {
    pub worlds: Vec<String>,
    pub r: Vec<WorldSet>,
    /// `s[w][u]` lists the sets `V` with `u S_w V`, sorted and deduplicated.
    pub s: Vec<Vec<Vec<WorldSet>>>,
    pub qt: QtVariant,
}

impl GeneralFrame {
    pub fn new(worlds: Vec<String>, qt: QtVariant) -> Result<Self> {
        check_names(&worlds)?;
        let n = worlds.len();
        Ok(GeneralFrame {
            worlds,
            r: vec![WorldSet::EMPTY; n],
            s: vec![vec![Vec::new(); n]; n],
            qt,
        })
    }

    pub fn add_r(&mut self, w: usize, u: usize) {
        self.r[w].insert(u);
    }

    /// Adds `u S_w v`; returns whether it was new.
    pub fn add_s(&mut self, w: usize, u: usize, v: WorldSet) -> bool {
        let images = &mut self.s[w][u];
        match images.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                images.insert(pos, v);
                true
            }
        }
    }

    pub fn has_s(&self, w: usize, u: usize, v: WorldSet) -> bool {
        self.s[w][u].binary_search(&v).is_ok()
    }

    pub fn images(&self, w: usize, u: usize) -> &[WorldSet] {
        &self.s[w][u]
    }

    /// `u S_w V'` for some `V' ⊆ v`.
    pub fn has_s_within(&self, w: usize, u: usize, v: WorldSet) -> bool {
        self.s[w][u].iter().any(|x| x.is_subset(v))
    }

    /// All triples `(w, u, V)` in index order.
    pub fn s_triples(&self) -> impl Iterator<Item = (usize, usize, WorldSet)> + '_ {
        self.s.iter().enumerate().flat_map(|(w, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(u, imgs)| imgs.iter().map(move |v| (w, u, *v)))
        })
    }

    pub fn s_pair_count(&self) -> usize {
        self.s.iter().flatten().map(Vec::len).sum()
    }
}

impl Frame for GeneralFrame {
    fn world_names(&self) -> &[String] {
        &self.worlds
    }

    fn successors(&self, w: usize) -> WorldSet {
        self.r[w]
    }

    fn s_meets(&self, w: usize, u: usize, target: WorldSet) -> bool {
        self.has_s_within(w, u, target)
    }
}

/// A frame together with a valuation. Atoms absent from the valuation are
/// false everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model<F> {
    pub frame: F,
    pub valuation: BTreeMap<String, WorldSet>,
}

pub type OrdinaryModel = Model<OrdinaryFrame>;
pub type GeneralModel = Model<GeneralFrame>;

impl<F: Frame> Model<F> {
    pub fn new(frame: F) -> Self {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    pub fn with_valuation(frame: F, valuation: BTreeMap<String, WorldSet>) -> Self {
        Model { frame, valuation }
    }

    /// Makes `atom` true exactly at the named worlds.
    pub fn set_atom(&mut self, atom: &str, worlds: &[&str]) -> Result<()> {
        let mut s = WorldSet::EMPTY;
        for w in worlds {
            s.insert(self.frame.index_of(w)?);
        }
        self.valuation.insert(atom.to_owned(), s);
        Ok(())
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    /// `{ w : w forces f }`.
    pub fn truth_set(&self, f: &Formula) -> Result<WorldSet> {
        f.ensure_ground()?;
        Compiled::new(f).eval_model(self)
    }

    pub fn forces_at(&self, w: usize, f: &Formula) -> Result<bool> {
        if w >= self.frame.size() {
            return Err(Error::UnknownWorld(format!("#{w}")));
        }
        Ok(self.truth_set(f)?.contains(w))
    }

    pub fn forces(&self, world: &str, f: &Formula) -> Result<bool> {
        let w = self.frame.index_of(world)?;
        self.forces_at(w, f)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    /// Root `w` sees `v0..v3`; `v0 S_w {v1}`, `v2 S_w {v3}` plus the
    /// quasi-reflexive pairs. `p` at `v0`, `q` at `v2`.
    pub fn four_leaves() -> GeneralModel {
        let mut f = GeneralFrame::new(
            names(&["w", "v0", "v1", "v2", "v3"]),
            QtVariant::new(8).unwrap(),
        )
        .unwrap();
        for v in 1..5 {
            f.add_r(0, v);
            f.add_s(0, v, WorldSet::singleton(v));
        }
        f.add_s(0, 1, WorldSet::singleton(2));
        f.add_s(0, 3, WorldSet::singleton(4));
        let mut m = Model::new(f);
        m.set_atom("p", &["v0"]).unwrap();
        m.set_atom("q", &["v2"]).unwrap();
        m
    }

    /// `w` sees `u, x, y`; `u S_w {x,y}` with the quasi-reflexive pairs and
    /// the monotone supersets. `p` at `u`, `q` at `x`, `r` at `y`.
    pub fn two_witness() -> GeneralModel {
        let mut f = GeneralFrame::new(names(&["w", "u", "x", "y"]), QtVariant::STANDARD).unwrap();
        let succ = WorldSet::from_iter([1, 2, 3]);
        for v in 1..4 {
            f.add_r(0, v);
        }
        for u in 1..4 {
            for z in succ.nonempty_subsets() {
                if z.contains(u) {
                    f.add_s(0, u, z);
                }
            }
        }
        for z in succ.nonempty_subsets() {
            if z.is_subset(WorldSet::from_iter([2, 3])) && z.len() == 2
                || WorldSet::from_iter([2, 3]).is_subset(z)
            {
                f.add_s(0, 1, z);
            }
        }
        let mut m = Model::new(f);
        m.set_atom("p", &["u"]).unwrap();
        m.set_atom("q", &["x"]).unwrap();
        m.set_atom("r", &["y"]).unwrap();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn four_leaves_forcing() {
        let m = four_leaves();
        assert!(m.forces("w", &f("~(p |> q)")).unwrap());
        assert_eq!(
            m.truth_set(&f("[]bot")).unwrap(),
            WorldSet::from_iter([1, 2, 3, 4])
        );
    }

    #[test]
    fn two_witness_forcing() {
        let m = two_witness();
        assert!(m.forces("w", &f("~(p |> q)")).unwrap());
        assert!(m.forces("w", &f("~(p |> r)")).unwrap());
        assert!(m.forces("w", &f("p |> q \\/ r")).unwrap());
        assert_eq!(m.truth_set(&f("p")).unwrap(), WorldSet::singleton(1));
        assert_eq!(m.truth_set(&f("top")).unwrap(), WorldSet::full(4));
    }

    #[test]
    fn vacuous_triangle() {
        for m in [four_leaves(), two_witness()] {
            assert_eq!(m.truth_set(&f("bot |> p")).unwrap(), m.frame.all_worlds());
        }
    }

    #[test]
    fn forcing_errors() {
        let m = four_leaves();
        assert_eq!(
            m.forces("nowhere", &f("p")),
            Err(Error::UnknownWorld("nowhere".into()))
        );
        assert_eq!(
            m.forces("w", &f("A |> p")),
            Err(Error::Metavariable("A".into()))
        );
    }

    #[test]
    fn box_agrees_with_desugared_form() {
        for m in [four_leaves(), two_witness()] {
            for s in ["[]p", "[]~q", "[](p -> q)", "<>p", "[]<>r", "<>(p |> q)"] {
                let g = f(s);
                assert_eq!(
                    m.truth_set(&g).unwrap(),
                    m.truth_set(&g.desugar().unwrap()).unwrap(),
                    "{s}"
                );
            }
        }
    }
}
