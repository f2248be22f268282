use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Frame, GeneralFrame, GeneralModel, Model, OrdinaryFrame, OrdinaryModel, QtVariant};
use crate::error::{Error, Result};
use crate::worlds::WorldSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gvs,
    Ordinary,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qt: Option<u8>,
    worlds: Vec<String>,
    #[serde(rename = "R", default)]
    r: Vec<(String, String)>,
    #[serde(rename = "S", default)]
    s: Vec<SEntry>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SEntry {
    w: String,
    from: String,
    to: Target,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Target {
    One(String),
    Many(Vec<String>),
}

/// A model of either kind, as read from or written to a model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyModel {
    Ordinary(OrdinaryModel),
    General(GeneralModel),
}

fn is_atom_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "top"
        && s != "bot"
}

fn lookup(worlds: &[String], name: &str) -> Result<usize> {
    worlds
        .iter()
        .position(|w| w == name)
        .ok_or_else(|| Error::UnknownWorld(name.to_owned()))
}

fn read_valuation(
    worlds: &[String],
    raw: BTreeMap<String, Vec<String>>,
) -> Result<BTreeMap<String, WorldSet>> {
    let mut out = BTreeMap::new();
    for (atom, ws) in raw {
        if !is_atom_name(&atom) {
            return Err(Error::InvalidModel(format!("`{atom}` is not an atom name")));
        }
        let mut s = WorldSet::EMPTY;
        for w in &ws {
            s.insert(lookup(worlds, w)?);
        }
        out.insert(atom, s);
    }
    Ok(out)
}

fn names<F: Frame>(f: &F, s: WorldSet) -> Vec<String> {
    s.iter().map(|w| f.name(w).to_owned()).collect()
}

fn write_common<F: Frame>(
    frame: &F,
    valuation: &BTreeMap<String, WorldSet>,
) -> (Vec<(String, String)>, BTreeMap<String, Vec<String>>) {
    let r = (0..frame.size())
        .flat_map(|w| {
            frame
                .successors(w)
                .iter()
                .map(move |u| (frame.name(w).to_owned(), frame.name(u).to_owned()))
        })
        .collect();
    let val = valuation
        .iter()
        .map(|(a, s)| (a.clone(), names(frame, *s)))
        .collect();
    (r, val)
}

impl AnyModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        let worlds = file.worlds;
        match file.kind {
            ModelKind::Ordinary => {
                if file.qt.is_some() {
                    return Err(Error::InvalidModel(
                        "`qt` is only meaningful for gvs models".into(),
                    ));
                }
                let mut frame = OrdinaryFrame::new(worlds)?;
                for (a, b) in &file.r {
                    let (a, b) = (lookup(&frame.worlds, a)?, lookup(&frame.worlds, b)?);
                    frame.add_r(a, b);
                }
                for e in &file.s {
                    let Target::One(to) = &e.to else {
                        return Err(Error::InvalidModel(
                            "ordinary S entries need a single `to` world".into(),
                        ));
                    };
                    let w = lookup(&frame.worlds, &e.w)?;
                    let u = lookup(&frame.worlds, &e.from)?;
                    let v = lookup(&frame.worlds, to)?;
                    frame.add_s(w, u, v);
                }
                let valuation = read_valuation(&frame.worlds, file.valuation)?;
                Ok(AnyModel::Ordinary(Model::with_valuation(frame, valuation)))
            }
            ModelKind::Gvs => {
                let qt = file
                    .qt
                    .ok_or_else(|| Error::InvalidModel("gvs models need `qt`".into()))?;
                let mut frame = GeneralFrame::new(worlds, QtVariant::new(qt)?)?;
                for (a, b) in &file.r {
                    let (a, b) = (lookup(&frame.worlds, a)?, lookup(&frame.worlds, b)?);
                    frame.add_r(a, b);
                }
                for e in &file.s {
                    let Target::Many(to) = &e.to else {
                        return Err(Error::InvalidModel(
                            "gvs S entries need a `to` list of worlds".into(),
                        ));
                    };
                    let w = lookup(&frame.worlds, &e.w)?;
                    let u = lookup(&frame.worlds, &e.from)?;
                    let mut v = WorldSet::EMPTY;
                    for t in to {
                        v.insert(lookup(&frame.worlds, t)?);
                    }
                    frame.add_s(w, u, v);
                }
                let valuation = read_valuation(&frame.worlds, file.valuation)?;
                Ok(AnyModel::General(Model::with_valuation(frame, valuation)))
            }
        }
    }

    /// Pretty-printed model file; entries appear in world index order.
    pub fn to_json(&self) -> String {
        let file = match self {
            AnyModel::Ordinary(m) => {
                let f = &m.frame;
                let (r, valuation) = write_common(f, &m.valuation);
                let mut s = Vec::new();
                for w in 0..f.size() {
                    for u in 0..f.size() {
                        for v in f.s[w][u].iter() {
                            s.push(SEntry {
                                w: f.name(w).to_owned(),
                                from: f.name(u).to_owned(),
                                to: Target::One(f.name(v).to_owned()),
                            });
                        }
                    }
                }
                ModelFile {
                    kind: ModelKind::Ordinary,
                    qt: None,
                    worlds: f.worlds.clone(),
                    r,
                    s,
                    valuation,
                }
            }
            AnyModel::General(m) => {
                let f = &m.frame;
                let (r, valuation) = write_common(f, &m.valuation);
                let s = f
                    .s_triples()
                    .map(|(w, u, v)| SEntry {
                        w: f.name(w).to_owned(),
                        from: f.name(u).to_owned(),
                        to: Target::Many(names(f, v)),
                    })
                    .collect();
                ModelFile {
                    kind: ModelKind::Gvs,
                    qt: Some(f.qt.get()),
                    worlds: f.worlds.clone(),
                    r,
                    s,
                    valuation,
                }
            }
        };
        serde_json::to_string_pretty(&file).expect("model files serialise")
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            AnyModel::Ordinary(_) => ModelKind::Ordinary,
            AnyModel::General(_) => ModelKind::Gvs,
        }
    }

    pub fn into_general(self) -> Result<GeneralModel> {
        match self {
            AnyModel::General(m) => Ok(m),
            AnyModel::Ordinary(_) => Err(Error::InvalidInput("expected a gvs model".into())),
        }
    }

    pub fn into_ordinary(self) -> Result<OrdinaryModel> {
        match self {
            AnyModel::Ordinary(m) => Ok(m),
            AnyModel::General(_) => Err(Error::InvalidInput("expected an ordinary model".into())),
        }
    }
}

impl From<GeneralModel> for AnyModel {
    fn from(m: GeneralModel) -> Self {
        AnyModel::General(m)
    }
}

impl From<OrdinaryModel> for AnyModel {
    fn from(m: OrdinaryModel) -> Self {
        AnyModel::Ordinary(m)
    }
}
