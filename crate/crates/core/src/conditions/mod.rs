//! Exact checkers for the frame-condition catalog, on ordinary and on
//! generalised frames.

mod general;
mod ordinary;
mod rn;

use std::fmt;
use std::str::FromStr;

pub use general::{check_general, check_not_w, s_inverse, NotWDetail, NotWResult};
pub use ordinary::check_ordinary;
pub use rn::{check_rn_general, check_rn_ordinary, RnBase, MAX_RN};

use crate::error::{Error, Result};
use crate::semantics::Witness;

/// A frame condition of the catalog. Names ending in `ord` are conditions on
/// ordinary frames, the others on generalised frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    Mord,
    M0ord,
    Word,
    KW1ord,
    RnOrd(usize),
    Mgen,
    KM1gen,
    Pgen,
    M0gen,
    P0gen,
    Rgen,
    Wgen,
    NotW,
    RnGen(usize),
}

impl ConditionId {
    pub const GENERAL_CORRESPONDENTS: [ConditionId; 7] = [
        ConditionId::Mgen,
        ConditionId::KM1gen,
        ConditionId::Pgen,
        ConditionId::M0gen,
        ConditionId::P0gen,
        ConditionId::Rgen,
        ConditionId::Wgen,
    ];

    pub fn is_ordinary(self) -> bool {
        matches!(
            self,
            ConditionId::Mord
                | ConditionId::M0ord
                | ConditionId::Word
                | ConditionId::KW1ord
                | ConditionId::RnOrd(_)
        )
    }

    /// Catalog id of the principle whose frame condition this is. `NotW`
    /// characterises failure of W and has none.
    pub fn principle(self) -> Option<String> {
        Some(match self {
            ConditionId::Mord | ConditionId::Mgen => "M".into(),
            ConditionId::M0ord | ConditionId::M0gen => "M0".into(),
            ConditionId::Word | ConditionId::Wgen => "W".into(),
            ConditionId::KW1ord => "KW1".into(),
            ConditionId::KM1gen => "KM1".into(),
            ConditionId::Pgen => "P".into(),
            ConditionId::P0gen => "P0".into(),
            ConditionId::Rgen => "R".into(),
            ConditionId::RnOrd(n) | ConditionId::RnGen(n) => format!("Rn:{n}"),
            ConditionId::NotW => return None,
        })
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionId::Mord => write!(f, "Mord"),
            ConditionId::M0ord => write!(f, "M0ord"),
            ConditionId::Word => write!(f, "Word"),
            ConditionId::KW1ord => write!(f, "KW1ord"),
            ConditionId::RnOrd(n) => write!(f, "Rnord:{n}"),
            ConditionId::Mgen => write!(f, "Mgen"),
            ConditionId::KM1gen => write!(f, "KM1gen"),
            ConditionId::Pgen => write!(f, "Pgen"),
            ConditionId::M0gen => write!(f, "M0gen"),
            ConditionId::P0gen => write!(f, "P0gen"),
            ConditionId::Rgen => write!(f, "Rgen"),
            ConditionId::Wgen => write!(f, "Wgen"),
            ConditionId::NotW => write!(f, "NotW"),
            ConditionId::RnGen(n) => write!(f, "Rngen:{n}"),
        }
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let param = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::UnknownId(s.to_owned()))
        };
        Ok(match s {
            "Mord" => ConditionId::Mord,
            "M0ord" => ConditionId::M0ord,
            "Word" => ConditionId::Word,
            "KW1ord" => ConditionId::KW1ord,
            "Mgen" => ConditionId::Mgen,
            "KM1gen" => ConditionId::KM1gen,
            "Pgen" => ConditionId::Pgen,
            "M0gen" => ConditionId::M0gen,
            "P0gen" => ConditionId::P0gen,
            "Rgen" => ConditionId::Rgen,
            "Wgen" => ConditionId::Wgen,
            "NotW" => ConditionId::NotW,
            _ => {
                if let Some(rest) = s.strip_prefix("Rnord:") {
                    ConditionId::RnOrd(param(rest)?)
                } else if let Some(rest) = s.strip_prefix("Rngen:") {
                    ConditionId::RnGen(param(rest)?)
                } else {
                    return Err(Error::UnknownId(s.to_owned()));
                }
            }
        })
    }
}

/// Result of checking one condition. For most conditions the witness
/// instantiates the violated universal; for `NotW` it is the returning set
/// found when the condition holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl ConditionVerdict {
    pub fn holds() -> Self {
        ConditionVerdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: Witness) -> Self {
        ConditionVerdict {
            holds: false,
            witness: Some(witness),
        }
    }

    fn from_violation(v: Option<Witness>) -> Self {
        match v {
            None => ConditionVerdict::holds(),
            Some(w) => ConditionVerdict::fails(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for t in [
            "Mord", "M0ord", "Word", "KW1ord", "Rnord:3", "Mgen", "KM1gen", "Pgen", "M0gen",
            "P0gen", "Rgen", "Wgen", "NotW", "Rngen:0",
        ] {
            assert_eq!(t.parse::<ConditionId>().unwrap().to_string(), t);
        }
        for bad in ["M", "Rngen:", "Rngen:x", "mgen"] {
            assert!(bad.parse::<ConditionId>().is_err());
        }
    }
}
