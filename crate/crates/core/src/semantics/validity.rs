use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Compiled, Frame, Letter};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::parallel;
use crate::worlds::WorldSet;

/// Resource caps for brute-force checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the number of valuations (or set assignments)
    /// a single check may enumerate.
    pub max_valuations: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_valuations: 1 << 24,
        }
    }
}

impl Limits {
    /// `2^bits`, or an error if that exceeds the cap.
    pub fn admit(&self, what: &'static str, bits: usize) -> Result<u64> {
        let required = if bits >= 127 {
            u128::MAX
        } else {
            1u128 << bits
        };
        if required > self.max_valuations || bits >= 64 {
            return Err(Error::LimitExceeded {
                what,
                required,
                limit: self.max_valuations,
            });
        }
        Ok(required as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameValidity {
    Valid,
    /// The least falsifying valuation (letters to world sets, in counter
    /// order) and the least world where the instance fails.
    Invalid {
        valuation: BTreeMap<String, WorldSet>,
        world: usize,
    },
}

impl FrameValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameValidity::Valid)
    }
}

const PARALLEL_THRESHOLD: u64 = 1 << 12;

/// Whether every instance of `scheme` holds at every world of `frame`.
/// Metavariables and atoms alike are treated as letters ranging over all
/// world sets; any valuation the frame may carry is ignored.
pub fn frame_valid_scheme<F: Frame + Sync + ?Sized>(
    frame: &F,
    scheme: &Formula,
    limits: &Limits,
) -> Result<FrameValidity> {
    let compiled = Compiled::new(scheme);
    let n = frame.size();
    let k = compiled.letters().len();
    let total = limits.admit("valuations", k * n)?;
    let all = WorldSet::full(n);
    let mask = all.0;

    let decode = |i: u64, values: &mut Vec<WorldSet>| {
        values.clear();
        values.extend((0..k).map(|j| WorldSet((i >> (j * n)) & mask)));
    };
    let probe = |i: u64, values: &mut Vec<WorldSet>, scratch: &mut Vec<WorldSet>| {
        decode(i, values);
        let t = compiled.eval_with(frame, values, scratch);
        all.difference(t).first()
    };

    let hit = if total <= PARALLEL_THRESHOLD {
        let (mut values, mut scratch) = (Vec::new(), Vec::new());
        (0..total).find_map(|i| probe(i, &mut values, &mut scratch).map(|w| (i, w)))
    } else {
        parallel::install(|| {
            (0..total)
                .into_par_iter()
                .map_init(
                    || (Vec::new(), Vec::new()),
                    |(values, scratch), i| probe(i, values, scratch).map(|w| (i, w)),
                )
                .find_first(Option::is_some)
                .flatten()
        })
    };

    Ok(match hit {
        None => FrameValidity::Valid,
        Some((i, world)) => {
            let mut values = Vec::new();
            decode(i, &mut values);
            let valuation = compiled
                .letters()
                .iter()
                .zip(values)
                .map(|(l, v)| {
                    let name = match l {
                        Letter::Atom(a) | Letter::Meta(a) => a.clone(),
                    };
                    (name, v)
                })
                .collect();
            FrameValidity::Invalid { valuation, world }
        }
    })
}
