//! Frame enumeration and bounded search for countermodels and separating
//! frames.

mod enumerate;
mod random;

use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use enumerate::{
    canonical_orders, enumerate_frames, enumerate_ordinary_frames, MAX_ENUM_WORLDS,
};
pub use random::{random_general_model, random_ordinary_model};

use crate::conditions::{check_general, ConditionId, ConditionVerdict};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::parallel;
use crate::semantics::{
    frame_valid_scheme, FrameValidity, GeneralFrame, GeneralModel, Limits, Model, QtVariant,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_frames_examined: u64,
    pub max_valuations: u128,
    pub time_budget: Duration,
    pub qt: QtVariant,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_worlds: 4,
            max_frames_examined: 10_000_000,
            max_valuations: 1 << 24,
            time_budget: Duration::from_secs(600),
            qt: QtVariant::STANDARD,
        }
    }
}

impl SearchBounds {
    pub fn limits(&self) -> Limits {
        Limits {
            max_valuations: self.max_valuations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchWitness {
    /// For countermodels, the model and the world forcing the negation; for
    /// separating frames, the frame with an empty valuation.
    pub model: GeneralModel,
    pub world: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness {
        witness: SearchWitness,
        frames_examined: u64,
    },
    ExhaustedWithinBounds {
        frames_examined: u64,
    },
    BudgetExceeded {
        frames_examined: u64,
        reason: String,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&SearchWitness> {
        match self {
            SearchOutcome::Witness { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

const BATCH: usize = 256;

/// Walks the canonical frame sequence in batches, probing each batch in
/// parallel and returning the hit earliest in sequence order.
fn scan<T: Send>(
    bounds: &SearchBounds,
    probe: impl Fn(&GeneralFrame) -> Result<Option<T>> + Sync,
) -> Result<(Option<(GeneralFrame, T)>, u64, Option<String>)> {
    let start = Instant::now();
    let mut frames = enumerate_frames(bounds);
    let mut examined = 0u64;
    loop {
        if start.elapsed() > bounds.time_budget {
            return Ok((None, examined, Some("time budget exhausted".into())));
        }
        let room = bounds.max_frames_examined.saturating_sub(examined);
        let batch: Vec<GeneralFrame> = frames.by_ref().take(BATCH.min(room as usize)).collect();
        if batch.is_empty() {
            let reason =
                (room == 0 && frames.next().is_some()).then(|| "frame budget exhausted".to_owned());
            return Ok((None, examined, reason));
        }
        let hit = parallel::install(|| {
            batch
                .par_iter()
                .enumerate()
                .map(|(k, f)| probe(f).map(|r| r.map(|t| (k, t))))
                .find_first(|r| !matches!(r, Ok(None)))
        });
        match hit {
            Some(Ok(Some((k, t)))) => {
                examined += k as u64 + 1;
                let frame = batch.into_iter().nth(k).expect("index in batch");
                return Ok((Some((frame, t)), examined, None));
            }
            Some(Err(e)) => return Err(e),
            _ => examined += batch.len() as u64,
        }
    }
}

fn outcome(
    found: Option<SearchWitness>,
    frames_examined: u64,
    budget: Option<String>,
) -> SearchOutcome {
    match (found, budget) {
        (Some(witness), _) => SearchOutcome::Witness {
            witness,
            frames_examined,
        },
        (None, Some(reason)) => SearchOutcome::BudgetExceeded {
            frames_examined,
            reason,
        },
        (None, None) => SearchOutcome::ExhaustedWithinBounds { frames_examined },
    }
}

fn require_general(logic: &[ConditionId]) -> Result<()> {
    match logic.iter().find(|c| c.is_ordinary()) {
        Some(c) => Err(Error::InvalidInput(format!(
            "{c} is a condition on ordinary frames; search enumerates generalised frames"
        ))),
        None => Ok(()),
    }
}

/// Looks for a model on a frame satisfying every condition of `logic`
/// with a world where `f` fails.
pub fn find_countermodel(
    f: &Formula,
    logic: &[ConditionId],
    bounds: &SearchBounds,
) -> Result<SearchOutcome> {
    f.ensure_ground()?;
    require_general(logic)?;
    let limits = bounds.limits();
    let (hit, examined, budget) = scan(bounds, |frame| {
        for &c in logic {
            if !check_general(frame, c, &limits)?.holds {
                return Ok(None);
            }
        }
        match frame_valid_scheme(frame, f, &limits)? {
            FrameValidity::Valid => Ok(None),
            FrameValidity::Invalid { valuation, world } => Ok(Some((valuation, world))),
        }
    })?;
    let found = hit.map(|(frame, (valuation, world))| SearchWitness {
        model: Model::with_valuation(frame, valuation),
        world: Some(world),
    });
    Ok(outcome(found, examined, budget))
}

/// Looks for a frame where `holds` holds and `fails` fails.
pub fn find_separating_frame(
    holds: ConditionId,
    fails: ConditionId,
    bounds: &SearchBounds,
) -> Result<SearchOutcome> {
    require_general(&[holds, fails])?;
    let limits = bounds.limits();
    let (hit, examined, budget) = scan(bounds, |frame| {
        let a: ConditionVerdict = check_general(frame, holds, &limits)?;
        if !a.holds {
            return Ok(None);
        }
        Ok((!check_general(frame, fails, &limits)?.holds).then_some(()))
    })?;
    let found = hit.map(|(frame, ())| SearchWitness {
        model: Model::new(frame),
        world: None,
    });
    Ok(outcome(found, examined, budget))
}
