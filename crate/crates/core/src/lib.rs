//! Toolkit for interpretability logics over finite Veltman and generalised
//! Veltman structures.
//!
//! The crate is organised by concern:
//!
//! * [`formula`]: syntax trees, the ASCII grammar, closures and scheme matching.
//! * [`semantics`]: ordinary and generalised structures, validation and forcing.
//! * [`conditions`]: exact checkers for the frame-condition catalog.
//! * [`transform`]: truth-preserving conversions between the two semantics.
//! * [`equivalence`]: bisimulations, bounded modal equivalence and filtration.
//! * [`proof`]: Hilbert-style proof checking and the principle catalog.
//! * [`toolbench`]: frame enumeration and bounded countermodel/separation search.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod conditions;
pub mod equivalence;
pub mod error;
pub mod formula;
pub(crate) mod parallel;
pub mod proof;
pub mod semantics;
pub mod toolbench;
pub mod transform;
pub mod worlds;

pub use error::{Error, Result};
pub use formula::Formula;
pub use worlds::WorldSet;
