//! Bisimulations between generalised models, bounded modal equivalence, and
//! filtration through the largest auto-bisimulation.

mod bisim;
mod filtration;
mod modal;

pub use bisim::{
    is_bisimulation, largest_bisimulation, n_bisimulation, Bisimulation, NBisimulation,
};
pub use filtration::{auto_bisimulation_classes, filtrate, longest_chain, Quotient};
pub use modal::{
    full_vocabulary, modal_types, modally_equivalent_up_to, EquivalenceCaps, EquivalenceVerdict,
    ModalTypes,
};
