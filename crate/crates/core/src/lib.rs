//! Liveness analysis for free-choice Petri nets.
//!
//! A free-choice net without isolated places is live at a marking exactly
//! when every nonempty siphon contains a trap marked there.
//! [`commoner::check_commoner`] decides that condition structurally and
//! explains failures with firing-sequence witnesses; [`reachability`]
//! provides an explicit-state oracle for cross-checking on bounded nets.

pub mod commoner;
pub mod frontend;
pub mod net;
pub mod netgen;
pub mod reachability;
pub mod sets;
pub mod structural;

#[cfg(test)]
mod testnets;

pub use commoner::{check_commoner, AnalysisReport, CheckOptions, Verdict};
pub use net::{Marking, Net, NetBuilder, PlaceId, PlaceSet, TransitionId, TransitionSet};
