//! Wirtinger width and Wirtinger number of knot diagrams.
//!
//! A knot diagram is read from a Gauss code ([`gauss`]) and colored strand by
//! strand using seed additions and coloring moves ([`coloring`]). Every
//! completed coloring sequence carries an attached sequence of even levels;
//! the least possible sum over all sequences is the diagram's Wirtinger
//! width, an upper bound for the Gabai width of the knot (and equal to it
//! when minimized over all diagrams). The least number of seeds is the
//! Wirtinger number, an upper bound for the bridge number.
//!
//! [`search`] computes both, exactly by memoized branch-and-bound or
//! heuristically by lazy seeding. [`oracle`] enumerates every coloring
//! sequence of small diagrams as ground truth. [`lift`] rebuilds the Morse
//! profile of the lifted embedding from a witness and recomputes its width by
//! a level sweep. [`strategy`] registers the width algorithms by name and
//! [`census`] runs them over files of Gauss codes.

pub mod census;
pub mod coloring;
pub mod corpus;
pub mod gauss;
pub mod lift;
pub mod oracle;
pub mod search;
pub mod strategy;

pub use coloring::{attached_sequence, replay_and_verify, AttachedSequence, ColoringState, Event, EventKind, EventLog};
pub use gauss::{CrossingId, Diagram, GaussCode, Role, StrandId};
pub use lift::{build_profile, sweep_width, MorseProfile};
pub use search::{exact_width, lazy_seed_heuristic, wirtinger_number, WidthReport};
pub use strategy::{StrategyOptions, StrategyRegistry, WidthStrategy};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Gauss(#[from] gauss::GaussError),
    #[error(transparent)]
    Diagram(#[from] gauss::DiagramError),
}
