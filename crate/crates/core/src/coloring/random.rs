//! Random legal coloring sequences, for property tests and fuzzing the
//! search against the invariant suite.

use rand::Rng;

use super::{ColoringState, EventKind, EventLog};
use crate::gauss::Diagram;

/// Draws a completed coloring sequence. At each stage a legal coloring move
/// is taken with probability `move_bias` (when one exists), otherwise a seed
/// is added to a uniformly chosen uncolored strand.
pub fn random_completed_log<R: Rng + ?Sized>(diagram: &Diagram, rng: &mut R, move_bias: f64) -> EventLog {
    let mut state = ColoringState::new(diagram);
    let mut log = EventLog::new();
    while !state.is_complete() {
        let moves = state.legal_moves(diagram);
        let kind = if !moves.is_empty() && rng.gen_bool(move_bias.clamp(0.0, 1.0)) {
            let (strand, crossing) = moves[rng.gen_range(0..moves.len())];
            let source = diagram.other_under(crossing, strand).expect("legal move");
            EventKind::Move {
                strand,
                source,
                crossing,
            }
        } else {
            let uncolored: Vec<_> = diagram.strands().filter(|&s| !state.is_colored(s)).collect();
            EventKind::Seed(uncolored[rng.gen_range(0..uncolored.len())])
        };
        log.events.push(state.apply(diagram, kind).expect("chosen from legal options"));
    }
    log
}
