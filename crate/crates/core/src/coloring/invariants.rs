//! Structural properties every completed coloring sequence satisfies.
//!
//! Heights below are Δ-ordering heights: the `t`-th listed element sits at
//! height `-t`, so earlier means higher.
//!
//! * every color class is an arc of the strand cycle at every stage;
//! * on each final color class the height has exactly one local maximum, at
//!   its seed;
//! * with at least two colors, a crossing that never becomes multi-colored has
//!   its over-strand above the lower of its under-strands;
//! * a multi-colored crossing sits strictly below all three of its strands;
//! * seeds and multi-colored crossings balance (one class: no multi-colored
//!   crossings at all);
//! * the attached sequence never goes negative.

use thiserror::Error;

use super::{replay_and_verify, AttachedSequence, ColoringState, DeltaOrdering, EventLog, ReplayError};
use crate::gauss::{CrossingId, Diagram, StrandId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("the sequence is not completed")]
    Incomplete,
    #[error("color class of strand {strand} has {maxima} local maxima")]
    PeakCount { strand: StrandId, maxima: usize },
    #[error("crossing {0} is not multi-colored but its over-strand lies below both under-strands")]
    OverStrandTooLow(CrossingId),
    #[error("multi-colored crossing {0} is not below all its strands")]
    MulticoloredTooHigh(CrossingId),
    #[error("{seeds} seeds but {multicolored} multi-colored crossings")]
    Unbalanced { seeds: usize, multicolored: usize },
    #[error("attached sequence dips to {0}")]
    NegativePrefix(i64),
}

/// Runs every check on a completed log. Returns the attached sequence.
pub fn check_completed(diagram: &Diagram, log: &EventLog) -> Result<AttachedSequence, InvariantViolation> {
    let state = replay_and_verify(diagram, log)?;
    check_completed_state(diagram, &state, log)
}

/// Same as [`check_completed`] for a log already replayed (with per-stage
/// connectivity checked) into `state`.
pub(crate) fn check_completed_state(diagram: &Diagram, state: &ColoringState, log: &EventLog) -> Result<AttachedSequence, InvariantViolation> {
    if !state.is_complete() {
        return Err(InvariantViolation::Incomplete);
    }
    let delta = DeltaOrdering::new(diagram, log);
    check_final(diagram, state, &delta)?;

    let seeds = log.seed_count();
    let multicolored = log.multicolored_count();
    let balanced = if seeds == 1 {
        multicolored == 0
    } else {
        seeds == multicolored
    };
    if !balanced {
        return Err(InvariantViolation::Unbalanced { seeds, multicolored });
    }

    let attached = AttachedSequence::from_word(&delta.marks()).expect("first event of a legal log is a seed");
    if attached.min_prefix() < 0 {
        return Err(InvariantViolation::NegativePrefix(attached.min_prefix()));
    }
    Ok(attached)
}

/// Peak and crossing-height checks on a final coloring.
pub(crate) fn check_final(diagram: &Diagram, state: &ColoringState, delta: &DeltaOrdering) -> Result<(), InvariantViolation> {
    let h = |s: StrandId| delta.strand_height(s);
    if diagram.n_crossings() == 0 {
        return Ok(());
    }

    for (first, run) in color_arcs(diagram, state) {
        let maxima = if run.len() == diagram.n_strands() {
            // one class covering the whole cycle
            (0..run.len())
                .filter(|&i| {
                    let prev = run[(i + run.len() - 1) % run.len()];
                    let next = run[(i + 1) % run.len()];
                    h(run[i]) > h(prev) && h(run[i]) > h(next)
                })
                .count()
        } else {
            local_maxima(&run.iter().map(|&s| h(s)).collect::<Vec<_>>())
        };
        if maxima != 1 {
            return Err(InvariantViolation::PeakCount { strand: first, maxima });
        }
    }

    let several_colors = state.colors_used() >= 2;
    for x in diagram.crossings() {
        let (p, q) = diagram.under_pair(x);
        let v = diagram.over_strand(x);
        match delta.crossing_height(x) {
            Some(hx) => {
                if hx >= h(p).min(h(q)).min(h(v)) {
                    return Err(InvariantViolation::MulticoloredTooHigh(x));
                }
            }
            None if several_colors && h(v) <= h(p).min(h(q)) => {
                return Err(InvariantViolation::OverStrandTooLow(x));
            }
            None => {}
        }
    }
    Ok(())
}

/// Maximal same-color arcs along the strand cycle, each listed in walk order
/// starting from its first strand.
pub(crate) fn color_arcs(diagram: &Diagram, state: &ColoringState) -> Vec<(StrandId, Vec<StrandId>)> {
    let n = diagram.n_strands();
    let mut arcs = Vec::new();
    for s in diagram.strands() {
        let Some(c) = state.color(s) else { continue };
        let p = diagram.prev(s).expect("n >= 1");
        if state.color(p) == Some(c) {
            continue;
        }
        let mut run = vec![s];
        let mut cur = diagram.next(s).expect("n >= 1");
        while cur != s && state.color(cur) == Some(c) {
            run.push(cur);
            cur = diagram.next(cur).expect("n >= 1");
        }
        arcs.push((s, run));
    }
    if arcs.is_empty() && n > 0 {
        if let Some(c) = state.color(StrandId(0)) {
            // whole cycle in one color
            let run: Vec<StrandId> = diagram.strands().collect();
            debug_assert!(run.iter().all(|&s| state.color(s) == Some(c)));
            arcs.push((StrandId(0), run));
        }
    }
    arcs
}

fn local_maxima(values: &[i64]) -> usize {
    let n = values.len();
    if n == 1 {
        return 1;
    }
    (0..n)
        .filter(|&i| {
            let left = i == 0 || values[i] > values[i - 1];
            let right = i == n - 1 || values[i] > values[i + 1];
            left && right
        })
        .count()
}
