use thiserror::Error;

use super::{replay_and_verify, EventLog, ReplayError};
use crate::gauss::{CrossingId, Diagram, StrandId};

/// An element of a Δ-ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaItem {
    Strand { strand: StrandId, seed: bool },
    Crossing(CrossingId),
}

/// Restriction of a Δ-ordering to seeds and multi-colored crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaMark {
    Seed,
    Multicolored,
}

/// Stage-respecting enumeration of colored strands and multi-colored
/// crossings: each stage lists its strand, then the crossings it
/// multi-colored in recorded order. Position `t` (1-based) has height `-t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOrdering {
    items: Vec<DeltaItem>,
    strand_height: Vec<i64>,
    crossing_height: Vec<Option<i64>>,
}

impl DeltaOrdering {
    pub fn new(diagram: &Diagram, log: &EventLog) -> Self {
        let mut items = Vec::new();
        let mut strand_height = vec![0; diagram.n_strands()];
        let mut crossing_height = vec![None; diagram.n_crossings()];
        for ev in &log.events {
            let s = ev.kind.strand();
            items.push(DeltaItem::Strand {
                strand: s,
                seed: ev.kind.is_seed(),
            });
            if let Some(h) = strand_height.get_mut(s.index()) {
                *h = -(items.len() as i64);
            }
            for &x in &ev.newly_multicolored {
                items.push(DeltaItem::Crossing(x));
                if let Some(h) = crossing_height.get_mut(x.index()) {
                    *h = Some(-(items.len() as i64));
                }
            }
        }
        DeltaOrdering {
            items,
            strand_height,
            crossing_height,
        }
    }

    pub fn items(&self) -> &[DeltaItem] {
        &self.items
    }

    pub fn strand_height(&self, s: StrandId) -> i64 {
        self.strand_height[s.index()]
    }

    /// `None` when `x` never became multi-colored.
    pub fn crossing_height(&self, x: CrossingId) -> Option<i64> {
        self.crossing_height[x.index()]
    }

    pub fn marks(&self) -> Vec<DeltaMark> {
        self.items
            .iter()
            .filter_map(|it| match it {
                DeltaItem::Strand { seed: true, .. } => Some(DeltaMark::Seed),
                DeltaItem::Strand { seed: false, .. } => None,
                DeltaItem::Crossing(_) => Some(DeltaMark::Multicolored),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttachedError {
    #[error("the coloring sequence does not color every strand")]
    IncompleteSequence,
    #[error("the event word is empty")]
    EmptyWord,
    #[error("the first event of a coloring sequence must be a seed")]
    FirstNotSeed,
    #[error(transparent)]
    Replay(#[from] ReplayError),
}

/// Running level per seed/multi-colored event: 2 at the first seed, then +2
/// for every seed and -2 for every multi-colored crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachedSequence {
    pub values: Vec<i64>,
    pub total: i64,
}

impl AttachedSequence {
    pub fn from_word(word: &[DeltaMark]) -> Result<Self, AttachedError> {
        match word.first() {
            None => return Err(AttachedError::EmptyWord),
            Some(DeltaMark::Multicolored) => return Err(AttachedError::FirstNotSeed),
            Some(DeltaMark::Seed) => {}
        }
        let mut level = 0i64;
        let values: Vec<i64> = word
            .iter()
            .map(|m| {
                level += match m {
                    DeltaMark::Seed => 2,
                    DeltaMark::Multicolored => -2,
                };
                level
            })
            .collect();
        let total = values.iter().sum();
        Ok(AttachedSequence { values, total })
    }

    pub fn min_prefix(&self) -> i64 {
        self.values.iter().copied().min().unwrap_or(0)
    }
}

/// Verifies `log` by replay, requires it to be complete, and returns its
/// attached sequence.
pub fn attached_sequence(diagram: &Diagram, log: &EventLog) -> Result<AttachedSequence, AttachedError> {
    let state = replay_and_verify(diagram, log)?;
    if !state.is_complete() {
        return Err(AttachedError::IncompleteSequence);
    }
    AttachedSequence::from_word(&DeltaOrdering::new(diagram, log).marks())
}
