//! The partial-coloring calculus on knot diagrams.
//!
//! A coloring is grown one strand at a time. A *seed addition* gives an
//! uncolored strand a brand-new color; a *coloring move* lets an uncolored
//! strand inherit the color of the other under-strand at one of its endpoint
//! crossings, provided that crossing's over-strand is already colored. A
//! crossing becomes *multi-colored* the first time all three of its strands
//! are colored and its two under-strands disagree.
//!
//! Colors are only ever compared for equality. A fresh color is the stage
//! number at which it was created.

mod attached;
pub mod invariants;
mod log;
pub mod random;

pub use attached::{attached_sequence, AttachedError, AttachedSequence, DeltaItem, DeltaMark, DeltaOrdering};
pub use log::{replay_and_verify, EventLog, LogParseError, ReplayError, Violation};
pub(crate) use log::disconnected_class;

use thiserror::Error;

use crate::gauss::{CrossingId, Diagram, StrandId};

pub type Color = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MoveIneligibility {
    #[error("strand is not an under-strand of the crossing")]
    NotUnderStrand,
    #[error("the other under-strand is uncolored")]
    SourceUncolored,
    #[error("the over-strand is uncolored")]
    OverUncolored,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("strand {0} is already colored")]
    AlreadyColored(StrandId),
    #[error("strand {0} does not exist")]
    UnknownStrand(StrandId),
    #[error("crossing {0} does not exist")]
    UnknownCrossing(CrossingId),
    #[error("cannot color strand {strand} over crossing {crossing}: {reason}")]
    IneligibleMove {
        strand: StrandId,
        crossing: CrossingId,
        reason: MoveIneligibility,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Seed(StrandId),
    Move {
        strand: StrandId,
        source: StrandId,
        crossing: CrossingId,
    },
}

impl EventKind {
    pub fn strand(&self) -> StrandId {
        match *self {
            EventKind::Seed(s) => s,
            EventKind::Move { strand, .. } => strand,
        }
    }

    pub fn is_seed(&self) -> bool {
        matches!(self, EventKind::Seed(_))
    }
}

/// One stage of a coloring sequence: the strand colored plus the crossings
/// that became multi-colored at that stage, in increasing crossing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    pub kind: EventKind,
    pub newly_multicolored: Vec<CrossingId>,
}

/// A partial coloring together with its multi-colored crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringState {
    color_of: Vec<Option<Color>>,
    multicolored: Vec<bool>,
    colors_used: usize,
    n_colored: usize,
    n_multicolored: usize,
    stage: u32,
}

impl ColoringState {
    /// The vacuous coloring.
    pub fn new(diagram: &Diagram) -> Self {
        ColoringState {
            color_of: vec![None; diagram.n_strands()],
            multicolored: vec![false; diagram.n_crossings()],
            colors_used: 0,
            n_colored: 0,
            n_multicolored: 0,
            stage: 0,
        }
    }

    pub fn color(&self, s: StrandId) -> Option<Color> {
        self.color_of[s.index()]
    }

    pub fn is_colored(&self, s: StrandId) -> bool {
        self.color_of[s.index()].is_some()
    }

    pub fn colors_used(&self) -> usize {
        self.colors_used
    }

    pub fn n_colored(&self) -> usize {
        self.n_colored
    }

    pub fn n_multicolored(&self) -> usize {
        self.n_multicolored
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn is_complete(&self) -> bool {
        self.n_colored == self.color_of.len()
    }

    pub fn is_multicolored(&self, x: CrossingId) -> bool {
        self.multicolored[x.index()]
    }

    pub fn multicolored(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.multicolored
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| CrossingId(i as u32))
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.color_of
    }

    /// Twice the number of color classes not yet closed off by a
    /// multi-colored crossing; the current attached-sequence value.
    pub fn level(&self) -> i64 {
        2 * (self.colors_used as i64 - self.n_multicolored as i64)
    }

    /// Canonical signature: class index per strand numbered by first
    /// occurrence in strand order, 0 for uncolored.
    pub fn partition_key(&self) -> Vec<u8> {
        let mut map: Vec<(Color, u8)> = Vec::new();
        self.color_of
            .iter()
            .map(|c| match c {
                None => 0,
                Some(c) => match map.iter().find(|(k, _)| k == c) {
                    Some(&(_, v)) => v,
                    None => {
                        let v = map.len() as u8 + 1;
                        map.push((*c, v));
                        v
                    }
                },
            })
            .collect()
    }

    fn check_strand(&self, s: StrandId) -> Result<(), ColoringError> {
        if s.index() >= self.color_of.len() {
            return Err(ColoringError::UnknownStrand(s));
        }
        if self.is_colored(s) {
            return Err(ColoringError::AlreadyColored(s));
        }
        Ok(())
    }

    pub fn seed_addition(&mut self, diagram: &Diagram, s: StrandId) -> Result<Event, ColoringError> {
        self.check_strand(s)?;
        self.stage += 1;
        self.assign(s, self.stage);
        self.colors_used += 1;
        Ok(Event {
            kind: EventKind::Seed(s),
            newly_multicolored: self.detect_multicolored(diagram, s),
        })
    }

    /// Returns the source strand the move would inherit from.
    pub fn check_move(&self, diagram: &Diagram, s: StrandId, x: CrossingId) -> Result<StrandId, ColoringError> {
        self.check_strand(s)?;
        if x.index() >= self.multicolored.len() {
            return Err(ColoringError::UnknownCrossing(x));
        }
        let ineligible = |reason| ColoringError::IneligibleMove {
            strand: s,
            crossing: x,
            reason,
        };
        let source = diagram
            .other_under(x, s)
            .ok_or(ineligible(MoveIneligibility::NotUnderStrand))?;
        if !self.is_colored(source) {
            return Err(ineligible(MoveIneligibility::SourceUncolored));
        }
        if !self.is_colored(diagram.over_strand(x)) {
            return Err(ineligible(MoveIneligibility::OverUncolored));
        }
        Ok(source)
    }

    pub fn coloring_move(&mut self, diagram: &Diagram, s: StrandId, x: CrossingId) -> Result<Event, ColoringError> {
        let source = self.check_move(diagram, s, x)?;
        self.stage += 1;
        self.assign(s, self.color_of[source.index()].expect("checked"));
        Ok(Event {
            kind: EventKind::Move {
                strand: s,
                source,
                crossing: x,
            },
            newly_multicolored: self.detect_multicolored(diagram, s),
        })
    }

    pub fn apply(&mut self, diagram: &Diagram, kind: EventKind) -> Result<Event, ColoringError> {
        match kind {
            EventKind::Seed(s) => self.seed_addition(diagram, s),
            EventKind::Move { strand, crossing, .. } => self.coloring_move(diagram, strand, crossing),
        }
    }

    fn assign(&mut self, s: StrandId, color: Color) {
        self.color_of[s.index()] = Some(color);
        self.n_colored += 1;
    }

    // Any crossing that turns multi-colored now must involve `s`.
    fn detect_multicolored(&mut self, diagram: &Diagram, s: StrandId) -> Vec<CrossingId> {
        let mut fresh = Vec::new();
        for x in diagram.incident_crossings(s) {
            if self.multicolored[x.index()] {
                continue;
            }
            let (a, b) = diagram.under_pair(x);
            let v = diagram.over_strand(x);
            if let (Some(ca), Some(cb), Some(_)) = (self.color(a), self.color(b), self.color(v)) {
                if ca != cb {
                    self.multicolored[x.index()] = true;
                    self.n_multicolored += 1;
                    fresh.push(x);
                }
            }
        }
        fresh
    }

    /// Every eligible coloring move, ordered by strand then crossing.
    pub fn legal_moves(&self, diagram: &Diagram) -> Vec<(StrandId, CrossingId)> {
        let mut out = Vec::new();
        for s in diagram.strands() {
            if self.is_colored(s) {
                continue;
            }
            let Some((a, b)) = diagram.endpoints(s) else {
                continue;
            };
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for x in [lo, hi] {
                if out.last() == Some(&(s, x)) {
                    continue;
                }
                if self.check_move(diagram, s, x).is_ok() {
                    out.push((s, x));
                }
            }
        }
        out
    }

    /// Applies the first legal move until none remain.
    pub fn saturate(&mut self, diagram: &Diagram) -> Vec<Event> {
        let mut events = Vec::new();
        while let Some(&(s, x)) = self.legal_moves(diagram).first() {
            events.push(self.coloring_move(diagram, s, x).expect("legal"));
        }
        events
    }
}

/// Colored-set closure under coloring moves. Eligibility depends only on
/// which strands are colored, never on the colors themselves.
pub fn move_closure(diagram: &Diagram, colored: &mut [bool]) {
    loop {
        let mut changed = false;
        for x in diagram.crossings() {
            let (a, b) = diagram.under_pair(x);
            if !colored[diagram.over_strand(x).index()] {
                continue;
            }
            if colored[a.index()] != colored[b.index()] {
                colored[a.index()] = true;
                colored[b.index()] = true;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "-1,2,-3,1,-2,3";
    const A: StrandId = StrandId(0);
    const B: StrandId = StrandId(1);
    const C: StrandId = StrandId(2);

    fn x(label: u32) -> CrossingId {
        CrossingId::from_label(label).unwrap()
    }

    #[test]
    fn first_seed_multicolors_nothing() {
        let d = Diagram::parse(TREFOIL).unwrap();
        for s in d.strands() {
            let mut st = ColoringState::new(&d);
            let ev = st.seed_addition(&d, s).unwrap();
            assert_eq!(st.n_colored(), 1);
            assert_eq!(st.colors_used(), 1);
            assert!(ev.newly_multicolored.is_empty());
        }
    }

    #[test]
    fn trefoil_two_seeds_then_third() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let mut st = ColoringState::new(&d);
        st.seed_addition(&d, A).unwrap();
        let ev = st.seed_addition(&d, B).unwrap();
        // crossing 3 has unders (A, B) but over C is still uncolored
        assert!(ev.newly_multicolored.is_empty());
        assert!(!st.is_multicolored(x(3)));
        let ev = st.seed_addition(&d, C).unwrap();
        assert_eq!(ev.newly_multicolored, vec![x(1), x(2), x(3)]);
        assert_eq!(st.level(), 0);
    }

    #[test]
    fn trefoil_move_inherits_across_crossing_two() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let mut st = ColoringState::new(&d);
        st.seed_addition(&d, A).unwrap();
        st.seed_addition(&d, B).unwrap();
        let ev = st.coloring_move(&d, C, x(2)).unwrap();
        assert_eq!(
            ev.kind,
            EventKind::Move {
                strand: C,
                source: B,
                crossing: x(2)
            }
        );
        assert_eq!(st.color(C), st.color(B));
        assert_eq!(ev.newly_multicolored, vec![x(1), x(3)]);
        assert!(!st.is_multicolored(x(2)));
        assert!(st.is_complete());
        assert_eq!(st.colors_used(), 2);
    }

    #[test]
    fn ineligible_moves() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let mut st = ColoringState::new(&d);
        st.seed_addition(&d, B).unwrap();
        // crossing 2: unders (B, C), over A uncolored
        assert_eq!(
            st.coloring_move(&d, C, x(2)),
            Err(ColoringError::IneligibleMove {
                strand: C,
                crossing: x(2),
                reason: MoveIneligibility::OverUncolored
            })
        );
        // crossing 3: unders (A, B), C is not one of them
        assert!(matches!(
            st.coloring_move(&d, C, x(3)),
            Err(ColoringError::IneligibleMove {
                reason: MoveIneligibility::NotUnderStrand,
                ..
            })
        ));
        // crossing 1: unders (C, A), A uncolored
        assert!(matches!(
            st.coloring_move(&d, C, x(1)),
            Err(ColoringError::IneligibleMove {
                reason: MoveIneligibility::SourceUncolored,
                ..
            })
        ));
        assert_eq!(st.coloring_move(&d, B, x(2)), Err(ColoringError::AlreadyColored(B)));
        assert_eq!(st.seed_addition(&d, B), Err(ColoringError::AlreadyColored(B)));
        // failed attempts leave the state untouched
        assert_eq!(st.stage(), 1);
        assert_eq!(st.n_colored(), 1);
    }

    #[test]
    fn legal_moves_enumeration() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let mut st = ColoringState::new(&d);
        assert!(st.legal_moves(&d).is_empty());
        st.seed_addition(&d, A).unwrap();
        st.seed_addition(&d, B).unwrap();
        // C's endpoints are crossings 2 (unders B,C; over A) and 1 (unders C,A; over B)
        assert_eq!(st.legal_moves(&d), vec![(C, x(1)), (C, x(2))]);
        st.coloring_move(&d, C, x(1)).unwrap();
        assert!(st.legal_moves(&d).is_empty());
    }

    #[test]
    fn partition_key_ignores_color_values() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let mut a = ColoringState::new(&d);
        a.seed_addition(&d, B).unwrap();
        a.seed_addition(&d, A).unwrap();
        let mut b = ColoringState::new(&d);
        b.seed_addition(&d, A).unwrap();
        b.seed_addition(&d, B).unwrap();
        assert_eq!(a.partition_key(), vec![1, 2, 0]);
        assert_eq!(a.partition_key(), b.partition_key());
    }

    #[test]
    fn closure_of_two_trefoil_strands_is_everything() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let mut colored = vec![true, true, false];
        move_closure(&d, &mut colored);
        assert_eq!(colored, vec![true; 3]);
        let mut colored = vec![true, false, false];
        move_closure(&d, &mut colored);
        assert_eq!(colored, vec![true, false, false]);
    }

    #[test]
    fn unknot_single_seed_completes() {
        let d = Diagram::parse("").unwrap();
        let mut st = ColoringState::new(&d);
        st.seed_addition(&d, StrandId(0)).unwrap();
        assert!(st.is_complete());
        assert!(st.legal_moves(&d).is_empty());
        assert_eq!(st.level(), 2);
    }
}
