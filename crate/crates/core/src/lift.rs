//! Lifting a completed coloring to a height function on the knot.
//!
//! Every strand sits at the height of its Δ-ordering position and every
//! multi-colored crossing dips to its own position. Walking once around the
//! knot, the only critical points are the seed strands (maxima) and the
//! multi-colored crossings (minima). The width of the lifted knot is then
//! recovered by sweeping a level plane through the critical heights, without
//! ever looking at the attached sequence.

use std::fmt;

use thiserror::Error;

use crate::coloring::{replay_and_verify, DeltaOrdering, EventLog, ReplayError};
use crate::gauss::{CrossingId, Diagram, StrandId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("{0}")]
    Replay(#[from] ReplayError),
    #[error("the coloring is not complete")]
    Incomplete,
    #[error("critical events do not alternate between maxima and minima near walk position {position}")]
    AlternationViolation { position: usize },
    #[error("heights are not strictly monotone between critical events near walk position {position}")]
    MonotonicityViolation { position: usize },
    #[error("over-strand at crossing {0} lies below both of its under-strands")]
    OverStrandTooLow(CrossingId),
    #[error("profile has no events or repeated critical heights")]
    DegenerateProfile,
}

/// Height `-t` for the element at Δ-ordering position `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightAssignment {
    strand: Vec<i64>,
    crossing: Vec<Option<i64>>,
}

impl HeightAssignment {
    pub fn new(diagram: &Diagram, log: &EventLog) -> Self {
        let delta = DeltaOrdering::new(diagram, log);
        HeightAssignment {
            strand: diagram.strands().map(|s| delta.strand_height(s)).collect(),
            crossing: diagram.crossings().map(|x| delta.crossing_height(x)).collect(),
        }
    }

    pub fn strand(&self, s: StrandId) -> i64 {
        self.strand[s.index()]
    }

    pub fn crossing(&self, x: CrossingId) -> Option<i64> {
        self.crossing[x.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkPoint {
    Strand(StrandId),
    Crossing(CrossingId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    Max(StrandId),
    Min(CrossingId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalEvent {
    pub kind: CriticalKind,
    pub height: i64,
}

impl fmt::Display for CriticalEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CriticalKind::Max(s) => write!(f, "max strand {s} {}", self.height),
            CriticalKind::Min(x) => write!(f, "min crossing {x} {}", self.height),
        }
    }
}

/// Critical events in the cyclic order met while walking the knot, starting
/// at the first seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseProfile {
    pub events: Vec<CriticalEvent>,
    /// Every point of the walk with its height.
    pub walk: Vec<(WalkPoint, i64)>,
}

impl MorseProfile {
    pub fn maxima(&self) -> usize {
        self.events.iter().filter(|e| matches!(e.kind, CriticalKind::Max(_))).count()
    }

    pub fn minima(&self) -> usize {
        self.events.len() - self.maxima()
    }

    /// One critical event per line.
    pub fn heights_text(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }

    /// `(walk position, height)` pairs, closed back to the start.
    pub fn polyline(&self) -> Vec<(usize, i64)> {
        let mut pts: Vec<(usize, i64)> = self.walk.iter().enumerate().map(|(i, &(_, h))| (i, h)).collect();
        if let Some(&(_, h)) = self.walk.first() {
            pts.push((self.walk.len(), h));
        }
        pts
    }
}

/// Replays `log`, lifts it and checks that the lift has exactly the expected
/// critical points.
pub fn build_profile(diagram: &Diagram, log: &EventLog) -> Result<MorseProfile, LiftError> {
    let state = replay_and_verify(diagram, log)?;
    if !state.is_complete() {
        return Err(LiftError::Incomplete);
    }
    let heights = HeightAssignment::new(diagram, log);
    let seeds: Vec<StrandId> = log.seeds().collect();
    let start = seeds[0];

    if diagram.n_crossings() == 0 {
        let h = heights.strand(start);
        return Ok(MorseProfile {
            events: vec![CriticalEvent {
                kind: CriticalKind::Max(start),
                height: h,
            }],
            walk: vec![(WalkPoint::Strand(start), h)],
        });
    }

    let mut walk = Vec::with_capacity(2 * diagram.n_strands());
    let mut events = Vec::new();
    let mut s = start;
    loop {
        let h = heights.strand(s);
        if seeds.contains(&s) {
            events.push((walk.len(), CriticalEvent { kind: CriticalKind::Max(s), height: h }));
        }
        walk.push((WalkPoint::Strand(s), h));
        let (_, x) = diagram.endpoints(s).expect("crossings exist");
        match heights.crossing(x) {
            Some(hx) => {
                events.push((walk.len(), CriticalEvent { kind: CriticalKind::Min(x), height: hx }));
                walk.push((WalkPoint::Crossing(x), hx));
            }
            None if seeds.len() > 1 => {
                let (a, b) = diagram.under_pair(x);
                let low = heights.strand(a).min(heights.strand(b));
                if heights.strand(diagram.over_strand(x)) <= low {
                    return Err(LiftError::OverStrandTooLow(x));
                }
            }
            None => {}
        }
        s = diagram.next(s).expect("crossings exist");
        if s == start {
            break;
        }
    }

    check_shape(&walk, &events)?;
    Ok(MorseProfile {
        events: events.into_iter().map(|(_, e)| e).collect(),
        walk,
    })
}

fn check_shape(walk: &[(WalkPoint, i64)], events: &[(usize, CriticalEvent)]) -> Result<(), LiftError> {
    let n = walk.len();
    let h = |i: usize| walk[i % n].1;

    if events.len() == 1 {
        // One class: heights fall away from the seed in both directions and
        // meet in a single unrecorded minimum.
        let p = events[0].0;
        let mut i = 0;
        while i + 1 < n && h(p + i) > h(p + i + 1) {
            i += 1;
        }
        while i + 1 < n && h(p + i) < h(p + i + 1) {
            i += 1;
        }
        if i + 1 != n {
            return Err(LiftError::MonotonicityViolation { position: (p + i) % n });
        }
        return Ok(());
    }

    for (k, &(p, e)) in events.iter().enumerate() {
        let (q, f) = events[(k + 1) % events.len()];
        let falling = match (e.kind, f.kind) {
            (CriticalKind::Max(_), CriticalKind::Min(_)) => true,
            (CriticalKind::Min(_), CriticalKind::Max(_)) => false,
            _ => return Err(LiftError::AlternationViolation { position: q }),
        };
        let len = (q + n - p) % n;
        for i in p..p + len {
            let ok = if falling { h(i) > h(i + 1) } else { h(i) < h(i + 1) };
            if !ok {
                return Err(LiftError::MonotonicityViolation { position: i % n });
            }
        }
    }
    Ok(())
}

/// Sum over the gaps between consecutive critical heights of the number of
/// profile arcs crossing a level in that gap.
pub fn sweep_width(profile: &MorseProfile) -> Result<i64, LiftError> {
    let events = &profile.events;
    match events.len() {
        0 => return Err(LiftError::DegenerateProfile),
        1 if matches!(events[0].kind, CriticalKind::Max(_)) => return Ok(2),
        1 => return Err(LiftError::DegenerateProfile),
        _ => {}
    }
    let mut levels: Vec<i64> = events.iter().map(|e| e.height).collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    if levels.windows(2).any(|w| w[0] == w[1]) {
        return Err(LiftError::DegenerateProfile);
    }
    let arcs: Vec<(i64, i64)> = (0..events.len())
        .map(|i| {
            let a = events[i].height;
            let b = events[(i + 1) % events.len()].height;
            (a.min(b), a.max(b))
        })
        .collect();
    let width = levels
        .windows(2)
        .map(|w| {
            // Doubled coordinates keep the midpoint level integral.
            let r = w[0] + w[1];
            arcs.iter().filter(|&&(lo, hi)| 2 * lo < r && r < 2 * hi).count() as i64
        })
        .sum();
    Ok(width)
}
