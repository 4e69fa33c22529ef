use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{ColoringError, ColoringState, Event, EventKind};
use crate::gauss::{CrossingId, Diagram, StrandId};

/// An ordered record of a coloring sequence.
///
/// Text form, one event per line:
///
/// ```text
/// S <strand>
/// M <strand> <source strand> <crossing label>
/// #mc <crossing label> ...
/// ```
///
/// A `#mc` line annotates the event directly above it with the crossings
/// that became multi-colored at that stage. Other lines starting with `#` and
/// blank lines are ignored. Strands are 0-based, crossings use their 1-based
/// Gauss-code labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EventLog {
    pub events: Vec<Event>,
}

impl EventLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replays `kinds` from the vacuous coloring, recording multi-colorings.
    pub fn from_kinds(diagram: &Diagram, kinds: &[EventKind]) -> Result<Self, ReplayError> {
        let mut state = ColoringState::new(diagram);
        let mut events = Vec::with_capacity(kinds.len());
        for (i, &kind) in kinds.iter().enumerate() {
            let ev = state.apply(diagram, kind).map_err(|e| ReplayError {
                stage: i + 1,
                violation: Violation::Illegal(e),
            })?;
            events.push(ev);
        }
        Ok(EventLog { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn seed_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind.is_seed()).count()
    }

    pub fn multicolored_count(&self) -> usize {
        self.events.iter().map(|e| e.newly_multicolored.len()).sum()
    }

    pub fn seeds(&self) -> impl Iterator<Item = StrandId> + '_ {
        self.events.iter().filter_map(|e| match e.kind {
            EventKind::Seed(s) => Some(s),
            _ => None,
        })
    }
}

impl fmt::Display for EventLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ev in &self.events {
            match ev.kind {
                EventKind::Seed(s) => writeln!(f, "S {s}")?,
                EventKind::Move {
                    strand,
                    source,
                    crossing,
                } => writeln!(f, "M {strand} {source} {crossing}")?,
            }
            if !ev.newly_multicolored.is_empty() {
                f.write_str("#mc")?;
                for x in &ev.newly_multicolored {
                    write!(f, " {x}")?;
                }
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LogParseError {
    pub line: usize,
    pub message: String,
}

impl FromStr for EventLog {
    type Err = LogParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut events: Vec<Event> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: &str| LogParseError {
                line,
                message: message.to_string(),
            };
            let trimmed = raw.trim();
            let mut fields = trimmed.split_whitespace();
            let Some(head) = fields.next() else {
                continue;
            };
            if head.starts_with('#') && head != "#mc" {
                continue;
            }
            let nums: Result<Vec<u32>, _> = fields.map(str::parse::<u32>).collect();
            let nums = nums.map_err(|_| err("expected non-negative integers"))?;
            match head {
                "S" => match nums.as_slice() {
                    &[s] => events.push(Event {
                        kind: EventKind::Seed(StrandId(s)),
                        newly_multicolored: Vec::new(),
                    }),
                    _ => return Err(err("seed takes exactly one strand")),
                },
                "M" => match nums.as_slice() {
                    &[s, src, x] => {
                        let crossing = CrossingId::from_label(x).ok_or_else(|| err("crossing labels start at 1"))?;
                        events.push(Event {
                            kind: EventKind::Move {
                                strand: StrandId(s),
                                source: StrandId(src),
                                crossing,
                            },
                            newly_multicolored: Vec::new(),
                        })
                    }
                    _ => return Err(err("move takes strand, source strand and crossing")),
                },
                "#mc" => {
                    let last = events.last_mut().ok_or_else(|| err("#mc before any event"))?;
                    for x in nums {
                        let x = CrossingId::from_label(x).ok_or_else(|| err("crossing labels start at 1"))?;
                        last.newly_multicolored.push(x);
                    }
                }
                _ => return Err(err("unknown event kind")),
            }
        }
        Ok(EventLog { events })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("{0}")]
    Illegal(#[from] ColoringError),
    #[error("move records source strand {recorded} but the other under-strand is {actual}")]
    SourceMismatch { recorded: StrandId, actual: StrandId },
    #[error("recorded multi-colored crossings {recorded:?} differ from {actual:?}")]
    MulticoloredMismatch {
        recorded: Vec<u32>,
        actual: Vec<u32>,
    },
    #[error("color class {0} is not connected")]
    Disconnected(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("illegal event at stage {stage}: {violation}")]
pub struct ReplayError {
    /// 1-based stage index.
    pub stage: usize,
    pub violation: Violation,
}

/// Re-executes `log` from the vacuous coloring, checking every rule
/// precondition, the recorded multi-colorings, and connectivity of every
/// color class after every stage. Returns the final state.
pub fn replay_and_verify(diagram: &Diagram, log: &EventLog) -> Result<ColoringState, ReplayError> {
    let mut state = ColoringState::new(diagram);
    for (i, ev) in log.events.iter().enumerate() {
        let stage = i + 1;
        let fail = |violation| ReplayError { stage, violation };
        let got = state.apply(diagram, ev.kind).map_err(|e| fail(e.into()))?;
        if got.kind != ev.kind {
            if let (EventKind::Move { source: recorded, .. }, EventKind::Move { source: actual, .. }) = (ev.kind, got.kind) {
                return Err(fail(Violation::SourceMismatch { recorded, actual }));
            }
        }
        let mut recorded = ev.newly_multicolored.clone();
        recorded.sort();
        if recorded != got.newly_multicolored {
            return Err(fail(Violation::MulticoloredMismatch {
                recorded: ev.newly_multicolored.iter().map(|x| x.label()).collect(),
                actual: got.newly_multicolored.iter().map(|x| x.label()).collect(),
            }));
        }
        if let Some(color) = disconnected_class(diagram, &state) {
            return Err(fail(Violation::Disconnected(color)));
        }
    }
    Ok(state)
}

/// A color whose class is not a single arc of the strand cycle, if any.
pub(crate) fn disconnected_class(diagram: &Diagram, state: &ColoringState) -> Option<u32> {
    if diagram.n_crossings() == 0 {
        return None;
    }
    // Count arc starts per color: a class is connected iff it has at most one.
    let mut starts: Vec<(u32, u32)> = Vec::new();
    for s in diagram.strands() {
        let Some(c) = state.color(s) else { continue };
        let p = diagram.prev(s).expect("n >= 1");
        if state.color(p) == Some(c) {
            continue;
        }
        match starts.iter_mut().find(|(k, _)| *k == c) {
            Some(entry) => entry.1 += 1,
            None => starts.push((c, 1)),
        }
    }
    starts.into_iter().find(|&(_, n)| n > 1).map(|(c, _)| c)
}
