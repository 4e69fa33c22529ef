//! Ground truth by brute force: enumerate every completed coloring sequence
//! of a small diagram and take the minima directly.
//!
//! Nothing is pruned or merged. Moves that color the same strand through
//! different crossings count as different sequences. Every enumerated
//! sequence also runs through the full invariant suite, so a single oracle
//! run doubles as an exhaustive property check.

use thiserror::Error;

use crate::coloring::invariants::{check_completed_state, InvariantViolation};
use crate::coloring::{disconnected_class, ColoringState, Event, EventKind, EventLog};
use crate::gauss::Diagram;

pub const DEFAULT_MAX_CROSSINGS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("diagram has {crossings} crossings; the oracle is limited to {guard}")]
    TooLarge { crossings: usize, guard: usize },
    #[error("enumerated sequence violates an invariant: {violation}\n{log}")]
    InvariantViolated { log: EventLog, violation: InvariantViolation },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub min_width: i64,
    pub min_seed_count: usize,
    pub count_of_optimal_logs: u64,
    pub logs_enumerated: u64,
    /// First width-optimal sequence in enumeration order.
    pub witness: EventLog,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub max_crossings: usize,
    /// Run the invariant suite on every enumerated sequence.
    pub check_invariants: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_crossings: DEFAULT_MAX_CROSSINGS,
            check_invariants: true,
        }
    }
}

struct Enumeration<'a> {
    diagram: &'a Diagram,
    check: bool,
    best: Option<OracleResult>,
    min_seeds: usize,
    logs: u64,
}

impl Enumeration<'_> {
    fn visit(&mut self, state: &ColoringState, events: &mut Vec<Event>, level: i64, cost: i64) -> Result<(), OracleError> {
        if state.is_complete() {
            return self.leaf(state, events, cost);
        }
        let d = self.diagram;
        let seeds = d.strands().filter(|&s| !state.is_colored(s)).map(EventKind::Seed);
        let moves = state.legal_moves(d).into_iter().map(|(strand, crossing)| EventKind::Move {
            strand,
            source: d.other_under(crossing, strand).expect("legal move"),
            crossing,
        });
        let options: Vec<EventKind> = seeds.chain(moves).collect();
        for kind in options {
            let mut next = state.clone();
            let ev = next.apply(d, kind).expect("enumerated from legal options");
            let mut lvl = level;
            let mut step = 0;
            if kind.is_seed() {
                lvl += 2;
                step += lvl;
            }
            for _ in &ev.newly_multicolored {
                lvl -= 2;
                step += lvl;
            }
            events.push(ev);
            if self.check {
                if let Some(color) = disconnected_class(d, &next) {
                    let log = EventLog { events: events.clone() };
                    return Err(OracleError::InvariantViolated {
                        log,
                        violation: InvariantViolation::Replay(crate::coloring::ReplayError {
                            stage: events.len(),
                            violation: crate::coloring::Violation::Disconnected(color),
                        }),
                    });
                }
            }
            self.visit(&next, events, lvl, cost + step)?;
            events.pop();
        }
        Ok(())
    }

    fn leaf(&mut self, state: &ColoringState, events: &[Event], cost: i64) -> Result<(), OracleError> {
        self.logs += 1;
        let log = || EventLog { events: events.to_vec() };
        if self.check {
            let attached = check_completed_state(self.diagram, state, &log())
                .map_err(|violation| OracleError::InvariantViolated { log: log(), violation })?;
            assert_eq!(attached.total, cost, "running total disagrees with the attached sequence");
        }
        self.min_seeds = self.min_seeds.min(state.colors_used());
        match &mut self.best {
            Some(b) if cost > b.min_width => {}
            Some(b) if cost == b.min_width => b.count_of_optimal_logs += 1,
            _ => {
                self.best = Some(OracleResult {
                    min_width: cost,
                    min_seed_count: 0,
                    count_of_optimal_logs: 1,
                    logs_enumerated: 0,
                    witness: log(),
                })
            }
        }
        Ok(())
    }
}

/// Minimal width and seed count over every completed coloring sequence.
pub fn oracle_min_width(diagram: &Diagram, options: OracleOptions) -> Result<OracleResult, OracleError> {
    if diagram.n_crossings() > options.max_crossings {
        return Err(OracleError::TooLarge {
            crossings: diagram.n_crossings(),
            guard: options.max_crossings,
        });
    }
    let mut run = Enumeration {
        diagram,
        check: options.check_invariants,
        best: None,
        min_seeds: usize::MAX,
        logs: 0,
    };
    run.visit(&ColoringState::new(diagram), &mut Vec::new(), 0, 0)?;
    let mut result = run.best.expect("every diagram has a completed sequence");
    result.min_seed_count = run.min_seeds;
    result.logs_enumerated = run.logs;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::attached_sequence;

    #[test]
    fn trefoil() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let r = oracle_min_width(&d, OracleOptions::default()).unwrap();
        assert_eq!(r.min_width, 8);
        assert_eq!(r.min_seed_count, 2);
        assert_eq!(attached_sequence(&d, &r.witness).unwrap().total, 8);
    }

    #[test]
    fn unknot() {
        let d = Diagram::parse("").unwrap();
        let r = oracle_min_width(&d, OracleOptions::default()).unwrap();
        assert_eq!(r.min_width, 2);
        assert_eq!(r.min_seed_count, 1);
        assert_eq!(r.logs_enumerated, 1);
    }

    #[test]
    fn guard() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let opts = OracleOptions {
            max_crossings: 2,
            ..Default::default()
        };
        assert_eq!(oracle_min_width(&d, opts), Err(OracleError::TooLarge { crossings: 3, guard: 2 }));
    }
}
