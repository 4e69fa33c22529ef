//! Width and Wirtinger-number search.
//!
//! * [`exact_width`]: memoized branch-and-bound over canonical partitions of
//!   the strand set, exact within a node budget.
//! * [`lazy_seed_heuristic`]: only seeds once no coloring move is left, and
//!   searches over the order of seeds. Good upper bounds on large diagrams.
//! * [`wirtinger_number`]: least number of up-front seeds whose move closure
//!   colors everything.

mod exact;
mod heuristic;
mod mu;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use exact::exact_width;
pub use heuristic::{greedy_lazy_log, lazy_seed_heuristic};
pub use mu::{wirtinger_number, MuWitness, Unresolved};

use crate::coloring::{ColoringState, EventKind, EventLog};
use crate::gauss::{Diagram, StrandId};

/// Result of a width computation. All values are upper bounds for the
/// diagram; the `_exact` flags say whether they are the diagram's minima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub diagram: String,
    pub strategy: String,
    pub n_crossings: usize,
    pub n_strands: usize,
    pub mu_upper: usize,
    pub mu_exact: bool,
    pub width_upper: i64,
    pub width_exact: bool,
    /// Set when a node budget ran out before the search finished.
    pub budget_exhausted: bool,
    pub witness: EventLog,
    pub elapsed: Duration,
    pub nodes_explored: u64,
}

impl WidthReport {
    pub fn seeds_used(&self) -> usize {
        self.witness.seed_count()
    }
}

/// Summary fields of a report, for serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub mu_upper: usize,
    pub mu_exact: bool,
    pub width_upper: i64,
    pub width_exact: bool,
    pub seeds_used: usize,
    pub nodes: u64,
    pub ms: u128,
}

impl From<&WidthReport> for ReportSummary {
    fn from(r: &WidthReport) -> Self {
        ReportSummary {
            mu_upper: r.mu_upper,
            mu_exact: r.mu_exact,
            width_upper: r.width_upper,
            width_exact: r.width_exact,
            seeds_used: r.seeds_used(),
            nodes: r.nodes_explored,
            ms: r.elapsed.as_millis(),
        }
    }
}

/// The crossingless diagram: one seed, width 2, μ = 1.
pub fn unknot_width(diagram: &Diagram) -> WidthReport {
    assert_eq!(diagram.n_crossings(), 0, "unknot_width takes the crossingless diagram");
    let witness = EventLog::from_kinds(diagram, &[EventKind::Seed(StrandId(0))]).expect("seeding is always legal");
    WidthReport {
        diagram: String::new(),
        strategy: "unknot".into(),
        n_crossings: 0,
        n_strands: 1,
        mu_upper: 1,
        mu_exact: true,
        width_upper: 2,
        width_exact: true,
        budget_exhausted: false,
        witness,
        elapsed: Duration::ZERO,
        nodes_explored: 0,
    }
}

/// Least possible cost of the remaining events at attached level `level`:
/// every remaining event is a multi-coloring, `(L-2) + (L-4) + … + 0`. An
/// empty coloring still needs its first seed.
pub(crate) fn remaining_lower_bound(level: i64, any_colored: bool) -> i64 {
    if !any_colored {
        return 2;
    }
    let k = level / 2;
    k * (k - 1).max(0)
}

/// Advances `level` through one event and returns the attached values it
/// emits, summed.
pub(crate) fn event_cost(level: &mut i64, seed: bool, new_multicolored: usize) -> i64 {
    let mut cost = 0;
    if seed {
        *level += 2;
        cost += *level;
    }
    for _ in 0..new_multicolored {
        *level -= 2;
        cost += *level;
    }
    cost
}

/// Seeds `s` (when given), then saturates. Returns the events and their cost.
pub(crate) fn seed_and_saturate(
    diagram: &Diagram,
    state: &mut ColoringState,
    seed: Option<StrandId>,
) -> (Vec<crate::coloring::Event>, i64) {
    let mut level = state.level();
    let mut events = Vec::new();
    let mut cost = 0;
    if let Some(s) = seed {
        let ev = state.seed_addition(diagram, s).expect("seed target is uncolored");
        cost += event_cost(&mut level, true, ev.newly_multicolored.len());
        events.push(ev);
    }
    for ev in state.saturate(diagram) {
        cost += event_cost(&mut level, false, ev.newly_multicolored.len());
        events.push(ev);
    }
    (events, cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::attached_sequence;

    #[test]
    fn unknot_report() {
        let d = Diagram::parse("").unwrap();
        let r = unknot_width(&d);
        assert_eq!(r.width_upper, 2);
        assert!(r.width_exact);
        assert_eq!(r.mu_upper, 1);
        let st = crate::coloring::replay_and_verify(&d, &r.witness).unwrap();
        assert_eq!(st.colors_used(), 1);
        assert_eq!(st.n_multicolored(), 0);
        assert_eq!(attached_sequence(&d, &r.witness).unwrap().total, 2);
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(remaining_lower_bound(0, false), 2);
        assert_eq!(remaining_lower_bound(2, true), 0);
        assert_eq!(remaining_lower_bound(4, true), 2);
        assert_eq!(remaining_lower_bound(8, true), 6 + 4 + 2);
    }
}
