//! Lazy seeding: add a seed only when no coloring move is left, and search
//! over which strand to seed at each such point.
//!
//! For a diagram whose Wirtinger number is 4 this is the strategy that tries
//! to fit one multi-colored crossing between the third and fourth seed
//! (attached sequence 2,4,6,4,6,4,2,0, total 28) rather than putting all four
//! seeds first (total 32).

use std::collections::HashMap;
use std::time::Instant;

use super::{remaining_lower_bound, seed_and_saturate, wirtinger_number, WidthReport};
use crate::coloring::{attached_sequence, ColoringState, Event, EventLog};
use crate::gauss::{Diagram, StrandId};

/// Saturate, seed the lowest uncolored strand, repeat.
pub fn greedy_lazy_log(diagram: &Diagram) -> EventLog {
    let order: Vec<StrandId> = diagram.strands().collect();
    lazy_in_order(diagram, &order)
}

fn lazy_in_order(diagram: &Diagram, order: &[StrandId]) -> EventLog {
    let mut state = ColoringState::new(diagram);
    let mut log = EventLog::new();
    loop {
        log.events.extend(state.saturate(diagram));
        let Some(&s) = order.iter().find(|&&s| !state.is_colored(s)) else {
            break;
        };
        log.events.push(state.seed_addition(diagram, s).expect("uncolored"));
    }
    log
}

struct Lazy<'a> {
    diagram: &'a Diagram,
    order: Vec<StrandId>,
    target: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best_cost: i64,
    best: Option<Vec<Event>>,
    seen: HashMap<Vec<u8>, i64>,
}

impl Lazy<'_> {
    fn dfs(&mut self, state: &ColoringState, events: &mut Vec<Event>, cost: i64) {
        if state.is_complete() {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = Some(events.clone());
            }
            return;
        }
        if state.colors_used() >= self.target {
            return;
        }
        let mut tried: Vec<Vec<u8>> = Vec::new();
        for i in 0..self.order.len() {
            let s = self.order[i];
            if state.is_colored(s) {
                continue;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            let mut child = state.clone();
            let (evs, step) = seed_and_saturate(self.diagram, &mut child, Some(s));
            let key = child.partition_key();
            if tried.contains(&key) {
                continue;
            }
            tried.push(key.clone());
            let total = cost + step;
            if total + remaining_lower_bound(child.level(), true) >= self.best_cost {
                continue;
            }
            match self.seen.get(&key) {
                Some(&c) if c <= total => continue,
                _ => {
                    self.seen.insert(key, total);
                }
            }
            let mark = events.len();
            events.extend(evs);
            self.dfs(&child, events, total);
            events.truncate(mark);
        }
    }
}

/// Best lazily seeded coloring found within `enumeration_budget` seed
/// trials, using at most `target_seed_count` seeds (default: the diagram's
/// Wirtinger number). The report is never marked exact.
pub fn lazy_seed_heuristic(diagram: &Diagram, target_seed_count: Option<usize>, enumeration_budget: u64) -> WidthReport {
    let start = Instant::now();
    if diagram.n_crossings() == 0 {
        let mut r = super::unknot_width(diagram);
        r.strategy = "heuristic".into();
        r.width_exact = false;
        return r;
    }
    let mu = wirtinger_number(diagram, diagram.n_strands()).expect("seeding every strand always completes");
    let target = target_seed_count.unwrap_or(mu.k);

    let mut order = mu.seeds.clone();
    order.extend(diagram.strands().filter(|s| !mu.seeds.contains(s)));

    let mut search = Lazy {
        diagram,
        order,
        target,
        budget: enumeration_budget,
        nodes: 0,
        exhausted: false,
        best_cost: i64::MAX,
        best: None,
        seen: HashMap::new(),
    };

    // Following the μ seed order lazily never needs more than μ seeds.
    let first = lazy_in_order(diagram, &search.order);
    if first.seed_count() <= target {
        search.best_cost = attached_sequence(diagram, &first).expect("complete").total;
        search.best = Some(first.events);
    }
    let root = ColoringState::new(diagram);
    search.dfs(&root, &mut Vec::new(), 0);

    let witness = match search.best.take() {
        Some(events) => EventLog { events },
        None => greedy_lazy_log(diagram),
    };
    let width = attached_sequence(diagram, &witness).expect("complete").total;
    WidthReport {
        diagram: diagram.code().to_string(),
        strategy: "heuristic".into(),
        n_crossings: diagram.n_crossings(),
        n_strands: diagram.n_strands(),
        mu_upper: mu.k,
        mu_exact: true,
        width_upper: width,
        width_exact: false,
        budget_exhausted: search.exhausted,
        witness,
        elapsed: start.elapsed(),
        nodes_explored: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::replay_and_verify;

    #[test]
    fn greedy_completes() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let log = greedy_lazy_log(&d);
        assert!(replay_and_verify(&d, &log).unwrap().is_complete());
        assert_eq!(attached_sequence(&d, &log).unwrap().total, 8);
    }

    #[test]
    fn trefoil_heuristic() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let r = lazy_seed_heuristic(&d, None, 1000);
        assert_eq!(r.width_upper, 8);
        assert!(!r.width_exact);
        assert_eq!(r.seeds_used(), 2);
    }

    #[test]
    fn too_few_seeds_falls_back_to_greedy() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let r = lazy_seed_heuristic(&d, Some(1), 1000);
        assert!(replay_and_verify(&d, &r.witness).unwrap().is_complete());
        assert_eq!(r.seeds_used(), 2);
    }

    #[test]
    fn zero_budget_still_has_witness() {
        let d = Diagram::parse("-1,2,-3,4,-2,1,-4,3").unwrap();
        let r = lazy_seed_heuristic(&d, None, 0);
        assert!(r.budget_exhausted);
        assert_eq!(attached_sequence(&d, &r.witness).unwrap().total, r.width_upper);
    }
}
