//! Exact Wirtinger width by memoized branch-and-bound.
//!
//! States are canonical partitions: one class index per strand, numbered by
//! first occurrence, 0 for uncolored. The rules only ever compare colors for
//! equality, so the legal continuations of a coloring and the attached values
//! they emit depend on its partition alone (the current level is twice the
//! number of classes minus the number of multi-colored crossings, both
//! readable from the partition). The memo maps a partition to either the
//! exact minimal remaining cost or a proven lower bound for it.

use std::collections::HashMap;
use std::time::Instant;

use super::{greedy_lazy_log, remaining_lower_bound, wirtinger_number, WidthReport};
use crate::coloring::{attached_sequence, EventKind, EventLog};
use crate::gauss::{CrossingId, Diagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Exact(i64),
    AtLeast(i64),
}

struct Exhausted;

struct Child {
    kind: EventKind,
    key: Vec<u8>,
    cost: i64,
    level: i64,
}

struct Solver<'a> {
    diagram: &'a Diagram,
    incident: Vec<Vec<CrossingId>>,
    memo: HashMap<Vec<u8>, Bound>,
    nodes: u64,
    budget: u64,
    enforce_budget: bool,
}

impl<'a> Solver<'a> {
    fn new(diagram: &'a Diagram, budget: u64) -> Self {
        Solver {
            diagram,
            incident: diagram.strands().map(|s| diagram.incident_crossings(s)).collect(),
            memo: HashMap::new(),
            nodes: 0,
            budget,
            enforce_budget: true,
        }
    }

    /// Children in tie-break order: coloring moves (no new color) by strand
    /// then crossing, then seeds by strand. Duplicate partitions keep the
    /// first occurrence.
    fn children(&self, key: &[u8], level: i64) -> Vec<Child> {
        let d = self.diagram;
        let n_classes = key.iter().copied().max().unwrap_or(0);
        let mut out: Vec<Child> = Vec::new();
        let push = |kind: EventKind, class: u8, out: &mut Vec<Child>| {
            let s = kind.strand();
            let mut next = key.to_vec();
            next[s.index()] = class;
            let new_mc = self.incident[s.index()]
                .iter()
                .filter(|&&x| {
                    let (p, q) = d.under_pair(x);
                    let v = d.over_strand(x);
                    next[p.index()] != 0 && next[q.index()] != 0 && next[v.index()] != 0 && next[p.index()] != next[q.index()]
                })
                .count();
            canonicalize(&mut next);
            if out.iter().any(|c| c.key == next) {
                return;
            }
            let mut lvl = level;
            let cost = super::event_cost(&mut lvl, kind.is_seed(), new_mc);
            out.push(Child {
                kind,
                key: next,
                cost,
                level: lvl,
            });
        };

        for s in d.strands() {
            if key[s.index()] != 0 {
                continue;
            }
            let Some((a, b)) = d.endpoints(s) else { continue };
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for x in [lo, hi] {
                let src = d.other_under(x, s).expect("endpoint");
                if key[src.index()] != 0 && key[d.over_strand(x).index()] != 0 {
                    let kind = EventKind::Move {
                        strand: s,
                        source: src,
                        crossing: x,
                    };
                    push(kind, key[src.index()], &mut out);
                }
            }
        }
        for s in d.strands() {
            if key[s.index()] == 0 {
                push(EventKind::Seed(s), n_classes + 1, &mut out);
            }
        }
        out
    }

    /// Minimal remaining cost from `key` if it is at most `limit`; otherwise
    /// some lower bound exceeding `limit` (or an exact value above it).
    fn solve(&mut self, key: &[u8], level: i64, limit: i64) -> Result<Bound, Exhausted> {
        if key.iter().all(|&c| c != 0) {
            return Ok(Bound::Exact(0));
        }
        let floor = match self.memo.get(key) {
            Some(&Bound::Exact(v)) => return Ok(Bound::Exact(v)),
            Some(&Bound::AtLeast(lb)) if lb > limit => return Ok(Bound::AtLeast(lb)),
            Some(&Bound::AtLeast(lb)) => lb,
            None => remaining_lower_bound(level, key.iter().any(|&c| c != 0)),
        };
        if floor > limit {
            return Ok(Bound::AtLeast(floor));
        }
        self.nodes += 1;
        if self.enforce_budget && self.nodes > self.budget {
            return Err(Exhausted);
        }

        let mut best: Option<i64> = None;
        let mut lower = i64::MAX;
        for child in self.children(key, level) {
            let cap = match best {
                Some(b) => limit.min(b - 1),
                None => limit,
            };
            let child_floor = remaining_lower_bound(child.level, true);
            if child.cost + child_floor > cap {
                lower = lower.min(child.cost + child_floor);
                continue;
            }
            match self.solve(&child.key, child.level, cap - child.cost)? {
                Bound::Exact(v) if child.cost + v <= cap => best = Some(child.cost + v),
                Bound::Exact(v) | Bound::AtLeast(v) => lower = lower.min(child.cost + v),
            }
        }

        let result = match best {
            Some(b) => Bound::Exact(b),
            None => Bound::AtLeast(lower.max(floor)),
        };
        self.memo.insert(key.to_vec(), result);
        Ok(result)
    }

    /// Walks down from the root along first children that realize the
    /// optimum.
    fn reconstruct(&mut self, mut remaining: i64) -> Vec<EventKind> {
        self.enforce_budget = false;
        let mut key = vec![0u8; self.diagram.n_strands()];
        let mut level = 0;
        let mut path = Vec::new();
        while key.contains(&0) {
            let next = self
                .children(&key, level)
                .into_iter()
                .find(|child| {
                    child.cost <= remaining
                        && matches!(
                            self.solve(&child.key, child.level, remaining - child.cost),
                            Ok(Bound::Exact(v)) if v == remaining - child.cost
                        )
                })
                .expect("an optimal child exists");
            remaining -= next.cost;
            path.push(next.kind);
            key = next.key;
            level = next.level;
        }
        path
    }
}

fn canonicalize(key: &mut [u8]) {
    let mut map = [0u8; 256];
    let mut next = 0u8;
    for c in key.iter_mut() {
        if *c == 0 {
            continue;
        }
        if map[*c as usize] == 0 {
            next += 1;
            map[*c as usize] = next;
        }
        *c = map[*c as usize];
    }
}

/// Exact Wirtinger width of `diagram`, exploring at most `node_budget`
/// search nodes. When the budget runs out the report carries the lazy-seed
/// fallback witness and `width_exact = false`.
pub fn exact_width(diagram: &Diagram, node_budget: u64) -> WidthReport {
    let start = Instant::now();
    if diagram.n_crossings() == 0 {
        return super::unknot_width(diagram);
    }
    assert!(diagram.n_strands() < 255, "partition keys hold at most 254 strands");

    let mu = wirtinger_number(diagram, diagram.n_strands()).expect("seeding every strand always completes");
    let fallback = greedy_lazy_log(diagram);
    let fallback_total = attached_sequence(diagram, &fallback).expect("greedy log is complete").total;

    let mut solver = Solver::new(diagram, node_budget);
    let root = vec![0u8; diagram.n_strands()];
    let outcome = solver.solve(&root, 0, fallback_total);
    let (witness, width, exact) = match outcome {
        Ok(Bound::Exact(v)) => {
            let kinds = solver.reconstruct(v);
            let log = EventLog::from_kinds(diagram, &kinds).expect("search only takes legal transitions");
            (log, v, true)
        }
        Ok(Bound::AtLeast(_)) => unreachable!("the fallback witness bounds the optimum"),
        Err(Exhausted) => (fallback, fallback_total, false),
    };

    WidthReport {
        diagram: diagram.code().to_string(),
        strategy: "exact".into(),
        n_crossings: diagram.n_crossings(),
        n_strands: diagram.n_strands(),
        mu_upper: mu.k,
        mu_exact: true,
        width_upper: width,
        width_exact: exact,
        budget_exhausted: !exact,
        witness,
        elapsed: start.elapsed(),
        nodes_explored: solver.nodes,
    }
}
