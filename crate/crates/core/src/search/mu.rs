use itertools::Itertools;
use thiserror::Error;

use crate::coloring::{move_closure, ColoringState, EventLog};
use crate::gauss::{Diagram, StrandId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no set of at most {0} seeds completes a coloring")]
pub struct Unresolved(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuWitness {
    pub k: usize,
    /// Lexicographically first successful seed set.
    pub seeds: Vec<StrandId>,
    pub subsets_checked: u64,
}

impl MuWitness {
    /// All seeds up front, then saturation.
    pub fn log(&self, diagram: &Diagram) -> EventLog {
        let mut state = ColoringState::new(diagram);
        let mut log = EventLog::new();
        for &s in &self.seeds {
            log.events.push(state.seed_addition(diagram, s).expect("distinct seeds"));
        }
        log.events.extend(state.saturate(diagram));
        debug_assert!(state.is_complete());
        log
    }
}

/// Smallest `k <= k_max` such that some `k` strands, seeded up front and
/// closed under coloring moves, color the whole diagram.
///
/// Up-front seeding loses nothing: move eligibility only asks which strands
/// are colored, and that only grows, so the seeds of any completed sequence
/// also work when placed first.
pub fn wirtinger_number(diagram: &Diagram, k_max: usize) -> Result<MuWitness, Unresolved> {
    let n = diagram.n_strands();
    let mut subsets_checked = 0u64;
    for k in 1..=k_max.min(n) {
        for combo in (0..n).combinations(k) {
            subsets_checked += 1;
            let mut colored = vec![false; n];
            for &s in &combo {
                colored[s] = true;
            }
            move_closure(diagram, &mut colored);
            if colored.iter().all(|&c| c) {
                return Ok(MuWitness {
                    k,
                    seeds: combo.into_iter().map(|s| StrandId(s as u32)).collect(),
                    subsets_checked,
                });
            }
        }
    }
    Err(Unresolved(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::replay_and_verify;

    #[test]
    fn trefoil_needs_two() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let w = wirtinger_number(&d, 3).unwrap();
        assert_eq!(w.k, 2);
        assert_eq!(w.seeds, vec![StrandId(0), StrandId(1)]);
        assert!(replay_and_verify(&d, &w.log(&d)).unwrap().is_complete());
        assert_eq!(wirtinger_number(&d, 1), Err(Unresolved(1)));
    }

    #[test]
    fn unknot_needs_one() {
        let d = Diagram::parse("").unwrap();
        assert_eq!(wirtinger_number(&d, 1).unwrap().k, 1);
        assert_eq!(wirtinger_number(&d, 0), Err(Unresolved(0)));
    }

    #[test]
    fn figure_eight_needs_two() {
        let d = Diagram::parse("-1,2,-3,4,-2,1,-4,3").unwrap();
        assert_eq!(wirtinger_number(&d, 4).unwrap().k, 2);
    }
}
