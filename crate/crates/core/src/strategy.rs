//! Width algorithms behind one trait, looked up by name at runtime.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::gauss::Diagram;
use crate::oracle::{oracle_min_width, OracleError, OracleOptions};
use crate::search::{exact_width, lazy_seed_heuristic, unknot_width, WidthReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyOptions {
    /// Node budget for the exact search.
    pub node_budget: u64,
    /// Seed count for the heuristic; `None` uses the Wirtinger number.
    pub seeds: Option<usize>,
    /// Seed trials for the heuristic.
    pub enumeration_budget: u64,
    /// `auto` runs the exact search up to this many crossings.
    pub auto_threshold: usize,
    pub oracle_max_crossings: usize,
}

impl Default for StrategyOptions {
    fn default() -> Self {
        StrategyOptions {
            node_budget: 5_000_000,
            seeds: None,
            enumeration_budget: 20_000,
            auto_threshold: 12,
            oracle_max_crossings: crate::oracle::DEFAULT_MAX_CROSSINGS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("unknown strategy {name:?}; available: {available}")]
    Unknown { name: String, available: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

pub trait WidthStrategy: Send + Sync {
    fn name(&self) -> &str;

    fn compute(&self, diagram: &Diagram, options: &StrategyOptions) -> Result<WidthReport, StrategyError>;
}

pub struct Exact;

impl WidthStrategy for Exact {
    fn name(&self) -> &str {
        "exact"
    }

    fn compute(&self, diagram: &Diagram, options: &StrategyOptions) -> Result<WidthReport, StrategyError> {
        Ok(exact_width(diagram, options.node_budget))
    }
}

pub struct Heuristic;

impl WidthStrategy for Heuristic {
    fn name(&self) -> &str {
        "heuristic"
    }

    fn compute(&self, diagram: &Diagram, options: &StrategyOptions) -> Result<WidthReport, StrategyError> {
        Ok(lazy_seed_heuristic(diagram, options.seeds, options.enumeration_budget))
    }
}

/// Exact search on small diagrams, heuristic on large ones.
pub struct Auto;

impl WidthStrategy for Auto {
    fn name(&self) -> &str {
        "auto"
    }

    fn compute(&self, diagram: &Diagram, options: &StrategyOptions) -> Result<WidthReport, StrategyError> {
        if diagram.n_crossings() <= options.auto_threshold {
            Exact.compute(diagram, options)
        } else {
            Heuristic.compute(diagram, options)
        }
    }
}

/// Raw enumeration of every coloring sequence. Tiny diagrams only.
pub struct Oracle;

impl WidthStrategy for Oracle {
    fn name(&self) -> &str {
        "oracle"
    }

    fn compute(&self, diagram: &Diagram, options: &StrategyOptions) -> Result<WidthReport, StrategyError> {
        let start = Instant::now();
        if diagram.n_crossings() == 0 {
            let mut r = unknot_width(diagram);
            r.strategy = "oracle".into();
            return Ok(r);
        }
        let opts = OracleOptions {
            max_crossings: options.oracle_max_crossings,
            ..OracleOptions::default()
        };
        let r = oracle_min_width(diagram, opts)?;
        Ok(WidthReport {
            diagram: diagram.code().to_string(),
            strategy: "oracle".into(),
            n_crossings: diagram.n_crossings(),
            n_strands: diagram.n_strands(),
            mu_upper: r.min_seed_count,
            mu_exact: true,
            width_upper: r.min_width,
            width_exact: true,
            budget_exhausted: false,
            witness: r.witness,
            elapsed: start.elapsed(),
            nodes_explored: r.logs_enumerated,
        })
    }
}

#[derive(Clone)]
pub struct StrategyRegistry {
    strategies: BTreeMap<String, Arc<dyn WidthStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            strategies: BTreeMap::new(),
        }
    }

    /// Replaces any strategy already registered under the same name.
    pub fn register(&mut self, strategy: Arc<dyn WidthStrategy>) {
        self.strategies.insert(strategy.name().to_string(), strategy);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn WidthStrategy>, StrategyError> {
        self.strategies.get(name).cloned().ok_or_else(|| StrategyError::Unknown {
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.strategies.keys().map(String::as_str).collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Exact));
        r.register(Arc::new(Heuristic));
        r.register(Arc::new(Auto));
        r.register(Arc::new(Oracle));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fixed;

    impl WidthStrategy for Fixed {
        fn name(&self) -> &str {
            "exact"
        }

        fn compute(&self, diagram: &Diagram, _: &StrategyOptions) -> Result<WidthReport, StrategyError> {
            Ok(crate::search::lazy_seed_heuristic(diagram, None, 0))
        }
    }

    #[test]
    fn default_names() {
        assert_eq!(StrategyRegistry::default().names(), ["auto", "exact", "heuristic", "oracle"]);
    }

    #[test]
    fn unknown_name() {
        let err = StrategyRegistry::default().get("quantum").err().unwrap();
        assert!(err.to_string().contains("auto, exact"));
    }

    #[test]
    fn strategies_agree_on_trefoil() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let reg = StrategyRegistry::default();
        for name in reg.names() {
            let r = reg.get(name).unwrap().compute(&d, &StrategyOptions::default()).unwrap();
            assert_eq!(r.width_upper, 8, "{name}");
            assert_eq!(r.mu_upper, 2, "{name}");
        }
    }

    #[test]
    fn register_replaces() {
        let mut reg = StrategyRegistry::default();
        reg.register(Arc::new(Fixed));
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let r = reg.get("exact").unwrap().compute(&d, &StrategyOptions::default()).unwrap();
        assert!(!r.width_exact);
    }

    #[test]
    fn oracle_guard() {
        let d = Diagram::parse("-1,2,-3,1,-2,3").unwrap();
        let opts = StrategyOptions {
            oracle_max_crossings: 2,
            ..Default::default()
        };
        assert!(matches!(Oracle.compute(&d, &opts), Err(StrategyError::Oracle(OracleError::TooLarge { .. }))));
    }
}
