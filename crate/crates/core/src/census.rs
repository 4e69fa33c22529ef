//! Batch width computation over files of Gauss codes.
//!
//! Input lines are `name<TAB>gauss code`; blank lines and lines starting with
//! `#` are skipped. Output is one CSV row per input row, in input order, with
//! the witness log embedded as base64 so that every row can be re-checked by
//! [`verify_certificates`] without recomputation.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{attached_sequence, replay_and_verify, EventLog};
use crate::gauss::Diagram;
use crate::lift::{build_profile, sweep_width};
use crate::search::WidthReport;
use crate::strategy::{StrategyError, StrategyOptions, StrategyRegistry};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusStatus {
    Exact,
    HeuristicOnly,
    Error(String),
}

impl CensusStatus {
    fn of(report: &WidthReport) -> Self {
        if report.mu_exact && report.width_exact {
            CensusStatus::Exact
        } else {
            CensusStatus::HeuristicOnly
        }
    }

    pub fn label(&self) -> String {
        match self {
            CensusStatus::Exact => "exact".into(),
            CensusStatus::HeuristicOnly => "heuristic_only".into(),
            CensusStatus::Error(reason) => format!("error: {reason}"),
        }
    }

    fn parse(label: &str) -> Self {
        match label {
            "exact" => CensusStatus::Exact,
            "heuristic_only" => CensusStatus::HeuristicOnly,
            other => CensusStatus::Error(other.strip_prefix("error: ").unwrap_or(other).to_string()),
        }
    }
}

/// One CSV row. Numeric fields are empty on error rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub name: String,
    pub gauss: String,
    pub crossings: Option<usize>,
    pub strands: Option<usize>,
    pub mu_upper: Option<usize>,
    pub mu_exact: Option<bool>,
    pub width_upper: Option<i64>,
    pub width_exact: Option<bool>,
    pub seeds_used: Option<usize>,
    pub nodes: Option<u64>,
    pub ms: Option<u128>,
    pub witness: String,
    pub status: String,
}

impl CensusRecord {
    fn error(name: &str, gauss: &str, reason: String) -> Self {
        CensusRecord {
            name: name.to_string(),
            gauss: gauss.to_string(),
            crossings: None,
            strands: None,
            mu_upper: None,
            mu_exact: None,
            width_upper: None,
            width_exact: None,
            seeds_used: None,
            nodes: None,
            ms: None,
            witness: String::new(),
            status: CensusStatus::Error(reason).label(),
        }
    }

    fn from_report(name: &str, gauss: &str, report: &WidthReport, timings: bool) -> Self {
        CensusRecord {
            name: name.to_string(),
            gauss: gauss.to_string(),
            crossings: Some(report.n_crossings),
            strands: Some(report.n_strands),
            mu_upper: Some(report.mu_upper),
            mu_exact: Some(report.mu_exact),
            width_upper: Some(report.width_upper),
            width_exact: Some(report.width_exact),
            seeds_used: Some(report.seeds_used()),
            nodes: Some(report.nodes_explored),
            ms: Some(if timings { report.elapsed.as_millis() } else { 0 }),
            witness: encode_witness(&report.witness),
            status: CensusStatus::of(report).label(),
        }
    }

    pub fn status(&self) -> CensusStatus {
        CensusStatus::parse(&self.status)
    }
}

pub fn encode_witness(log: &EventLog) -> String {
    BASE64.encode(log.to_string())
}

pub fn decode_witness(text: &str) -> Result<EventLog, String> {
    let bytes = BASE64.decode(text.trim()).map_err(|e| e.to_string())?;
    let text = String::from_utf8(bytes).map_err(|e| e.to_string())?;
    text.parse().map_err(|e: crate::coloring::LogParseError| e.to_string())
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub strategy: String,
    pub strategy_options: StrategyOptions,
    pub workers: usize,
    /// Record wall-clock milliseconds; with `false` the `ms` column is 0 and
    /// the output depends only on the input and options.
    pub timings: bool,
    pub json_mirror: Option<PathBuf>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            strategy: "auto".into(),
            strategy_options: StrategyOptions::default(),
            workers: 1,
            timings: true,
            json_mirror: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub rows: usize,
    pub by_status: BTreeMap<String, usize>,
    pub by_width: BTreeMap<i64, usize>,
    /// Rows whose best witness needs four seeds and has width 32: diagrams
    /// on which the lazy four-seed pattern reaching 28 was not found.
    pub four_seeds_width_32: Vec<String>,
}

impl CensusSummary {
    fn add(&mut self, record: &CensusRecord) {
        self.rows += 1;
        let key = match record.status() {
            CensusStatus::Error(_) => "error".to_string(),
            s => s.label(),
        };
        *self.by_status.entry(key).or_default() += 1;
        if let Some(w) = record.width_upper {
            *self.by_width.entry(w).or_default() += 1;
            if w == 32 && record.seeds_used == Some(4) {
                self.four_seeds_width_32.push(record.name.clone());
            }
        }
    }
}

/// Parses `name<TAB>code` rows; a row without a tab yields an empty code.
pub fn parse_input(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| match l.split_once('\t') {
            Some((name, code)) => (name.trim().to_string(), code.trim().to_string()),
            None => (l.trim().to_string(), String::new()),
        })
        .collect()
}

fn process_row(name: &str, code: &str, registry: &StrategyRegistry, options: &CensusOptions) -> CensusRecord {
    let diagram = match Diagram::parse(code) {
        Ok(d) => d,
        Err(e) => return CensusRecord::error(name, code, e.to_string()),
    };
    let strategy = registry.get(&options.strategy).expect("checked before the run");
    match strategy.compute(&diagram, &options.strategy_options) {
        Ok(report) => CensusRecord::from_report(name, code, &report, options.timings),
        Err(e) => CensusRecord::error(name, code, e.to_string()),
    }
}

/// Computes every row of `rows` in parallel, returning records in input
/// order.
pub fn compute_rows(rows: &[(String, String)], registry: &StrategyRegistry, options: &CensusOptions) -> Result<Vec<CensusRecord>, CensusError> {
    registry.get(&options.strategy)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| CensusError::Pool(e.to_string()))?;
    Ok(pool.install(|| {
        rows.par_iter()
            .map(|(name, code)| process_row(name, code, registry, options))
            .collect()
    }))
}

pub fn write_records(path: &Path, records: &[CensusRecord]) -> Result<(), CensusError> {
    let csv_err = |source| CensusError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|source| CensusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_records(path: &Path) -> Result<Vec<CensusRecord>, CensusError> {
    let csv_err = |source| CensusError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().collect::<Result<_, _>>().map_err(csv_err)
}

pub fn run_census(input: &Path, output: &Path, options: &CensusOptions) -> Result<CensusSummary, CensusError> {
    run_census_with(input, output, options, &StrategyRegistry::default())
}

pub fn run_census_with(input: &Path, output: &Path, options: &CensusOptions, registry: &StrategyRegistry) -> Result<CensusSummary, CensusError> {
    let text = fs::read_to_string(input).map_err(|source| CensusError::Io {
        path: input.to_path_buf(),
        source,
    })?;
    let records = compute_rows(&parse_input(&text), registry, options)?;
    write_records(output, &records)?;
    if let Some(json) = &options.json_mirror {
        let body = serde_json::to_string_pretty(&records).map_err(|source| CensusError::Json {
            path: json.clone(),
            source,
        })?;
        fs::write(json, body).map_err(|source| CensusError::Io {
            path: json.clone(),
            source,
        })?;
    }
    let mut summary = CensusSummary::default();
    for r in &records {
        summary.add(r);
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("gauss code does not parse: {0}")]
    BadGauss(String),
    #[error("witness does not decode: {0}")]
    BadWitness(String),
    #[error("row has no width")]
    MissingWidth,
    #[error("illegal event at stage {stage}: {message}")]
    IllegalEventAtStage { stage: usize, message: String },
    #[error("witness does not color every strand")]
    Incomplete,
    #[error("recorded width {recorded} but the witness has attached total {attached}")]
    WidthMismatch { recorded: i64, attached: i64 },
    #[error("lift of the witness fails: {0}")]
    Lift(String),
    #[error("attached total {attached} but the lifted sweep gives {sweep}")]
    SweepMismatch { attached: i64, sweep: i64 },
    #[error("recorded {recorded} seeds but the witness has {actual}")]
    SeedMismatch { recorded: usize, actual: usize },
    #[error("recorded Wirtinger number {mu} exceeds the witness seed count {seeds}")]
    MuAboveSeeds { mu: usize, seeds: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVerdict {
    pub name: String,
    /// `None` for error rows, which carry no certificate.
    pub result: Option<Result<(), VerifyFailure>>,
}

impl RowVerdict {
    pub fn failed(&self) -> bool {
        matches!(self.result, Some(Err(_)))
    }
}

/// Re-checks one row's certificate from scratch.
pub fn verify_record(record: &CensusRecord) -> Result<(), VerifyFailure> {
    let diagram = Diagram::parse(&record.gauss).map_err(|e| VerifyFailure::BadGauss(e.to_string()))?;
    let log = decode_witness(&record.witness).map_err(VerifyFailure::BadWitness)?;
    let recorded = record.width_upper.ok_or(VerifyFailure::MissingWidth)?;
    let state = replay_and_verify(&diagram, &log).map_err(|e| VerifyFailure::IllegalEventAtStage {
        stage: e.stage,
        message: e.violation.to_string(),
    })?;
    if !state.is_complete() {
        return Err(VerifyFailure::Incomplete);
    }
    let attached = attached_sequence(&diagram, &log).expect("replayed and complete").total;
    if attached != recorded {
        return Err(VerifyFailure::WidthMismatch { recorded, attached });
    }
    let profile = build_profile(&diagram, &log).map_err(|e| VerifyFailure::Lift(e.to_string()))?;
    let sweep = sweep_width(&profile).map_err(|e| VerifyFailure::Lift(e.to_string()))?;
    if sweep != attached {
        return Err(VerifyFailure::SweepMismatch { attached, sweep });
    }
    let seeds = log.seed_count();
    if let Some(recorded) = record.seeds_used {
        if recorded != seeds {
            return Err(VerifyFailure::SeedMismatch { recorded, actual: seeds });
        }
    }
    if let Some(mu) = record.mu_upper {
        if mu > seeds {
            return Err(VerifyFailure::MuAboveSeeds { mu, seeds });
        }
    }
    Ok(())
}

pub fn verify_certificates(path: &Path) -> Result<Vec<RowVerdict>, CensusError> {
    Ok(read_records(path)?
        .iter()
        .map(|r| RowVerdict {
            name: r.name.clone(),
            result: match r.status() {
                CensusStatus::Error(_) => None,
                _ => Some(verify_record(r)),
            },
        })
        .collect())
}
