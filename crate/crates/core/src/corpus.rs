//! Bundled knot diagrams and the conversions used to produce them.
//!
//! `data/knots.tsv` holds the prime knots through seven crossings (from
//! their Dowker-Thistlethwaite codes) plus a few braid closures.
//! `data/braid_sample.tsv` holds 1000 pseudo-random braid-closure knots with
//! at least twelve crossings, generated by `examples/gen_corpus.rs`.

use rand::Rng;
use thiserror::Error;

use crate::gauss::{Diagram, GaussCode, GaussEntry, Role};

const KNOTS: &str = include_str!("../data/knots.tsv");
const BRAID_SAMPLE: &str = include_str!("../data/braid_sample.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub code: String,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Diagram {
        Diagram::parse(&self.code).unwrap_or_else(|e| panic!("bundled diagram {} is invalid: {e}", self.name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConversionError {
    #[error("DT code entries must be even and nonzero, with absolute values a permutation of 2, 4, .., 2n")]
    BadDtCode,
    #[error("braid generator 0 does not exist")]
    BadGenerator,
    #[error("braid closure has {0} components")]
    NotAKnot(usize),
}

/// Lines of the form `name<TAB>code`; blank lines and `#` comments are skipped.
pub fn parse_tsv(text: &str) -> Vec<CorpusEntry> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, code) = l.split_once('\t').unwrap_or((l, ""));
            CorpusEntry {
                name: name.trim().to_string(),
                code: code.trim().to_string(),
            }
        })
        .collect()
}

/// Prime knots 3_1 through 7_7, the unknot, and the braid closures 8_19,
/// 9_1 and T(4,5).
pub fn knots() -> Vec<CorpusEntry> {
    parse_tsv(KNOTS)
}

/// Every bundled diagram with at most `max_crossings` crossings.
pub fn small_knots(max_crossings: usize) -> Vec<CorpusEntry> {
    knots()
        .into_iter()
        .filter(|e| e.diagram().n_crossings() <= max_crossings)
        .collect()
}

pub fn braid_sample() -> Vec<CorpusEntry> {
    parse_tsv(BRAID_SAMPLE)
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    knots().into_iter().find(|e| e.name == name)
}

/// Gauss code of the diagram with Dowker-Thistlethwaite code `dt`.
///
/// Entry `i` pairs position `2i+1` with position `|dt[i]|`. The odd position
/// passes under, unless the entry is negative.
pub fn gauss_from_dt(dt: &[i32]) -> Result<GaussCode, ConversionError> {
    let n = dt.len();
    let mut seq: Vec<Option<GaussEntry>> = vec![None; 2 * n];
    for (i, &a) in dt.iter().enumerate() {
        let even = a.unsigned_abs() as usize;
        if even == 0 || even % 2 == 1 || even > 2 * n || seq[even - 1].is_some() {
            return Err(ConversionError::BadDtCode);
        }
        let (odd_role, even_role) = if a > 0 { (Role::Under, Role::Over) } else { (Role::Over, Role::Under) };
        let label = i as u32 + 1;
        seq[2 * i] = Some(GaussEntry { label, role: odd_role });
        seq[even - 1] = Some(GaussEntry { label, role: even_role });
    }
    let entries: Vec<GaussEntry> = seq.into_iter().map(|e| e.expect("filled")).collect();
    Ok(GaussCode::parse(&render(&entries)).expect("well formed"))
}

/// Gauss code of the closure of a braid word. Generator `k` (1-based) is
/// `σ_k`, `-k` its inverse. For `σ_k` the strand moving from position `k` to
/// `k+1` passes over.
pub fn gauss_from_braid(word: &[i32]) -> Result<GaussCode, ConversionError> {
    if word.contains(&0) {
        return Err(ConversionError::BadGenerator);
    }
    let width = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
    let step = |pos: usize, entries: &mut Vec<GaussEntry>| {
        let mut p = pos;
        for (c, &g) in word.iter().enumerate() {
            let k = g.unsigned_abs() as usize - 1;
            let rising = if p == k {
                true
            } else if p == k + 1 {
                false
            } else {
                continue;
            };
            let over = rising == (g > 0);
            entries.push(GaussEntry {
                label: c as u32 + 1,
                role: if over { Role::Over } else { Role::Under },
            });
            p = if rising { k + 1 } else { k };
        }
        p
    };

    let mut seen = vec![false; width];
    let mut components = 0;
    let mut entries = Vec::new();
    for start in 0..width {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            p = step(p, &mut entries);
            if p == start {
                break;
            }
        }
    }
    if components != 1 {
        return Err(ConversionError::NotAKnot(components));
    }
    Ok(GaussCode::parse(&render(&entries)).expect("well formed"))
}

fn render(entries: &[GaussEntry]) -> String {
    let parts: Vec<String> = entries
        .iter()
        .map(|e| match e.role {
            Role::Over => e.label.to_string(),
            Role::Under => format!("-{}", e.label),
        })
        .collect();
    parts.join(",")
}

/// A random braid word on `strands` strands of length `len` whose closure is
/// a valid knot diagram.
pub fn random_braid_knot<R: Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> (Vec<i32>, Diagram) {
    loop {
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let k = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    k
                } else {
                    -k
                }
            })
            .collect();
        let Ok(code) = gauss_from_braid(&word) else { continue };
        if let Ok(d) = Diagram::build(code) {
            return (word, d);
        }
    }
}
