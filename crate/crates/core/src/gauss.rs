//! Gauss-code parsing and the strand/crossing incidence structure of a knot
//! diagram.
//!
//! A Gauss code lists the crossings met while walking once around the knot.
//! Each entry is a crossing label together with the role the walk plays there:
//! passing over or passing under. Two spellings are accepted:
//!
//! * signed integers, `-1,2,-3,1,-2,3` (negative = under, positive = over);
//! * letters, `U1,O2,U3,O1,U2,O3` (case-insensitive).
//!
//! Tokens may be separated by commas, whitespace, or both. `;` or `|` separate
//! link components; such inputs parse but are rejected by [`Diagram::build`]
//! since only knots are supported. The empty string is the crossingless
//! round unknot diagram.
//!
//! Planar realizability is not checked. Only incidence data is used, so a
//! non-realizable code yields a well-defined but geometrically meaningless
//! answer.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

/// A single Gauss-code entry. `label` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussEntry {
    pub label: u32,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("malformed token `{token}` at position {position}")]
    MalformedToken { token: String, position: usize },
    #[error("token `{token}` at position {position} carries no over/under role")]
    EmptyRole { token: String, position: usize },
    #[error("crossing {label} appears {over} time(s) as over and {under} time(s) as under; expected once each")]
    LabelCount { label: u32, over: usize, under: usize },
}

/// A validated Gauss code. Labels are renumbered `1..=n` in order of first
/// appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussCode {
    entries: Vec<GaussEntry>,
    /// Start offset of each component in `entries`; a knot has exactly one.
    components: Vec<usize>,
}

impl GaussCode {
    pub fn parse(text: &str) -> Result<Self, GaussError> {
        let mut raw = Vec::new();
        let mut components = Vec::new();
        let mut position = 0usize;
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(GaussCode {
                entries: Vec::new(),
                components: vec![0],
            });
        }
        for component in trimmed.split([';', '|']) {
            components.push(raw.len());
            for token in component
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                raw.push(parse_token(token, position)?);
                position += 1;
            }
        }

        // Renumber labels by first appearance.
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        let mut counts: Vec<(u32, usize, usize)> = Vec::new();
        let mut entries = Vec::with_capacity(raw.len());
        for (label, role) in raw {
            let next = renumber.len() as u32 + 1;
            let fresh = *renumber.entry(label).or_insert(next);
            if fresh as usize > counts.len() {
                counts.push((label, 0, 0));
            }
            let slot = &mut counts[fresh as usize - 1];
            match role {
                Role::Over => slot.1 += 1,
                Role::Under => slot.2 += 1,
            }
            entries.push(GaussEntry { label: fresh, role });
        }
        if let Some(&(label, over, under)) = counts.iter().find(|(_, o, u)| *o != 1 || *u != 1) {
            return Err(GaussError::LabelCount { label, over, under });
        }
        Ok(GaussCode { entries, components })
    }

    pub fn entries(&self) -> &[GaussEntry] {
        &self.entries
    }

    pub fn n_crossings(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Entries of each component, in order.
    pub fn components(&self) -> impl Iterator<Item = &[GaussEntry]> + '_ {
        let ends = self.components[1..]
            .iter()
            .copied()
            .chain(std::iter::once(self.entries.len()));
        self.components
            .iter()
            .zip(ends)
            .map(move |(&start, end)| &self.entries[start..end])
    }
}

fn parse_token(token: &str, position: usize) -> Result<(u32, Role), GaussError> {
    let malformed = || GaussError::MalformedToken {
        token: token.to_string(),
        position,
    };
    let (role, digits) = match token.as_bytes()[0] {
        b'U' | b'u' => (Some(Role::Under), &token[1..]),
        b'O' | b'o' => (Some(Role::Over), &token[1..]),
        b'-' => (Some(Role::Under), &token[1..]),
        b'+' => (Some(Role::Over), &token[1..]),
        _ => (None, token),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let label: u32 = digits.parse().map_err(|_| malformed())?;
    if label == 0 {
        return Err(GaussError::EmptyRole {
            token: token.to_string(),
            position,
        });
    }
    Ok((label, role.unwrap_or(Role::Over)))
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussCode::parse(s)
    }
}

/// Serializes in signed-integer form; components are joined with `;`.
impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, e) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                match e.role {
                    Role::Over => write!(f, "{}", e.label)?,
                    Role::Under => write!(f, "-{}", e.label)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrandId(pub u32);

impl StrandId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StrandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// 0-based crossing index; `label()` is the 1-based Gauss-code label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingId(pub u32);

impl CrossingId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> u32 {
        self.0 + 1
    }

    pub fn from_label(label: u32) -> Option<Self> {
        label.checked_sub(1).map(CrossingId)
    }
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {crossing} has the same strand on both under-passes")]
    SelfAdjacentStrand { crossing: u32 },
    #[error("the code describes a link or a component without under-passes, not a knot")]
    NotAKnot,
}

/// Strand/crossing incidence of a knot diagram.
///
/// Strands are numbered along the walk: strand 0 starts at the first
/// under-pass of the code, strand `i + 1` starts where strand `i` ends. Hence
/// the adjacency cycle is `0 → 1 → … → n-1 → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    code: GaussCode,
    n_strands: usize,
    over: Vec<StrandId>,
    /// (strand ending at the under-pass, strand beginning at it)
    under: Vec<(StrandId, StrandId)>,
    /// (start crossing, end crossing)
    endpoints: Vec<(CrossingId, CrossingId)>,
    over_crossings: Vec<Vec<CrossingId>>,
}

impl Diagram {
    pub fn build(code: GaussCode) -> Result<Self, DiagramError> {
        if code.n_components() != 1 {
            return Err(DiagramError::NotAKnot);
        }
        let n = code.n_crossings();
        if n == 0 {
            return Ok(Diagram {
                code,
                n_strands: 1,
                over: Vec::new(),
                under: Vec::new(),
                endpoints: Vec::new(),
                over_crossings: vec![Vec::new()],
            });
        }

        let mut over = vec![StrandId(u32::MAX); n];
        let mut under = vec![(StrandId(u32::MAX), StrandId(u32::MAX)); n];
        let mut endpoints = Vec::with_capacity(n);
        let mut over_crossings = Vec::with_capacity(n);

        for comp in code.components() {
            let unders: Vec<usize> = comp
                .iter()
                .enumerate()
                .filter(|(_, e)| e.role == Role::Under)
                .map(|(i, _)| i)
                .collect();
            if unders.is_empty() {
                return Err(DiagramError::NotAKnot);
            }
            let first = endpoints.len() as u32;
            let k = unders.len();
            for (j, &start) in unders.iter().enumerate() {
                let strand = StrandId(first + j as u32);
                let end = unders[(j + 1) % k];
                let start_x = CrossingId(comp[start].label - 1);
                let end_x = CrossingId(comp[end].label - 1);
                endpoints.push((start_x, end_x));
                let prev = StrandId(first + ((j + k - 1) % k) as u32);
                under[start_x.index()] = (prev, strand);

                let mut mine = Vec::new();
                let mut pos = (start + 1) % comp.len();
                while pos != end {
                    let x = CrossingId(comp[pos].label - 1);
                    over[x.index()] = strand;
                    mine.push(x);
                    pos = (pos + 1) % comp.len();
                }
                mine.sort();
                over_crossings.push(mine);
            }
        }

        for (x, &(a, b)) in under.iter().enumerate() {
            if a == b {
                return Err(DiagramError::SelfAdjacentStrand {
                    crossing: x as u32 + 1,
                });
            }
        }

        let n_strands = endpoints.len();
        let diagram = Diagram {
            code,
            n_strands,
            over,
            under,
            endpoints,
            over_crossings,
        };

        // Walk successors; the adjacency relation must be one cycle.
        let mut seen = vec![false; n_strands];
        let mut s = StrandId(0);
        let mut steps = 0;
        while !seen[s.index()] {
            seen[s.index()] = true;
            steps += 1;
            s = diagram.next(s).expect("n >= 1");
        }
        if steps != n_strands || s != StrandId(0) {
            return Err(DiagramError::NotAKnot);
        }
        Ok(diagram)
    }

    pub fn parse(text: &str) -> Result<Self, crate::Error> {
        Ok(Diagram::build(GaussCode::parse(text)?)?)
    }

    pub fn code(&self) -> &GaussCode {
        &self.code
    }

    pub fn n_crossings(&self) -> usize {
        self.over.len()
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn strands(&self) -> impl Iterator<Item = StrandId> {
        (0..self.n_strands as u32).map(StrandId)
    }

    pub fn crossings(&self) -> impl Iterator<Item = CrossingId> {
        (0..self.over.len() as u32).map(CrossingId)
    }

    pub fn over_strand(&self, x: CrossingId) -> StrandId {
        self.over[x.index()]
    }

    /// `(ending, beginning)` under-strands at `x`.
    pub fn under_pair(&self, x: CrossingId) -> (StrandId, StrandId) {
        self.under[x.index()]
    }

    /// `(start, end)` crossings of `s`; `None` for the crossingless diagram.
    pub fn endpoints(&self, s: StrandId) -> Option<(CrossingId, CrossingId)> {
        self.endpoints.get(s.index()).copied()
    }

    /// Crossings where `s` is the over-strand, in increasing order.
    pub fn over_crossings(&self, s: StrandId) -> &[CrossingId] {
        &self.over_crossings[s.index()]
    }

    /// The other under-strand at `x`, if `s` is one of them.
    pub fn other_under(&self, x: CrossingId, s: StrandId) -> Option<StrandId> {
        let (a, b) = self.under_pair(x);
        if a == s {
            Some(b)
        } else if b == s {
            Some(a)
        } else {
            None
        }
    }

    pub fn next(&self, s: StrandId) -> Option<StrandId> {
        self.endpoints(s).map(|(_, end)| self.under_pair(end).1)
    }

    pub fn prev(&self, s: StrandId) -> Option<StrandId> {
        self.endpoints(s).map(|(start, _)| self.under_pair(start).0)
    }

    pub fn adjacent(&self, a: StrandId, b: StrandId) -> bool {
        self.next(a) == Some(b) || self.prev(a) == Some(b)
    }

    /// Crossings whose status can change when `s` gets colored: its two
    /// endpoints plus every crossing it passes over. Sorted, deduplicated.
    pub fn incident_crossings(&self, s: StrandId) -> Vec<CrossingId> {
        let mut out: Vec<CrossingId> = self.over_crossings(s).to_vec();
        if let Some((a, b)) = self.endpoints(s) {
            out.push(a);
            out.push(b);
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "-1,2,-3,1,-2,3";

    fn x(label: u32) -> CrossingId {
        CrossingId::from_label(label).unwrap()
    }

    #[test]
    fn trefoil_parses() {
        let code = GaussCode::parse(TREFOIL).unwrap();
        assert_eq!(code.entries().len(), 6);
        assert_eq!(code.n_crossings(), 3);
    }

    #[test]
    fn empty_is_unknot() {
        let code = GaussCode::parse("").unwrap();
        assert_eq!(code.entries().len(), 0);
        let d = Diagram::build(code).unwrap();
        assert_eq!(d.n_crossings(), 0);
        assert_eq!(d.n_strands(), 1);
        assert_eq!(d.next(StrandId(0)), None);
    }

    #[test]
    fn letter_and_whitespace_forms_agree() {
        let a = GaussCode::parse(TREFOIL).unwrap();
        let b = GaussCode::parse("U1 O2 U3 O1 U2 O3").unwrap();
        let c = GaussCode::parse("u1, o2,\tu3 ,o1,u2,o3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn labels_renumbered_by_first_appearance() {
        let code = GaussCode::parse("-7,9,-4,7,-9,4").unwrap();
        assert_eq!(code.to_string(), TREFOIL);
    }

    #[test]
    fn kink_parses_but_is_self_adjacent() {
        let code = GaussCode::parse("-1,1").unwrap();
        assert_eq!(code.n_crossings(), 1);
        assert_eq!(
            Diagram::build(code),
            Err(DiagramError::SelfAdjacentStrand { crossing: 1 })
        );
    }

    #[test]
    fn bad_tokens() {
        assert!(matches!(
            GaussCode::parse("-1,x,1"),
            Err(GaussError::MalformedToken { position: 1, .. })
        ));
        assert!(matches!(
            GaussCode::parse("-1,--2"),
            Err(GaussError::MalformedToken { .. })
        ));
        assert!(matches!(
            GaussCode::parse("-1,0,1"),
            Err(GaussError::EmptyRole { position: 1, .. })
        ));
        assert!(matches!(
            GaussCode::parse("-1,-1"),
            Err(GaussError::LabelCount { label: 1, over: 0, under: 2 })
        ));
        assert!(matches!(
            GaussCode::parse("-1,2,1"),
            Err(GaussError::LabelCount { label: 2, over: 1, under: 0 })
        ));
    }

    #[test]
    fn trefoil_incidence() {
        let d = Diagram::parse(TREFOIL).unwrap();
        let (a, b, c) = (StrandId(0), StrandId(1), StrandId(2));
        assert_eq!(d.n_strands(), 3);
        assert_eq!(d.under_pair(x(1)), (c, a));
        assert_eq!(d.under_pair(x(3)), (a, b));
        assert_eq!(d.under_pair(x(2)), (b, c));
        assert_eq!(d.over_strand(x(2)), a);
        assert_eq!(d.over_strand(x(1)), b);
        assert_eq!(d.over_strand(x(3)), c);
        assert_eq!(d.endpoints(a), Some((x(1), x(3))));
        assert_eq!(d.next(a), Some(b));
        assert_eq!(d.prev(a), Some(c));
        assert_eq!(d.incident_crossings(a), vec![x(1), x(2), x(3)]);
    }

    #[test]
    fn code_starting_with_over_wraps_into_last_strand() {
        // Rotation of the trefoil code: the leading over-pass belongs to the
        // strand that wraps around the end.
        let d = Diagram::parse("3,-1,2,-3,1,-2").unwrap();
        assert_eq!(d.n_strands(), 3);
        assert_eq!(d.over_strand(x(1)), StrandId(2));
        assert_eq!(d.over_crossings(StrandId(2)), &[x(1)]);
    }

    #[test]
    fn links_are_rejected() {
        // Hopf link.
        let d = Diagram::parse("-1,2;1,-2");
        assert!(matches!(
            d,
            Err(crate::Error::Diagram(DiagramError::NotAKnot))
        ));
        let d = Diagram::parse("-1,2,-3,1,-2,3;");
        assert!(matches!(
            d,
            Err(crate::Error::Diagram(DiagramError::NotAKnot))
        ));
    }

    #[test]
    fn build_is_deterministic() {
        let a = Diagram::parse("-1,2,-3,4,-2,1,-4,3").unwrap();
        let b = Diagram::parse("-1,2,-3,4,-2,1,-4,3").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_cycle_on_figure_eight() {
        let d = Diagram::parse("-1,2,-3,4,-2,1,-4,3").unwrap();
        let mut s = StrandId(0);
        let mut seen = 0;
        loop {
            seen += 1;
            s = d.next(s).unwrap();
            if s == StrandId(0) {
                break;
            }
        }
        assert_eq!(seen, d.n_strands());
        assert_eq!(d.n_strands(), d.n_crossings());
    }
}
