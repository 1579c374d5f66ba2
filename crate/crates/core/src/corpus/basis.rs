use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{pairwise_token_distance, CyclicCode, Reducer, Tag, TokenOccurrence};
use crate::bits::BitPattern;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSelection {
    /// Most frequent first.
    pub tokens: Vec<String>,
    pub counts: Vec<usize>,
    /// Set when the class had fewer than the requested number of tokens.
    pub short: bool,
}

/// Merges positions of every token in `class`, keyed by text.
pub(crate) fn class_positions(
    occurrences: &[TokenOccurrence],
    class: Tag,
) -> BTreeMap<&str, Vec<usize>> {
    let mut out: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for occ in occurrences.iter().filter(|o| o.tag.belongs_to(class)) {
        out.entry(occ.text.as_str())
            .or_default()
            .extend_from_slice(&occ.positions);
    }
    for positions in out.values_mut() {
        positions.sort_unstable();
        positions.dedup();
    }
    out
}

/// The `n` most frequent tokens of `class`; ties go to the lexicographically
/// smaller token.
pub fn select_basis(occurrences: &[TokenOccurrence], class: Tag, n: usize) -> BasisSelection {
    let mut ranked: Vec<(&str, usize)> = class_positions(occurrences, class)
        .into_iter()
        .map(|(t, p)| (t, p.len()))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let short = ranked.len() < n;
    ranked.truncate(n);
    BasisSelection {
        tokens: ranked.iter().map(|(t, _)| t.to_string()).collect(),
        counts: ranked.iter().map(|(_, c)| *c).collect(),
        short,
    }
}

/// Basis tokens with their codes, in cycle order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSet {
    pub width: usize,
    pub tokens: Vec<String>,
    pub codes: Vec<BitPattern>,
}

impl BasisSet {
    /// Builds a basis from explicit `(token, code)` pairs.
    pub fn from_codes(pairs: Vec<(String, BitPattern)>) -> Result<Self> {
        let width = pairs
            .first()
            .map(|(_, c)| c.width())
            .ok_or(Error::EmptyInput)?;
        let mut seen_codes = BTreeSet::new();
        let mut seen_tokens = BTreeSet::new();
        for (token, code) in &pairs {
            if code.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: code.width(),
                });
            }
            if !seen_codes.insert(*code) {
                return Err(Error::DuplicatePattern(code.to_string()));
            }
            if !seen_tokens.insert(token.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "token '{token}' listed twice"
                )));
            }
        }
        let (tokens, codes) = pairs.into_iter().unzip();
        Ok(Self {
            width,
            tokens,
            codes,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.tokens.iter().any(|t| t == token)
    }

    pub fn code_of(&self, token: &str) -> Option<BitPattern> {
        self.tokens
            .iter()
            .position(|t| t == token)
            .map(|i| self.codes[i])
    }

    pub fn token_of(&self, code: BitPattern) -> Option<&str> {
        self.codes
            .iter()
            .position(|c| *c == code)
            .map(|i| self.tokens[i].as_str())
    }
}

/// Gives `ordering[i]` the codeword `code.codewords[i]`.
pub fn assign_codes(ordering: &[String], code: &CyclicCode) -> Result<BasisSet> {
    if ordering.len() > code.len() {
        return Err(Error::Capacity {
            what: "basis tokens for cyclic code",
            requested: ordering.len(),
            limit: code.len(),
        });
    }
    BasisSet::from_codes(
        ordering
            .iter()
            .cloned()
            .zip(code.codewords.iter().copied())
            .collect(),
    )
}

/// Composite token to the basis tokens it is built from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionMap {
    pub entries: BTreeMap<String, BTreeSet<String>>,
}

impl ProjectionMap {
    /// Empty for unmapped tokens.
    pub fn get(&self, token: &str) -> BTreeSet<String> {
        self.entries.get(token).cloned().unwrap_or_default()
    }

    pub fn is_mapped(&self, token: &str) -> bool {
        self.entries.get(token).is_some_and(|s| !s.is_empty())
    }
}

/// Maps every token of `class` onto the basis tokens within `cutoff` of it.
pub fn project_tokens(
    occurrences: &[TokenOccurrence],
    basis: &BasisSet,
    class: Tag,
    cutoff: usize,
    reducer: Reducer,
) -> Result<ProjectionMap> {
    if cutoff == 0 {
        return Err(Error::InvalidParameter(
            "projection cutoff must be at least 1".into(),
        ));
    }
    let positions = class_positions(occurrences, class);
    let mut entries = BTreeMap::new();
    for token in &basis.tokens {
        entries.insert(token.clone(), BTreeSet::from([token.clone()]));
    }
    for (&token, pos) in &positions {
        if basis.contains(token) {
            continue;
        }
        let mut set = BTreeSet::new();
        for b in &basis.tokens {
            let Some(bpos) = positions.get(b.as_str()) else {
                continue;
            };
            if pairwise_token_distance(pos, bpos, reducer)? <= cutoff as f64 {
                set.insert(b.clone());
            }
        }
        entries.insert(token.to_string(), set);
    }
    Ok(ProjectionMap { entries })
}
