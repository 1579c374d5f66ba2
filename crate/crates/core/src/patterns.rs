//! Pattern sets and their plain-text file format.
//!
//! ```text
//! # comment
//! !subject hatter 0011
//! !verb say 10
//! !object queen 1111
//! 1111110111 king,go,queen
//! 1110100111
//! ```
//!
//! Each data line is a fixed-width binary string, optionally followed by a
//! label. `!subject`, `!verb` and `!object` lines declare token codes so
//! that `subject,verb,object` triples can be turned into patterns.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitPattern;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEntry {
    pub pattern: BitPattern,
    pub label: Option<String>,
}

/// `N` distinct patterns of a common width `n`, in storage order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSet {
    width: usize,
    entries: Vec<PatternEntry>,
}

impl PatternSet {
    pub fn new(entries: Vec<PatternEntry>) -> Result<Self> {
        let first = entries.first().ok_or(Error::EmptyInput)?;
        let width = first.pattern.width();
        let mut seen = HashSet::with_capacity(entries.len());
        for e in &entries {
            if e.pattern.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: e.pattern.width(),
                });
            }
            if !seen.insert(e.pattern) {
                return Err(Error::DuplicatePattern(e.pattern.to_string()));
            }
        }
        Ok(Self { width, entries })
    }

    pub fn from_patterns(patterns: impl IntoIterator<Item = BitPattern>) -> Result<Self> {
        Self::new(
            patterns
                .into_iter()
                .map(|pattern| PatternEntry {
                    pattern,
                    label: None,
                })
                .collect(),
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PatternEntry] {
        &self.entries
    }

    pub fn patterns(&self) -> impl Iterator<Item = BitPattern> + '_ {
        self.entries.iter().map(|e| e.pattern)
    }

    pub fn contains(&self, p: BitPattern) -> bool {
        self.entries.iter().any(|e| e.pattern == p)
    }

    pub fn label_of(&self, p: BitPattern) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.pattern == p)
            .and_then(|e| e.label.as_deref())
    }
}

/// Token codes for the three slots of a noun-verb-noun pattern, laid out
/// as `object ∥ verb ∥ subject` with the subject in the low bits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    pub subject: BTreeMap<String, BitPattern>,
    pub verb: BTreeMap<String, BitPattern>,
    pub object: BTreeMap<String, BitPattern>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Subject,
    Verb,
    Object,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::Subject => "subject",
            Slot::Verb => "verb",
            Slot::Object => "object",
        }
    }
}

impl Codebook {
    pub fn is_empty(&self) -> bool {
        self.subject.is_empty() || self.verb.is_empty() || self.object.is_empty()
    }

    fn slot(&self, slot: Slot) -> &BTreeMap<String, BitPattern> {
        match slot {
            Slot::Subject => &self.subject,
            Slot::Verb => &self.verb,
            Slot::Object => &self.object,
        }
    }

    fn slot_width(&self, slot: Slot) -> Result<usize> {
        self.slot(slot)
            .values()
            .next()
            .map(|p| p.width())
            .ok_or_else(|| Error::InvalidParameter(format!("no {} codes defined", slot.name())))
    }

    pub fn width(&self) -> Result<usize> {
        Ok(self.slot_width(Slot::Subject)?
            + self.slot_width(Slot::Verb)?
            + self.slot_width(Slot::Object)?)
    }

    pub fn insert(&mut self, slot: Slot, token: &str, code: BitPattern) -> Result<()> {
        let map = match slot {
            Slot::Subject => &mut self.subject,
            Slot::Verb => &mut self.verb,
            Slot::Object => &mut self.object,
        };
        if let Some(w) = map.values().next().map(|p| p.width()) {
            if w != code.width() {
                return Err(Error::WidthMismatch {
                    expected: w,
                    found: code.width(),
                });
            }
        }
        map.insert(token.to_string(), code);
        Ok(())
    }

    fn lookup(&self, slot: Slot, token: &str) -> Result<BitPattern> {
        let map = self.slot(slot);
        map.get(token).copied().ok_or_else(|| Error::UnknownToken {
            class: slot.name().to_string(),
            token: token.to_string(),
            candidates: map.keys().cloned().collect(),
        })
    }

    pub fn encode(&self, subject: &str, verb: &str, object: &str) -> Result<BitPattern> {
        let s = self.lookup(Slot::Subject, subject)?;
        let v = self.lookup(Slot::Verb, verb)?;
        let o = self.lookup(Slot::Object, object)?;
        BitPattern::concat(BitPattern::concat(o, v)?, s)
    }

    /// Parses `subject,verb,object` (commas and/or whitespace) into a pattern.
    pub fn encode_triple(&self, text: &str) -> Result<BitPattern> {
        let parts: Vec<&str> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        match parts.as_slice() {
            [s, v, o] => self.encode(&s.to_lowercase(), &v.to_lowercase(), &o.to_lowercase()),
            _ => Err(Error::InvalidParameter(format!(
                "'{text}' is not a subject,verb,object triple"
            ))),
        }
    }

    /// Splits a pattern back into its `(subject, verb, object)` tokens.
    pub fn decode(&self, pattern: BitPattern) -> Result<(String, String, String)> {
        let ws = self.slot_width(Slot::Subject)?;
        let wv = self.slot_width(Slot::Verb)?;
        let (ov, s) = pattern.split(ws)?;
        let (o, v) = ov.split(wv)?;
        let find = |slot: Slot, code: BitPattern| {
            self.slot(slot)
                .iter()
                .find(|(_, c)| **c == code)
                .map(|(t, _)| t.clone())
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("no {} token has code {code}", slot.name()))
                })
        };
        Ok((
            find(Slot::Subject, s)?,
            find(Slot::Verb, v)?,
            find(Slot::Object, o)?,
        ))
    }

    pub fn label(&self, pattern: BitPattern) -> Option<String> {
        self.decode(pattern)
            .ok()
            .map(|(s, v, o)| format!("{s},{v},{o}"))
    }
}

/// Contents of a pattern file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFile {
    pub patterns: PatternSet,
    pub codebook: Codebook,
}

impl PatternFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut codebook = Codebook::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if let Some(rest) = line.strip_prefix('!') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [kind, token, bits] = fields.as_slice() else {
                    return Err(parse_err(format!(
                        "expected '!<slot> <token> <bits>', got '{line}'"
                    )));
                };
                let slot = match *kind {
                    "subject" => Slot::Subject,
                    "verb" => Slot::Verb,
                    "object" => Slot::Object,
                    other => return Err(parse_err(format!("unknown slot '{other}'"))),
                };
                let code: BitPattern = bits.parse().map_err(|e: Error| parse_err(e.to_string()))?;
                codebook
                    .insert(slot, &token.to_lowercase(), code)
                    .map_err(|e| parse_err(e.to_string()))?;
                continue;
            }
            let (bits, label) = match line.split_once(char::is_whitespace) {
                Some((b, l)) => (b, Some(l.trim().to_string())),
                None => (line, None),
            };
            let pattern: BitPattern = bits.parse().map_err(|e: Error| parse_err(e.to_string()))?;
            if let Some(first) = entries.first().map(|e: &PatternEntry| e.pattern) {
                if first.width() != pattern.width() {
                    return Err(parse_err(format!(
                        "pattern {pattern} has {} bits, expected {}",
                        pattern.width(),
                        first.width()
                    )));
                }
            }
            entries.push(PatternEntry {
                pattern,
                label: label.filter(|l| !l.is_empty()),
            });
        }
        let patterns = PatternSet::new(entries)?;
        if !codebook.is_empty() && codebook.width()? != patterns.width() {
            return Err(Error::WidthMismatch {
                expected: patterns.width(),
                found: codebook.width()?,
            });
        }
        Ok(Self { patterns, codebook })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (slot, map) in [
            ("subject", &self.codebook.subject),
            ("verb", &self.codebook.verb),
            ("object", &self.codebook.object),
        ] {
            let mut items: Vec<_> = map.iter().collect();
            items.sort_by_key(|(_, code)| **code);
            for (token, code) in items {
                let _ = writeln!(out, "!{slot} {token} {code}");
            }
        }
        for e in self.patterns.entries() {
            match &e.label {
                Some(l) => {
                    let _ = writeln!(out, "{} {l}", e.pattern);
                }
                None => {
                    let _ = writeln!(out, "{}", e.pattern);
                }
            }
        }
        out
    }

    pub fn label(&self, pattern: BitPattern) -> Option<String> {
        self.patterns
            .label_of(pattern)
            .map(str::to_string)
            .or_else(|| self.codebook.label(pattern))
    }

    /// Accepts either a raw bit string or a `subject,verb,object` triple.
    pub fn resolve(&self, spec: &str) -> Result<BitPattern> {
        resolve_pattern(spec, self.patterns.width(), &self.codebook)
    }
}

pub fn resolve_pattern(spec: &str, width: usize, codebook: &Codebook) -> Result<BitPattern> {
    let spec = spec.trim();
    let pattern = if !spec.is_empty() && spec.bytes().all(|b| b == b'0' || b == b'1') {
        spec.parse()?
    } else {
        codebook.encode_triple(spec)?
    };
    if pattern.width() != width {
        return Err(Error::WidthMismatch {
            expected: width,
            found: pattern.width(),
        });
    }
    Ok(pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# demo
!subject hatter 0011
!subject king 0111
!verb say 10
!verb go 11
!object queen 1111
1111110111 king,go,queen
1111100111
";

    #[test]
    fn parses_codes_and_patterns() {
        let f = PatternFile::parse(SAMPLE).unwrap();
        assert_eq!(f.patterns.len(), 2);
        assert_eq!(f.patterns.width(), 10);
        assert_eq!(f.resolve("hatter,say,queen").unwrap().value(), 995);
        assert_eq!(f.resolve("Hatter say Queen").unwrap().value(), 995);
        assert_eq!(
            f.label("1111100111".parse().unwrap()).as_deref(),
            Some("king,say,queen")
        );
        let again = PatternFile::parse(&f.render()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn unknown_token_lists_candidates() {
        let f = PatternFile::parse(SAMPLE).unwrap();
        match f.resolve("alice,say,queen") {
            Err(Error::UnknownToken { candidates, .. }) => {
                assert_eq!(candidates, vec!["hatter".to_string(), "king".to_string()])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PatternFile::parse("0101\n011\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            PatternFile::parse("01\n01\n"),
            Err(Error::DuplicatePattern(_))
        ));
        assert!(matches!(
            PatternFile::parse("# nothing\n"),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(
            PatternFile::parse("!noun a 01\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
