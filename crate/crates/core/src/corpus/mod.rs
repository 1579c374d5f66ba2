//! Corpus preprocessing: tagging, basis selection, cyclic codes, token
//! projection and noun-verb-noun sentence extraction.

mod basis;
mod code;
mod cycle;
mod model;
mod params;
pub mod tagger;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use basis::{
    assign_codes, project_tokens, select_basis, BasisSelection, BasisSet, ProjectionMap,
};
pub use code::{generate_cyclic_code, CyclicCode};
pub use cycle::{
    cycle_weight, distance_matrix, min_hamiltonian_cycle, pairwise_token_distance, Reducer,
    MAX_CYCLE_TOKENS,
};
pub use model::{form_sentences, CorpusModel, Lexicon, SentencePattern, Space, FORMAT_VERSION};
pub use params::{PreprocessParams, ENV_NAMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Noun,
    SubjectNoun,
    ObjectNoun,
    Verb,
    Stopword,
    Other,
}

impl Tag {
    pub fn is_noun(self) -> bool {
        matches!(self, Tag::Noun | Tag::SubjectNoun | Tag::ObjectNoun)
    }

    /// Whether a token with this tag belongs to `class`. `Noun` covers both
    /// noun roles.
    pub fn belongs_to(self, class: Tag) -> bool {
        match class {
            Tag::Noun => self.is_noun(),
            other => self == other,
        }
    }

    fn parse(s: &str) -> Option<Tag> {
        let tag = match s {
            "noun" => Tag::Noun,
            "subject-noun" => Tag::SubjectNoun,
            "object-noun" => Tag::ObjectNoun,
            "verb" => Tag::Verb,
            "stopword" => Tag::Stopword,
            "other" => Tag::Other,
            _ if s.starts_with("NN") => Tag::Noun,
            _ if s.starts_with("VB") || s == "MD" => Tag::Verb,
            // remaining Penn tags, punctuation tags included
            _ if !s.is_empty() && !s.chars().any(|c| c.is_lowercase()) => Tag::Other,
            _ => return None,
        };
        Some(tag)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaggerMode {
    Builtin,
    PreTagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenOccurrence {
    pub text: String,
    pub tag: Tag,
    pub positions: Vec<usize>,
}

impl TokenOccurrence {
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

/// Splits raw text into lowercase words. Apostrophes inside a word are kept
/// so contractions can be matched against the stopword list.
fn words(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut flush = |current: &mut String| {
        let w = current.trim_matches('\'').to_string();
        current.clear();
        if w.is_empty() {
            return;
        }
        let w = w.strip_suffix("'s").map(str::to_string).unwrap_or(w);
        if w.contains('\'') && tagger::tag_word(&w).0 != Tag::Stopword {
            out.push(w.replace('\'', ""));
        } else {
            out.push(w);
        }
    };
    for c in text.chars() {
        let c = if c == '\u{2019}' { '\'' } else { c };
        if c.is_alphanumeric() || c == '\'' {
            current.extend(c.to_lowercase());
        } else {
            flush(&mut current);
        }
    }
    flush(&mut current);
    out
}

/// Tags a corpus and groups positions per `(token, tag)`, ordered by first
/// position. Punctuation is dropped and takes no position; stopwords keep
/// theirs.
pub fn tokenize_and_tag(raw: &str, mode: TaggerMode) -> Result<Vec<TokenOccurrence>> {
    if raw.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let stream: Vec<(String, Tag)> = match mode {
        TaggerMode::Builtin => words(raw)
            .into_iter()
            .map(|w| {
                let (tag, lemma) = tagger::tag_word(&w);
                (lemma, tag)
            })
            .collect(),
        TaggerMode::PreTagged => {
            let mut stream = Vec::new();
            for (i, line) in raw.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let parse_err = |message: String| Error::Parse {
                    line: i + 1,
                    message,
                };
                let mut fields = line.split('\t');
                let (Some(token), Some(tag), None) = (fields.next(), fields.next(), fields.next())
                else {
                    return Err(parse_err("expected 'token<TAB>tag'".into()));
                };
                let token = token.trim().to_lowercase();
                if token.is_empty() {
                    return Err(parse_err("empty token".into()));
                }
                let tag = Tag::parse(tag.trim())
                    .ok_or_else(|| parse_err(format!("unknown tag '{}'", tag.trim())))?;
                if token.chars().any(char::is_alphanumeric) {
                    stream.push((token, tag));
                }
            }
            stream
        }
    };

    let mut index: BTreeMap<(String, Tag), usize> = BTreeMap::new();
    let mut out: Vec<TokenOccurrence> = Vec::new();
    for (pos, (text, tag)) in stream.into_iter().enumerate() {
        let slot = *index.entry((text.clone(), tag)).or_insert_with(|| {
            out.push(TokenOccurrence {
                text,
                tag,
                positions: Vec::new(),
            });
            out.len() - 1
        });
        out[slot].positions.push(pos);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sentence_corpus() {
        let toks = tokenize_and_tag(
            "John rests inside. Mary walks outside.",
            TaggerMode::Builtin,
        )
        .unwrap();
        let got: Vec<(&str, Tag, &[usize])> = toks
            .iter()
            .map(|t| (t.text.as_str(), t.tag, t.positions.as_slice()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("john", Tag::Noun, &[0][..]),
                ("rest", Tag::Verb, &[1][..]),
                ("inside", Tag::Noun, &[2][..]),
                ("mary", Tag::Noun, &[3][..]),
                ("walk", Tag::Verb, &[4][..]),
                ("outside", Tag::Noun, &[5][..]),
            ]
        );
    }

    #[test]
    fn empty_and_stopword_only() {
        assert_eq!(
            tokenize_and_tag("  \n", TaggerMode::Builtin),
            Err(Error::EmptyInput)
        );
        let toks = tokenize_and_tag("the the the", TaggerMode::Builtin).unwrap();
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].tag, Tag::Stopword);
        assert_eq!(toks[0].positions, vec![0, 1, 2]);
    }

    #[test]
    fn contractions_and_possessives() {
        let toks = tokenize_and_tag("Alice's cat didn't go.", TaggerMode::Builtin).unwrap();
        let texts: Vec<&str> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, vec!["alice", "cat", "didn't", "go"]);
        assert_eq!(toks[2].tag, Tag::Stopword);
    }

    #[test]
    fn pre_tagged_lines() {
        let text = "Hatter\tsubject-noun\nsaid\tVBD\nbig\tadjective\n";
        let err = tokenize_and_tag(text, TaggerMode::PreTagged).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "unknown tag 'adjective'".into()
            }
        );

        let text = "Hatter\tsubject-noun\nsaid\tVBD\n,\t,\n\nthe\tDT\nQueen\tNNP\n";
        let toks = tokenize_and_tag(text, TaggerMode::PreTagged).unwrap();
        let got: Vec<(&str, Tag, usize)> = toks
            .iter()
            .map(|t| (t.text.as_str(), t.tag, t.positions[0]))
            .collect();
        assert_eq!(
            got,
            vec![
                ("hatter", Tag::SubjectNoun, 0),
                ("said", Tag::Verb, 1),
                ("the", Tag::Other, 2),
                ("queen", Tag::Noun, 3),
            ]
        );
        assert!(matches!(
            tokenize_and_tag("just-one-field\n", TaggerMode::PreTagged),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
