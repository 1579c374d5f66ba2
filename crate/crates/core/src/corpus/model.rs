use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::basis::class_positions;
use super::{
    assign_codes, distance_matrix, generate_cyclic_code, min_hamiltonian_cycle, project_tokens,
    select_basis, tokenize_and_tag, BasisSet, PreprocessParams, ProjectionMap, Tag, TaggerMode,
    TokenOccurrence,
};
use crate::bits::BitPattern;
use crate::patterns::{Codebook, PatternEntry, PatternSet, Slot};
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// One register slot: its basis and how other tokens project onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub basis: BasisSet,
    pub projection: ProjectionMap,
}

impl Space {
    fn codes(&self, token: &str) -> Vec<BitPattern> {
        self.projection
            .get(token)
            .iter()
            .filter_map(|t| self.basis.code_of(t))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentencePattern {
    pub subject_token: String,
    pub verb_token: String,
    pub object_token: String,
    /// Stream position of the verb.
    pub position: usize,
    pub subject: Vec<BitPattern>,
    pub verb: Vec<BitPattern>,
    pub object: Vec<BitPattern>,
    pub composed: Vec<BitPattern>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusModel {
    pub format_version: u32,
    pub params: PreprocessParams,
    pub tokens: Vec<TokenOccurrence>,
    pub subject: Space,
    pub verb: Space,
    pub object: Space,
    pub sentences: Vec<SentencePattern>,
    /// Distinct composed patterns in first-seen order.
    pub patterns: Vec<PatternEntry>,
    pub warnings: Vec<String>,
}

/// Hand-written bases and projections, read from TOML:
///
/// ```toml
/// [subject.codes]
/// adult = "00"
/// smith = "10"
/// [subject.projection]
/// john = ["adult", "smith"]
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lexicon {
    pub subject: LexiconSpace,
    pub verb: LexiconSpace,
    pub object: LexiconSpace,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconSpace {
    pub codes: BTreeMap<String, BitPattern>,
    #[serde(default)]
    pub projection: BTreeMap<String, Vec<String>>,
}

impl Lexicon {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    fn space(slot: &str, spec: &LexiconSpace) -> Result<Space> {
        let basis =
            BasisSet::from_codes(spec.codes.iter().map(|(t, c)| (t.clone(), *c)).collect())?;
        let mut projection = ProjectionMap::default();
        for t in &basis.tokens {
            projection
                .entries
                .insert(t.clone(), BTreeSet::from([t.clone()]));
        }
        for (token, targets) in &spec.projection {
            let mut set = BTreeSet::new();
            for target in targets {
                if !basis.contains(target) {
                    return Err(Error::UnknownToken {
                        class: slot.to_string(),
                        token: target.clone(),
                        candidates: basis.tokens.clone(),
                    });
                }
                set.insert(target.clone());
            }
            projection.entries.insert(token.clone(), set);
        }
        Ok(Space { basis, projection })
    }
}

fn cycle_order(
    tokens: &[TokenOccurrence],
    class: Tag,
    basis: &[String],
    params: &PreprocessParams,
) -> Result<Vec<String>> {
    if basis.len() < 3 {
        return Ok(basis.to_vec());
    }
    let positions = class_positions(tokens, class);
    let lists: Vec<&[usize]> = basis
        .iter()
        .map(|t| positions[t.as_str()].as_slice())
        .collect();
    let weights = distance_matrix(&lists, params.reducer)?;
    Ok(min_hamiltonian_cycle(&weights)?
        .into_iter()
        .map(|i| basis[i].clone())
        .collect())
}

impl CorpusModel {
    /// Runs the full pipeline: tagging, basis selection, cycle ordering,
    /// code assignment, projection and sentence extraction.
    pub fn build(raw: &str, mode: TaggerMode, params: PreprocessParams) -> Result<Self> {
        params.validate()?;
        let tokens = tokenize_and_tag(raw, mode)?;
        let (noun_width, verb_width) = params.widths();
        let mut warnings = Vec::new();

        let mut space = |class: Tag, n: usize, width: usize, cutoff: usize| -> Result<Space> {
            let sel = select_basis(&tokens, class, n);
            let name = if class == Tag::Verb { "verb" } else { "noun" };
            if sel.short {
                warnings.push(format!(
                    "only {} {name} tokens available, {n} requested",
                    sel.tokens.len()
                ));
            }
            if sel.tokens.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "corpus has no {name} tokens"
                )));
            }
            let order = cycle_order(&tokens, class, &sel.tokens, &params)?;
            let basis = assign_codes(&order, &generate_cyclic_code(width)?)?;
            let projection = project_tokens(&tokens, &basis, class, cutoff, params.reducer)?;
            Ok(Space { basis, projection })
        };
        let nouns = space(Tag::Noun, params.n_nouns, noun_width, params.w_nouns)?;
        let verbs = space(Tag::Verb, params.n_verbs, verb_width, params.w_verbs)?;

        let mut model = CorpusModel {
            format_version: FORMAT_VERSION,
            params,
            tokens,
            subject: nouns.clone(),
            verb: verbs,
            object: nouns,
            sentences: Vec::new(),
            patterns: Vec::new(),
            warnings,
        };
        model.finish();
        Ok(model)
    }

    /// Tags `raw` but takes bases and projections from `lexicon`.
    pub fn with_lexicon(
        raw: &str,
        mode: TaggerMode,
        lexicon: &Lexicon,
        params: PreprocessParams,
    ) -> Result<Self> {
        params.validate()?;
        let mut model = CorpusModel {
            format_version: FORMAT_VERSION,
            params,
            tokens: tokenize_and_tag(raw, mode)?,
            subject: Lexicon::space("subject", &lexicon.subject)?,
            verb: Lexicon::space("verb", &lexicon.verb)?,
            object: Lexicon::space("object", &lexicon.object)?,
            sentences: Vec::new(),
            patterns: Vec::new(),
            warnings: Vec::new(),
        };
        model.finish();
        Ok(model)
    }

    fn finish(&mut self) {
        self.sentences = form_sentences(self, &self.params);
        let codebook = self.codebook();
        let mut seen = HashSet::new();
        self.patterns = self
            .sentences
            .iter()
            .flat_map(|s| s.composed.iter().copied())
            .filter(|p| seen.insert(*p))
            .map(|pattern| PatternEntry {
                pattern,
                label: codebook.label(pattern),
            })
            .collect();
    }

    pub fn width(&self) -> usize {
        self.subject.basis.width + self.verb.basis.width + self.object.basis.width
    }

    pub fn codebook(&self) -> Codebook {
        let mut book = Codebook::default();
        for (slot, space) in [
            (Slot::Subject, &self.subject),
            (Slot::Verb, &self.verb),
            (Slot::Object, &self.object),
        ] {
            for (t, c) in space.basis.tokens.iter().zip(&space.basis.codes) {
                book.insert(slot, t, *c).expect("basis codes share a width");
            }
        }
        book
    }

    /// Errors with `EmptyInput` when no sentence was found.
    pub fn pattern_set(&self) -> Result<PatternSet> {
        PatternSet::new(self.patterns.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Version {
            format_version: u32,
        }
        let v: Version = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if v.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {}, expected {FORMAT_VERSION}",
                v.format_version
            )));
        }
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Finds noun-verb-noun triples: for each mapped verb, the nearest mapped
/// noun before it and after it, each within `w_vn`.
pub fn form_sentences(model: &CorpusModel, params: &PreprocessParams) -> Vec<SentencePattern> {
    let len = model
        .tokens
        .iter()
        .flat_map(|t| t.positions.iter())
        .max()
        .map_or(0, |p| p + 1);
    let mut stream: Vec<Option<&TokenOccurrence>> = vec![None; len];
    for t in &model.tokens {
        for &p in &t.positions {
            stream[p] = Some(t);
        }
    }
    let w = params.w_vn;
    fn nearest<'a>(
        stream: &[Option<&'a TokenOccurrence>],
        mut range: impl Iterator<Item = usize>,
        role: Tag,
        space: &Space,
    ) -> Option<(usize, &'a TokenOccurrence)> {
        range.find_map(|p| {
            let t = stream[p]?;
            let fits = t.tag == Tag::Noun || t.tag == role;
            (fits && space.projection.is_mapped(&t.text)).then_some((p, t))
        })
    }

    let mut out = Vec::new();
    for (pv, slot) in stream.iter().enumerate() {
        let Some(verb) = slot.filter(|t| t.tag == Tag::Verb) else {
            continue;
        };
        if !model.verb.projection.is_mapped(&verb.text) {
            continue;
        }
        let Some((ps, subj)) = nearest(
            &stream,
            (pv.saturating_sub(w)..pv).rev(),
            Tag::SubjectNoun,
            &model.subject,
        ) else {
            continue;
        };
        let Some((po, obj)) = nearest(
            &stream,
            pv + 1..(pv + w + 1).min(len),
            Tag::ObjectNoun,
            &model.object,
        ) else {
            continue;
        };
        if po - ps > 2 * w {
            continue;
        }
        let subject = model.subject.codes(&subj.text);
        let verb_codes = model.verb.codes(&verb.text);
        let object = model.object.codes(&obj.text);
        let mut composed = Vec::new();
        for &o in &object {
            for &v in &verb_codes {
                for &s in &subject {
                    let ov = BitPattern::concat(o, v).expect("widths fit");
                    composed.push(BitPattern::concat(ov, s).expect("widths fit"));
                }
            }
        }
        out.push(SentencePattern {
            subject_token: subj.text.clone(),
            verb_token: verb.text.clone(),
            object_token: obj.text.clone(),
            position: pv,
            subject,
            verb: verb_codes,
            object,
            composed,
        });
    }
    out
}
