//! Lexicon and suffix-rule tagger with a small lemmatizer.
//!
//! Unknown words default to nouns, which suits narrative text where most
//! open-class words that are not obviously verbs or modifiers are names or
//! things.

use super::Tag;

const STOPWORDS: &[&str] = &[
    "a",
    "about",
    "above",
    "after",
    "again",
    "against",
    "all",
    "am",
    "an",
    "and",
    "any",
    "are",
    "aren't",
    "as",
    "at",
    "be",
    "because",
    "been",
    "before",
    "being",
    "below",
    "between",
    "both",
    "but",
    "by",
    "can",
    "can't",
    "couldn't",
    "did",
    "didn't",
    "do",
    "does",
    "doesn't",
    "doing",
    "don't",
    "down",
    "during",
    "each",
    "few",
    "for",
    "from",
    "further",
    "had",
    "hadn't",
    "has",
    "hasn't",
    "have",
    "haven't",
    "having",
    "he",
    "he'd",
    "he'll",
    "he's",
    "her",
    "here",
    "here's",
    "hers",
    "herself",
    "him",
    "himself",
    "his",
    "how",
    "how's",
    "i",
    "i'd",
    "i'll",
    "i'm",
    "i've",
    "if",
    "in",
    "into",
    "is",
    "isn't",
    "it",
    "it's",
    "its",
    "itself",
    "let's",
    "me",
    "more",
    "most",
    "mustn't",
    "my",
    "myself",
    "no",
    "nor",
    "not",
    "of",
    "off",
    "on",
    "once",
    "only",
    "or",
    "other",
    "ought",
    "our",
    "ours",
    "ourselves",
    "out",
    "over",
    "own",
    "same",
    "shan't",
    "she",
    "she'd",
    "she'll",
    "she's",
    "should",
    "shouldn't",
    "so",
    "some",
    "such",
    "than",
    "that",
    "that's",
    "the",
    "their",
    "theirs",
    "them",
    "themselves",
    "then",
    "there",
    "there's",
    "these",
    "they",
    "they'd",
    "they'll",
    "they're",
    "they've",
    "this",
    "those",
    "through",
    "to",
    "too",
    "under",
    "until",
    "up",
    "very",
    "was",
    "wasn't",
    "we",
    "we'd",
    "we'll",
    "we're",
    "we've",
    "were",
    "weren't",
    "what",
    "what's",
    "when",
    "when's",
    "where",
    "where's",
    "which",
    "while",
    "who",
    "who's",
    "whom",
    "why",
    "why's",
    "will",
    "with",
    "won't",
    "wouldn't",
    "you",
    "you'd",
    "you'll",
    "you're",
    "you've",
    "your",
    "yours",
    "yourself",
    "yourselves",
    "just",
    "now",
    "s",
    "t",
    "ll",
    "d",
    "re",
    "ve",
    "m",
    "shall",
    "may",
    "might",
    "must",
    "could",
];

const VERBS: &[&str] = &[
    "ask", "be", "become", "begin", "believe", "bring", "call", "can", "come", "cry", "do", "eat",
    "fall", "feel", "find", "get", "give", "go", "grow", "have", "hear", "hold", "keep", "know",
    "laugh", "lay", "leave", "let", "lie", "like", "listen", "live", "look", "make", "mean",
    "move", "need", "open", "put", "read", "remember", "repeat", "reply", "rest", "run", "say",
    "see", "seem", "shout", "sing", "sit", "sleep", "speak", "stand", "stop", "suppose", "take",
    "talk", "tell", "think", "try", "turn", "walk", "want", "wish", "wonder", "would", "write",
];

const IRREGULAR: &[(&str, &str)] = &[
    ("am", "be"),
    ("are", "be"),
    ("is", "be"),
    ("was", "be"),
    ("were", "be"),
    ("been", "be"),
    ("began", "begin"),
    ("begun", "begin"),
    ("became", "become"),
    ("brought", "bring"),
    ("came", "come"),
    ("did", "do"),
    ("does", "do"),
    ("done", "do"),
    ("ate", "eat"),
    ("eaten", "eat"),
    ("fell", "fall"),
    ("fallen", "fall"),
    ("felt", "feel"),
    ("found", "find"),
    ("got", "get"),
    ("gotten", "get"),
    ("gave", "give"),
    ("given", "give"),
    ("went", "go"),
    ("gone", "go"),
    ("goes", "go"),
    ("grew", "grow"),
    ("grown", "grow"),
    ("had", "have"),
    ("has", "have"),
    ("heard", "hear"),
    ("held", "hold"),
    ("kept", "keep"),
    ("knew", "know"),
    ("known", "know"),
    ("laid", "lay"),
    ("left", "leave"),
    ("lay", "lie"),
    ("made", "make"),
    ("meant", "mean"),
    ("ran", "run"),
    ("said", "say"),
    ("says", "say"),
    ("saw", "see"),
    ("seen", "see"),
    ("sang", "sing"),
    ("sung", "sing"),
    ("sat", "sit"),
    ("slept", "sleep"),
    ("spoke", "speak"),
    ("spoken", "speak"),
    ("stood", "stand"),
    ("took", "take"),
    ("taken", "take"),
    ("told", "tell"),
    ("thought", "think"),
    ("wrote", "write"),
    ("written", "write"),
    ("could", "can"),
];

/// Words that look inflected or modifier-like but are nouns.
const NOUNS: &[&str] = &[
    "thing",
    "king",
    "nothing",
    "something",
    "anything",
    "everything",
    "morning",
    "evening",
    "ring",
    "string",
    "wing",
    "spring",
    "pudding",
    "ceiling",
    "darling",
    "stocking",
    "shilling",
    "duchess",
    "glass",
    "grass",
    "mouse",
    "goose",
    "business",
    "witness",
    "lesson",
    "bed",
    "head",
    "seed",
    "word",
    "bread",
    "thread",
    "hundred",
];

const OTHER: &[&str] = &[
    "little",
    "great",
    "good",
    "large",
    "small",
    "long",
    "old",
    "new",
    "much",
    "many",
    "well",
    "never",
    "even",
    "however",
    "quite",
    "rather",
    "still",
    "soon",
    "again",
    "away",
    "back",
    "last",
    "first",
    "one",
    "two",
    "three",
    "oh",
    "yes",
    "nor",
    "also",
    "like",
    "next",
    "ever",
    "yet",
    "perhaps",
    "anyone",
    "everybody",
    "somebody",
    "nobody",
    "herself",
    "himself",
];

fn contains(list: &[&str], word: &str) -> bool {
    list.contains(&word)
}

fn is_verb_lemma(word: &str) -> bool {
    contains(VERBS, word)
}

/// Candidate base forms for a regularly inflected verb.
fn verb_candidates(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut strip = |suffix: &str, add: &str| {
        if let Some(stem) = word.strip_suffix(suffix) {
            if !stem.is_empty() {
                out.push(format!("{stem}{add}"));
            }
        }
    };
    strip("ies", "y");
    strip("ied", "y");
    strip("es", "");
    strip("s", "");
    strip("ed", "");
    strip("ed", "e");
    strip("d", "");
    strip("ing", "");
    strip("ing", "e");
    // running -> run, stopped -> stop
    for suffix in ["ing", "ed"] {
        if let Some(stem) = word.strip_suffix(suffix) {
            let b = stem.as_bytes();
            if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
                out.push(stem[..stem.len() - 1].to_string());
            }
        }
    }
    out
}

fn singular(word: &str) -> String {
    if word.len() > 4 {
        if let Some(stem) = word.strip_suffix("ies") {
            return format!("{stem}y");
        }
    }
    for suffix in ["ches", "shes", "sses", "xes"] {
        if word.ends_with(suffix) {
            return word[..word.len() - 2].to_string();
        }
    }
    if word.len() > 3
        && word.ends_with('s')
        && !word.ends_with("ss")
        && !word.ends_with("us")
        && !word.ends_with("is")
    {
        return word[..word.len() - 1].to_string();
    }
    word.to_string()
}

/// Tags one lowercase word and returns its lemma.
pub fn tag_word(word: &str) -> (Tag, String) {
    if contains(STOPWORDS, word) {
        return (Tag::Stopword, word.to_string());
    }
    if word.chars().all(|c| c.is_ascii_digit()) {
        return (Tag::Other, word.to_string());
    }
    if contains(NOUNS, word) {
        return (Tag::Noun, word.to_string());
    }
    if let Some((_, lemma)) = IRREGULAR.iter().find(|(form, _)| *form == word) {
        return (Tag::Verb, lemma.to_string());
    }
    if is_verb_lemma(word) {
        return (Tag::Verb, word.to_string());
    }
    if contains(OTHER, word) {
        return (Tag::Other, word.to_string());
    }
    if let Some(lemma) = verb_candidates(word).into_iter().find(|c| is_verb_lemma(c)) {
        return (Tag::Verb, lemma);
    }
    for suffix in ["ly", "ous", "ful", "less", "ish", "est"] {
        if word.len() > suffix.len() + 2 && word.ends_with(suffix) {
            return (Tag::Other, word.to_string());
        }
    }
    if word.len() > 4 && word.ends_with("ing") {
        return (Tag::Verb, word[..word.len() - 3].to_string());
    }
    if word.len() > 4 && word.ends_with("ed") {
        return (Tag::Verb, word[..word.len() - 2].to_string());
    }
    (Tag::Noun, singular(word))
}
