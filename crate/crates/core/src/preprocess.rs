//! Raw text to canonical token stream: boilerplate stripping, tokenization,
//! stopword removal, and lemmatization.
//!
//! Tokens are maximal alphabetic runs, lowercased; hyphens, apostrophes, and
//! digits split words. Lemmatization looks the surface form up in a
//! user-supplied dictionary and falls back to a small deterministic
//! suffix-stripping stemmer, so distinct inflections of a word map to the
//! same network node without a tagger in the loop. Proper nouns are kept
//! (case-folded like everything else).

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreprocessError {
    /// An end marker appears before any start marker.
    MalformedBoilerplate,
    /// Nothing left between the boilerplate markers.
    EmptyAfterStrip,
    /// Lemma dictionary line without a `surface<TAB>lemma` shape.
    MalformedLemmaLine { line: usize },
}

impl fmt::Display for PreprocessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MalformedBoilerplate => {
                write!(f, "malformed boilerplate: end marker precedes start marker")
            }
            Self::EmptyAfterStrip => write!(f, "document is empty after boilerplate stripping"),
            Self::MalformedLemmaLine { line } => {
                write!(f, "lemma dictionary line {line}: expected `surface<TAB>lemma`")
            }
        }
    }
}

impl core::error::Error for PreprocessError {}

/// Result of boilerplate stripping; `markers_found` distinguishes a real
/// strip from the identity fallback.
#[derive(Debug, Clone)]
pub struct StrippedText {
    pub text: String,
    pub markers_found: bool,
}

fn is_start_marker(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with("*** START OF") || t.starts_with("***START OF")
}

fn is_end_marker(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with("*** END OF") || t.starts_with("***END OF")
}

/// Cuts the header/footer blocks delimited by `*** START OF ...` and
/// `*** END OF ...` marker lines (the convention of public-domain e-texts).
///
/// Keeps the interior only. Idempotent: the interior contains no marker
/// lines, so a second pass is the identity. A text without markers is
/// returned unchanged with a warning.
pub fn strip_boilerplate(text: &str) -> Result<StrippedText, PreprocessError> {
    let lines: Vec<&str> = text.lines().collect();
    let start = lines.iter().position(|l| is_start_marker(l));
    let end = lines.iter().position(|l| is_end_marker(l));

    let (body, markers_found) = match (start, end) {
        (None, None) => {
            log::warn!("no boilerplate markers found; keeping text unchanged");
            (text.to_owned(), false)
        }
        (Some(s), Some(e)) => {
            if e <= s {
                return Err(PreprocessError::MalformedBoilerplate);
            }
            (lines[s + 1..e].join("\n"), true)
        }
        (Some(s), None) => {
            log::warn!("start marker without end marker; keeping everything after it");
            (lines[s + 1..].join("\n"), true)
        }
        (None, Some(e)) => {
            log::warn!("end marker without start marker; keeping everything before it");
            (lines[..e].join("\n"), true)
        }
    };

    if body.trim().is_empty() {
        return Err(PreprocessError::EmptyAfterStrip);
    }
    Ok(StrippedText { text: body, markers_found })
}

/// Splits on non-alphabetic characters and lowercases. Punctuation and
/// digits are discarded; source order is preserved.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphabetic() {
            for lower in ch.to_lowercase() {
                current.push(lower);
            }
        } else if !current.is_empty() {
            tokens.push(core::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// Stopword list. One lowercase word per line in the file form; `#` starts
/// a comment.
#[derive(Debug, Clone, Default)]
pub struct Stoplist {
    words: BTreeSet<String>,
}

impl Stoplist {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn parse(text: &str) -> Self {
        Self::from_words(
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty()),
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Drops every token found in the stoplist; relative order is preserved.
pub fn remove_stopwords(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<String> {
    tokens.into_iter().filter(|t| !stoplist.contains(t)).collect()
}

/// Surface-form to lemma dictionary (`surface<TAB>lemma` lines).
#[derive(Debug, Clone, Default)]
pub struct LemmaMap {
    entries: BTreeMap<String, String>,
}

impl LemmaMap {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, PreprocessError> {
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(2, '\t');
            let surface = parts.next().unwrap_or("").trim();
            let lemma = parts.next().unwrap_or("").trim();
            if surface.is_empty() || lemma.is_empty() {
                return Err(PreprocessError::MalformedLemmaLine { line: idx + 1 });
            }
            entries.insert(surface.to_lowercase(), lemma.to_lowercase());
        }
        Ok(Self { entries })
    }

    pub fn insert(&mut self, surface: &str, lemma: &str) {
        self.entries.insert(surface.to_lowercase(), lemma.to_lowercase());
    }

    pub fn get(&self, surface: &str) -> Option<&str> {
        self.entries.get(surface).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Deterministic suffix-stripping stem, used when the lemma dictionary has
/// no entry for a surface form. Handles plural and third-person `-s`
/// inflection only; irregular forms belong in the dictionary.
///
/// Rules, first match wins:
/// 1. `-ies` with at least 2 chars before it -> `-y`   (properties -> property)
/// 2. `-sses` -> `-ss`                                 (classes -> class*, see 3)
/// 3. words ending `-ss`, `-us`, `-is` are unchanged   (glass, focus, basis)
/// 4. `-s` on words of length >= 4 is dropped          (networks -> network)
pub fn stem(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    if word.ends_with("ies") && n >= 5 {
        let mut out: String = chars[..n - 3].iter().collect();
        out.push('y');
        return out;
    }
    if word.ends_with("sses") {
        return chars[..n - 2].iter().collect();
    }
    if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
        return word.to_owned();
    }
    if word.ends_with('s') && n >= 4 {
        return chars[..n - 1].iter().collect();
    }
    word.to_owned()
}

/// Maps each token to its canonical form: dictionary lookup when present,
/// stemmer fallback otherwise. Length-preserving.
pub fn lemmatize(tokens: Vec<String>, lemmas: &LemmaMap) -> Vec<String> {
    tokens
        .into_iter()
        .map(|t| match lemmas.get(&t) {
            Some(lemma) => lemma.to_owned(),
            None => stem(&t),
        })
        .collect()
}

/// The full pipeline: tokenize, remove stopwords, lemmatize. Deterministic:
/// identical input bytes yield identical streams.
pub fn preprocess(text: &str, stoplist: &Stoplist, lemmas: &LemmaMap) -> Vec<String> {
    lemmatize(remove_stopwords(tokenize(text), stoplist), lemmas)
}
