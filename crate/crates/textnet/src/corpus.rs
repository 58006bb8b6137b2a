//! Document loading and token-stream production: boilerplate stripping,
//! preprocessing, and the on-disk token cache.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use textnet_core::preprocess::{self, LemmaMap, Stoplist};
use textnet_core::sampling::{split_subtexts, Subtext, WindowSpec};

use crate::manifest::ManifestEntry;
use crate::{PipelineError, Result};

/// Parsed stoplist and lemma dictionary plus the raw bytes they came from
/// (the raw text participates in cache keys).
#[derive(Debug, Clone)]
pub struct PipelineInputs {
    pub stoplist: Stoplist,
    pub lemmas: LemmaMap,
    stoplist_text: String,
    lemma_text: String,
    /// When set, windows count raw alphabetic tokens and each window is
    /// stopword-filtered and lemmatized afterwards.
    pub count_raw_tokens: bool,
}

impl PipelineInputs {
    pub fn load(
        stoplist_path: &Path,
        lemma_path: Option<&Path>,
        count_raw_tokens: bool,
    ) -> Result<Self> {
        let stoplist_text = fs::read_to_string(stoplist_path)
            .map_err(|e| PipelineError::io(stoplist_path, e))?;
        let lemma_text = match lemma_path {
            Some(p) => fs::read_to_string(p).map_err(|e| PipelineError::io(p, e))?,
            None => String::new(),
        };
        Ok(Self {
            stoplist: Stoplist::parse(&stoplist_text),
            lemmas: LemmaMap::parse(&lemma_text)?,
            stoplist_text,
            lemma_text,
            count_raw_tokens,
        })
    }

    /// For tests and embedded defaults.
    pub fn from_texts(stoplist_text: &str, lemma_text: &str, count_raw_tokens: bool) -> Result<Self> {
        Ok(Self {
            stoplist: Stoplist::parse(stoplist_text),
            lemmas: LemmaMap::parse(lemma_text)?,
            stoplist_text: stoplist_text.to_string(),
            lemma_text: lemma_text.to_string(),
            count_raw_tokens,
        })
    }
}

/// A book reduced to its token stream: pre-processed tokens by default, raw
/// alphabetic tokens under the raw-window convention.
#[derive(Debug, Clone)]
pub struct TokenStream {
    pub entry: ManifestEntry,
    pub tokens: Vec<String>,
}

/// Reads, strips, and tokenizes one book according to the inputs.
pub fn build_stream(entry: &ManifestEntry, inputs: &PipelineInputs) -> Result<TokenStream> {
    let text = fs::read_to_string(&entry.path).map_err(|e| PipelineError::io(&entry.path, e))?;
    let stripped = preprocess::strip_boilerplate(&text)?;
    let tokens = if inputs.count_raw_tokens {
        preprocess::tokenize(&stripped.text)
    } else {
        preprocess::preprocess(&stripped.text, &inputs.stoplist, &inputs.lemmas)
    };
    Ok(TokenStream { entry: entry.clone(), tokens })
}

/// Cache file name: hex digest over the source bytes and everything that
/// shapes the cached tokens.
pub fn cache_file_name(entry: &ManifestEntry, inputs: &PipelineInputs) -> Result<String> {
    let source = fs::read(&entry.path).map_err(|e| PipelineError::io(&entry.path, e))?;
    let mut hasher = Sha256::new();
    hasher.update(&source);
    hasher.update([0]);
    hasher.update(inputs.stoplist_text.as_bytes());
    hasher.update([0]);
    hasher.update(inputs.lemma_text.as_bytes());
    hasher.update([0]);
    hasher.update(if inputs.count_raw_tokens { b"raw" } else { b"pre" } as &[u8]);
    let digest = hasher.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(format!("{hex}.tokens"))
}

pub fn write_cache(dir: &Path, name: &str, stream: &TokenStream) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
    let path = dir.join(name);
    let mut body = String::with_capacity(stream.tokens.len() * 8);
    for token in &stream.tokens {
        body.push_str(token);
        body.push('\n');
    }
    fs::write(&path, body).map_err(|e| PipelineError::io(&path, e))?;
    Ok(path)
}

fn read_cache(path: &Path, entry: &ManifestEntry) -> Result<TokenStream> {
    let body = fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
    Ok(TokenStream {
        entry: entry.clone(),
        tokens: body.lines().map(String::from).collect(),
    })
}

/// Token stream for one book: cache hit when present, recomputed otherwise
/// (without writing; only `ingest` mutates the cache).
pub fn stream_for(
    entry: &ManifestEntry,
    inputs: &PipelineInputs,
    cache_dir: &Path,
) -> Result<TokenStream> {
    let name = cache_file_name(entry, inputs)?;
    let path = cache_dir.join(&name);
    if path.is_file() {
        read_cache(&path, entry)
    } else {
        build_stream(entry, inputs)
    }
}

/// Cuts one book's stream into subtexts for a window spec. Under the
/// raw-token convention each window is preprocessed after cutting, so the
/// kept token count may fall below the nominal W.
pub fn cut_subtexts(
    stream: &TokenStream,
    spec: WindowSpec,
    inputs: &PipelineInputs,
) -> Result<Vec<Subtext>> {
    let window = spec.resolve(stream.tokens.len());
    if window == 0 {
        log::warn!(
            "{}: window {spec} resolves to 0 tokens; skipping",
            stream.entry.book_id
        );
        return Ok(Vec::new());
    }
    let mut subtexts = split_subtexts(&stream.tokens, window)?;
    if inputs.count_raw_tokens {
        for sub in &mut subtexts {
            let filtered = preprocess::remove_stopwords(
                std::mem::take(&mut sub.tokens),
                &inputs.stoplist,
            );
            sub.tokens = preprocess::lemmatize(filtered, &inputs.lemmas);
        }
        subtexts.retain(|s| {
            if s.tokens.len() < 2 {
                log::warn!(
                    "{}: raw window {} left fewer than 2 tokens; dropped",
                    stream.entry.book_id,
                    s.index
                );
                false
            } else {
                true
            }
        });
    }
    Ok(subtexts)
}
